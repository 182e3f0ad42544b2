"""Brute-force ground truth for the functor tables.

Finitely presented modules are handled with honest integer matrix algebra:
a presentation is reduced to a length-1 free resolution via Smith normal
form, and Hom / Ext1 / tensor / Tor1 are computed as kernels and cokernels
of the induced maps between presented modules.  Nothing here consults the
engine's block tables, which is the point: agreement between the two is a
genuine cross-check.

Pruefer first arguments are handled by stabilizing colimit/limit towers of
finite stages, each stage computed by the same matrix machinery, with an
explicit two-stage equality certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import StabilizationFailed
from .intmath import (
    IntMatrix,
    column_hnf,
    factorize,
    hcat,
    kernel_basis,
    kron,
    smith_normal_form_full,
    snf_diagonal,
    solve,
)
from .modules import (
    Block,
    C,
    CanonicalModule,
    Pr,
    ZERO,
    Zp,
    check_prime,
    normalize,
)


@dataclass(frozen=True)
class Presentation:
    """A finitely generated abelian group as coker of an integer matrix."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")


def presentation_of_diag(diag: list[int]) -> Presentation:
    n = len(diag)
    return Presentation(
        n, IntMatrix.from_rows([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        if n
        else IntMatrix(0, 0, ()),
    )


def canonical_presentation(m: CanonicalModule) -> Presentation:
    """Diagonal presentation of a finitely generated module (free + finite)."""
    if m.has_divisible() or m.has_adic():
        raise ValueError("only finitely generated modules have presentations")
    diag = []
    for p, part in m.locals:
        diag.extend(p**e for e in part.finite)
    diag.extend([0] * m.free)
    n = len(diag)
    rows = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
    rels = IntMatrix.from_rows(rows) if n else IntMatrix(0, 0, ())
    # zero columns present nothing; drop them for a tidier matrix
    keep = [j for j in range(n) if diag[j] != 0]
    rels = IntMatrix.from_rows([[rows[i][j] for j in keep] for i in range(n)]) if n else rels
    return Presentation(n, rels)


def fp_structure(pres: Presentation) -> CanonicalModule:
    """Invariant-factor decomposition of coker(relations) via SNF.

    A Hermite pass comes first: it finds the image lattice with small
    entries, which keeps the Smith reduction from blowing up.
    """
    n = pres.generators
    reduced = column_hnf(pres.relations)
    diag = snf_diagonal(reduced)
    rank = reduced.cols  # Hermite columns are independent
    free = n - rank
    blocks: list[Block] = []
    for x in diag[:rank]:
        if x > 1:
            blocks.extend(C(pp.p, pp.e) for pp in factorize(x))
    from .modules import Z as ZBlock

    blocks.extend(ZBlock() for _ in range(free))
    return normalize(blocks)


def _reduced_relations(pres: Presentation) -> IntMatrix:
    """An injective relation matrix with the same image (minimal resolution)."""
    return column_hnf(pres.relations)


def _neg(m: IntMatrix) -> IntMatrix:
    return IntMatrix(m.rows, m.cols, tuple(-x for x in m.entries))


def _kernel_of_induced(
    x_lift: IntMatrix,
    src_rel: IntMatrix,
    tgt_rel: IntMatrix,
) -> CanonicalModule:
    """Structure of ker(phi) for phi: coker(src_rel) -> coker(tgt_rel) lifted
    by x_lift, assuming tgt_rel has independent columns."""
    src_gens = src_rel.rows
    combined = hcat(x_lift, _neg(tgt_rel))
    basis = kernel_basis(combined)
    # project kernel pairs (v, w) to v; injective because tgt_rel is injective
    g = IntMatrix(
        src_gens, basis.cols, basis.entries[: src_gens * basis.cols]
    )
    # the raw SNF transform entries can be astronomically large; re-basing the
    # lattice through a Hermite form keeps the follow-up solves tractable
    g = column_hnf(g)
    y = solve(g, src_rel)
    if y is None:
        raise AssertionError("source relations must land in the solution module")
    return fp_structure(Presentation(g.cols, y))


def hom_reduced(ra: IntMatrix, sb: IntMatrix) -> CanonicalModule:
    """Hom(A, B) as the solution module of X * R_A = 0 in B-coordinates."""
    a, m = ra.rows, ra.cols
    b = sb.rows
    x = kron(ra.transpose(), IntMatrix.identity(b))  # B^a -> B^m
    src_rel = kron(IntMatrix.identity(a), sb)
    tgt_rel = kron(IntMatrix.identity(m), sb)
    return _kernel_of_induced(x, src_rel, tgt_rel)


def ext1_reduced(ra: IntMatrix, sb: IntMatrix) -> CanonicalModule:
    """Ext1(A, B) as the cokernel of the induced map B^a -> B^m."""
    b = sb.rows
    m = ra.cols
    x = kron(ra.transpose(), IntMatrix.identity(b))
    rels = hcat(x, kron(IntMatrix.identity(m), sb))
    return fp_structure(Presentation(m * b, rels))


def tensor_reduced(ra: IntMatrix, sb: IntMatrix) -> CanonicalModule:
    """A (x) B presented on generator pairs with both relation sets."""
    a, b = ra.rows, sb.rows
    rels = hcat(kron(ra, IntMatrix.identity(b)), kron(IntMatrix.identity(a), sb))
    return fp_structure(Presentation(a * b, rels))


def tor1_reduced(ra: IntMatrix, sb: IntMatrix) -> CanonicalModule:
    """Tor1(A, B) as the kernel of the tensored relation map B^m -> B^a."""
    a, m = ra.rows, ra.cols
    b = sb.rows
    x = kron(ra, IntMatrix.identity(b))  # B^m -> B^a
    src_rel = kron(IntMatrix.identity(m), sb)
    tgt_rel = kron(IntMatrix.identity(a), sb)
    return _kernel_of_induced(x, src_rel, tgt_rel)


def fp_hom(pa: Presentation, pb: Presentation) -> CanonicalModule:
    return hom_reduced(_reduced_relations(pa), _reduced_relations(pb))


def fp_ext1(pa: Presentation, pb: Presentation) -> CanonicalModule:
    return ext1_reduced(_reduced_relations(pa), _reduced_relations(pb))


def fp_tensor(pa: Presentation, pb: Presentation) -> CanonicalModule:
    return tensor_reduced(_reduced_relations(pa), _reduced_relations(pb))


def fp_tor1(pa: Presentation, pb: Presentation) -> CanonicalModule:
    return tor1_reduced(_reduced_relations(pa), _reduced_relations(pb))


# --- Pruefer towers ------------------------------------------------------------


def _max_p_exponent(p: int, pres: Presentation) -> int:
    m = fp_structure(pres)
    part = m.local(p)
    return max(part.finite) if part.finite else 0


def pruefer_colimit(functor: str, p: int, pb: Presentation) -> CanonicalModule:
    """F(Pruefer(p), B) for F in {tensor, tor1} via a stabilized colimit.

    Two consecutive stages past the p-exponent of B must agree; tor1's
    transition maps are the stage inclusions, so the stable stage is the
    value, while tensor's transitions are multiplication by p and
    eventually annihilate every element of the bounded stages.
    """
    check_prime(p)
    if functor not in ("tensor", "tor1"):
        raise ValueError(f"unsupported colimit functor {functor!r}")
    b_struct = fp_structure(pb)
    if functor == "tensor" and not b_struct.is_torsion():
        from .errors import NotTorsion

        raise NotTorsion("tensor colimit oracle needs a torsion partner")
    e = _max_p_exponent(p, pb)
    stage_fn = fp_tensor if functor == "tensor" else fp_tor1
    s1 = stage_fn(presentation_of_diag([p ** (e + 1)]), pb)
    s2 = stage_fn(presentation_of_diag([p ** (e + 2)]), pb)
    if s1 != s2:
        raise StabilizationFailed(
            f"{functor} stages at k={e + 1},{e + 2} differ: {s1} vs {s2}"
        )
    if functor == "tensor":
        # transition maps are multiplication by p on a module of bounded
        # p-exponent, so every element dies in the colimit
        return ZERO
    return s1


def pruefer_limit_ext(p: int, pb: Presentation) -> CanonicalModule:
    """Ext1(Pruefer(p), B) via the inverse-limit tower of finite stages.

    Stages whose exponents stay fixed between two consecutive levels form
    the stable (finite) part; exponents that track the level itself come
    from surjective non-stabilizing towers and contribute one p-adic block
    each.
    """
    check_prime(p)
    e = _max_p_exponent(p, pb)
    k1, k2 = e + 1, e + 2
    s1 = fp_ext1(presentation_of_diag([p**k1]), pb)
    s2 = fp_ext1(presentation_of_diag([p**k2]), pb)
    exps1 = list(s1.local(p).finite)
    exps2 = list(s2.local(p).finite)
    stable1 = [x for x in exps1 if x != k1]
    growing1 = len(exps1) - len(stable1)
    stable2 = [x for x in exps2 if x != k2]
    growing2 = len(exps2) - len(stable2)
    if stable1 != stable2 or growing1 != growing2:
        raise StabilizationFailed(
            f"Ext tower at k={k1},{k2} has no recognizable shape: {s1} vs {s2}"
        )
    blocks: list[Block] = [C(p, x) for x in stable1]
    blocks.extend(Zp(p) for _ in range(growing1))
    return normalize(blocks)


# --- seeded instance generation -------------------------------------------------


@dataclass(frozen=True)
class InstanceConfig:
    max_prime: int = 7
    max_exp: int = 4
    max_blocks: int = 3
    allow_kinds: frozenset = frozenset({"C"})

    def primes(self) -> list[int]:
        from .intmath import is_prime

        return [p for p in range(2, self.max_prime + 1) if is_prime(p)]


@dataclass(frozen=True)
class RandomInstance:
    module: CanonicalModule
    presentation: Presentation | None  # scrambled; only for finite modules


def _unimodular_scramble(rng: random.Random, m: IntMatrix, ops: int) -> IntMatrix:
    rows = m.to_rows()
    r, c = m.rows, m.cols
    for _ in range(ops):
        kind = rng.randrange(4)
        if kind == 0 and r >= 2:
            i, j = rng.sample(range(r), 2)
            q = rng.randint(-2, 2)
            for k in range(c):
                rows[i][k] += q * rows[j][k]
        elif kind == 1 and c >= 2:
            i, j = rng.sample(range(c), 2)
            q = rng.randint(-2, 2)
            for k in range(r):
                rows[k][i] += q * rows[k][j]
        elif kind == 2 and r >= 2:
            i, j = rng.sample(range(r), 2)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 3 and r >= 1:
            i = rng.randrange(r)
            rows[i] = [-x for x in rows[i]]
    return IntMatrix.from_rows(rows) if r else m


def random_module(rng: random.Random, config: InstanceConfig) -> CanonicalModule:
    primes = config.primes()
    blocks: list[Block] = []
    kinds = sorted(config.allow_kinds)
    for _ in range(rng.randint(0, config.max_blocks)):
        kind = rng.choice(kinds)
        if kind == "Z":
            blocks.append(Block("Z"))
        elif kind == "C":
            blocks.append(C(rng.choice(primes), rng.randint(1, config.max_exp)))
        elif kind == "Pr":
            blocks.append(Pr(rng.choice(primes)))
        else:
            blocks.append(Zp(rng.choice(primes)))
    return normalize(blocks)


def random_instance(seed: int, config: InstanceConfig = InstanceConfig()) -> RandomInstance:
    """Deterministic random module; finite ones also carry a presentation
    scrambled by unimodular row/column operations."""
    rng = random.Random(seed)
    module = random_module(rng, config)
    pres = None
    if not module.has_divisible() and not module.has_adic():
        base = canonical_presentation(module)
        scrambled = _unimodular_scramble(rng, base.relations, 3 * (base.generators + 1))
        pres = Presentation(base.generators, scrambled)
    return RandomInstance(module, pres)
