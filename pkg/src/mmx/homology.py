"""Hom, tensor, Ext and Tor on canonical modules.

The four functors are bilinear, so everything reduces to a normative table
on ordered pairs of block kinds.  Same-prime entries are listed in the
table functions below; cross-prime entries vanish except for the handful
of adic-source combinations whose value leaves the block class, which
raise NotRepresentable instead of returning a wrong small answer.

The base rings (Z and p-adic rings) are hereditary, so Ext^i and Tor_i
vanish for i >= 2; those indices return 0 with a note rather than erroring.

Alongside the direct tables, this module implements the alternative
computation paths (truncated Hom, completion decomposition, dual swap,
general-dual), Bass/Betti numbers, and the length/vanishing certificates.
All paths must agree up to isomorphism of canonical forms; the property
suites enforce that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .duality import dual_module
from .errors import (
    InvalidIndex,
    NotArtinian,
    NotNoetherian,
    NotRepresentable,
    NotTorsion,
)
from .modules import (
    Block,
    C,
    CanonicalModule,
    Pr,
    RingContext,
    RingMarker,
    ZERO,
    Z_RING,
    Zp,
    direct_sum,
    is_isomorphic,
    normalize,
    padic,
    require_admitted,
    result_marker,
)
from .structure import (
    ExtNat,
    SupportSet,
    ass,
    att,
    complete,
    gamma,
    length,
    mod_prime_power,
    socle_colon,
    support,
    support_set,
    truncation_exponent,
)


@dataclass(frozen=True)
class HomologyResult:
    module: CanonicalModule
    ring: RingMarker
    path: str
    note: str | None = None

    def to_json(self) -> dict:
        out = {
            "module": self.module.to_json(),
            "ring": self.ring.to_json(),
            "path": self.path,
        }
        if self.note:
            out["note"] = self.note
        return out


# --- block tables -----------------------------------------------------------


def _hom_pair(ctx: RingContext, x: Block, y: Block) -> tuple[Block, ...]:
    if x.kind == "Z":
        return (y,)
    if x.kind == "C":
        if y.prime == x.prime:
            if y.kind == "C":
                return (C(x.prime, min(x.exponent, y.exponent)),)
            if y.kind == "Pr":
                return (C(x.prime, x.exponent),)
        return ()  # (C,Z), (C,Zp) and all cross-prime targets
    if x.kind == "Pr":
        if y.kind == "Pr" and y.prime == x.prime:
            return (Zp(x.prime),)
        return ()
    # adic source Zp(p): p-adic-linear semantics
    p = x.prime
    if ctx.kind == "padic":
        return (y,)  # rank-one free over the ring
    if y.kind == "Z":
        return ()  # image would be q-divisible in Z for q != p
    if y.kind == "C":
        return (y,) if y.prime == p else ()
    if y.kind == "Zp" and y.prime == p:
        return (Zp(p),)
    raise NotRepresentable(f"Hom({x}, {y}) over Z leaves the block class")


def _tensor_pair(ctx: RingContext, x: Block, y: Block) -> tuple[Block, ...]:
    if x.kind == "Z":
        return (y,)
    if y.kind == "Z":
        return (x,)
    if x.kind == "Zp" or y.kind == "Zp":
        if x.kind != "Zp":
            x, y = y, x
        p = x.prime
        if y.kind == "Zp":
            if y.prime != p:
                raise NotRepresentable(f"{x} (x) {y} leaves the block class")
            if ctx.kind == "padic":
                return (Zp(p),)
            raise NotRepresentable(f"{x} (x) {y} over Z leaves the block class")
        return (y,) if y.prime == p else ()
    if x.prime != y.prime:
        return ()
    if x.kind == "C" and y.kind == "C":
        return (C(x.prime, min(x.exponent, y.exponent)),)
    return ()  # (C,Pr), (Pr,Pr): one side is p-divisible


def _ext1_pair(ctx: RingContext, x: Block, y: Block) -> tuple[Block, ...]:
    if x.kind == "Z":
        return ()  # projective source
    if y.kind == "Pr":
        if x.kind == "Zp" and ctx.kind == "Z" and y.prime != x.prime:
            raise NotRepresentable(f"Ext1({x}, {y}) over Z leaves the block class")
        if x.kind == "Zp":
            return ()
        return ()  # divisible target is injective
    if x.kind == "C":
        p, e = x.prime, x.exponent
        if y.kind == "Z":
            return (C(p, e),)
        if y.prime != p:
            return ()
        if y.kind == "C":
            return (C(p, min(e, y.exponent)),)
        return (C(p, e),)  # cokernel of p^e on the p-adic ring
    if x.kind == "Pr":
        p = x.prime
        if y.kind == "Z":
            return (Zp(p),)
        if y.prime != p:
            return ()
        if y.kind == "C":
            return (C(p, y.exponent),)
        return (Zp(p),)  # long exact sequence of 0 -> Z_p -> Q_p -> Pr(p) -> 0
    # adic source: free over its own ring
    p = x.prime
    if ctx.kind == "padic":
        return ()
    if y.prime == p and y.kind in ("C", "Zp"):
        return ()
    raise NotRepresentable(f"Ext1({x}, {y}) over Z leaves the block class")


def _tor1_pair(ctx: RingContext, x: Block, y: Block) -> tuple[Block, ...]:
    if x.kind in ("Z", "Zp") or y.kind in ("Z", "Zp"):
        return ()  # torsion-free blocks are flat
    if x.prime != y.prime:
        return ()
    p = x.prime
    if x.kind == "C" and y.kind == "C":
        return (C(p, min(x.exponent, y.exponent)),)
    if x.kind == "C":
        return (C(p, x.exponent),)
    if y.kind == "C":
        return (C(p, y.exponent),)
    return (Pr(p),)  # Tor with a Pruefer block is the p-torsion functor


_TABLES = {
    "hom": _hom_pair,
    "tensor": _tensor_pair,
    "ext1": _ext1_pair,
    "tor1": _tor1_pair,
}


def _disjoint_torsion(m: CanonicalModule, n: CanonicalModule) -> bool:
    return (
        m.is_torsion()
        and n.is_torsion()
        and not (set(m.primes) & set(n.primes))
    )


def _bilinear(table: str, ctx: RingContext, m: CanonicalModule, n: CanonicalModule):
    require_admitted(ctx, m)
    require_admitted(ctx, n)
    if _disjoint_torsion(m, n):
        return ZERO
    pair = _TABLES[table]
    blocks: list[Block] = []
    for x in m.blocks():
        for y in n.blocks():
            blocks.extend(pair(ctx, x, y))
    return normalize(blocks)


def _result(ctx: RingContext, module: CanonicalModule, path: str, note=None):
    return HomologyResult(module, result_marker(ctx, module), path, note)


def hom(ctx: RingContext, m: CanonicalModule, n: CanonicalModule) -> HomologyResult:
    return _result(ctx, _bilinear("hom", ctx, m, n), "direct")


def tensor(ctx: RingContext, m: CanonicalModule, n: CanonicalModule) -> HomologyResult:
    return _result(ctx, _bilinear("tensor", ctx, m, n), "direct")


def ext(i: int, ctx: RingContext, m: CanonicalModule, n: CanonicalModule) -> HomologyResult:
    if i < 0:
        raise InvalidIndex(f"negative homological degree {i}")
    if i == 0:
        return hom(ctx, m, n)
    if i >= 2:
        require_admitted(ctx, m)
        require_admitted(ctx, n)
        return _result(ctx, ZERO, "direct", note="hereditary base: Ext^i = 0 for i >= 2")
    return _result(ctx, _bilinear("ext1", ctx, m, n), "direct")


def tor(i: int, ctx: RingContext, m: CanonicalModule, n: CanonicalModule) -> HomologyResult:
    if i < 0:
        raise InvalidIndex(f"negative homological degree {i}")
    if i == 0:
        return tensor(ctx, m, n)
    if i >= 2:
        require_admitted(ctx, m)
        require_admitted(ctx, n)
        return _result(ctx, ZERO, "direct", note="hereditary base: Tor_i = 0 for i >= 2")
    return _result(ctx, _bilinear("tor1", ctx, m, n), "direct")


# --- alternative computation paths ------------------------------------------


def _require_artinian(a: CanonicalModule) -> None:
    if a.free or a.has_adic():
        raise NotArtinian(f"{a} is not artinian")


def _require_noetherian(n: CanonicalModule) -> None:
    if n.has_divisible() or n.has_adic():
        raise NotNoetherian(f"{n} is not noetherian")


def _require_torsion(t: CanonicalModule) -> None:
    if not t.is_torsion():
        raise NotTorsion(f"{t} is not torsion")


def hom_theoremC(a: CanonicalModule, n: CanonicalModule) -> HomologyResult:
    """Hom(artinian, noetherian) through truncations only.

    Assembles the coproduct over the shared primes of Hom of two finite
    modules: the source truncated at its stabilization exponent, the target
    cut down to the corresponding torsion subgroup.  The value is finite
    length and annihilated by the product of the truncation prime powers.
    """
    _require_artinian(a)
    _require_noetherian(n)
    shared = sorted(
        set(support(Z_RING, a).maximals) & set(ass(Z_RING, n).maximals)
    )
    pieces = []
    for p in shared:
        alpha = truncation_exponent(p, a)
        if alpha == 0:
            continue  # purely divisible at p: truncation is the zero module
        a_trunc = mod_prime_power(a, p, alpha)
        n_soc = socle_colon(n, p, alpha)
        pieces.append(_bilinear("hom", Z_RING, a_trunc, n_soc))
    module = direct_sum(*pieces) if pieces else ZERO
    return _result(Z_RING, module, "theoremC")


def theoremC_annihilator_bound(a: CanonicalModule, n: CanonicalModule) -> int:
    """The product of p^alpha_p over the shared primes of hom_theoremC."""
    _require_artinian(a)
    _require_noetherian(n)
    shared = set(support(Z_RING, a).maximals) & set(ass(Z_RING, n).maximals)
    bound = 1
    for p in sorted(shared):
        bound *= p ** truncation_exponent(p, a)
    return bound


def tensor_truncated(t: CanonicalModule, t2: CanonicalModule) -> HomologyResult:
    """Tensor of torsion modules via truncation at a stabilization exponent."""
    _require_torsion(t)
    _require_torsion(t2)
    shared = sorted(set(t.primes) & set(t2.primes))
    exp = max((truncation_exponent(p, t) for p in shared), default=0)
    tq = direct_sum(*(mod_prime_power(t, p, exp) for p in shared)) if shared else ZERO
    tq2 = direct_sum(*(mod_prime_power(t2, p, exp) for p in shared)) if shared else ZERO
    return _result(Z_RING, _bilinear("tensor", Z_RING, tq, tq2), "truncated")


def ext_via_completion(i: int, t: CanonicalModule, l: CanonicalModule) -> HomologyResult:
    """Ext(torsion, -) as a coproduct of p-adic Ext after completion."""
    _require_torsion(t)
    if l.has_adic():
        raise NotRepresentable("completion path needs a partner without adic blocks")
    supp_l = support(Z_RING, l)
    shared = [
        p
        for p in t.primes
        if supp_l.full or p in supp_l.maximals
    ]
    pieces = []
    for p in shared:
        tp = gamma(Z_RING, [p], t)
        lp = complete([p], l)
        pieces.append(ext(i, padic(p), tp, lp).module)
    module = direct_sum(*pieces) if pieces else ZERO
    return _result(Z_RING, module, "completion")


def ext_dual_swap(i: int, t: CanonicalModule, a: CanonicalModule) -> HomologyResult:
    """Ext(torsion, artinian) as p-adic Ext between the Matlis duals, with
    the argument order swapped."""
    _require_torsion(t)
    _require_artinian(a)
    shared = sorted(set(t.primes) & set(a.primes))
    pieces = []
    for p in shared:
        a_dual = dual_module(gamma(Z_RING, [p], a))
        t_dual = dual_module(gamma(Z_RING, [p], t))
        pieces.append(ext(i, padic(p), a_dual, t_dual).module)
    module = direct_sum(*pieces) if pieces else ZERO
    return _result(Z_RING, module, "dual_swap")


def ext_via_general_dual(i: int, t: CanonicalModule, m: CanonicalModule) -> HomologyResult:
    """Ext(torsion, mini-max) as p-adic Ext out of the dual of the completed
    second argument into the dual of the torsion part."""
    _require_torsion(t)
    if m.has_adic():
        raise NotRepresentable("general-dual path needs a mini-max partner without adic blocks")
    supp_m = support(Z_RING, m)
    shared = [p for p in t.primes if supp_m.full or p in supp_m.maximals]
    pieces = []
    for p in shared:
        m_dual = dual_module(complete([p], m))
        t_dual = dual_module(gamma(Z_RING, [p], t))
        pieces.append(ext(i, padic(p), m_dual, t_dual).module)
    module = direct_sum(*pieces) if pieces else ZERO
    return _result(Z_RING, module, "general_dual")


def theta_check(i: int, m: CanonicalModule, b: CanonicalModule, ctx: RingContext = Z_RING) -> bool:
    """Does dual(Ext^i(m, b)) match Tor_i(m, dual(b))?

    The dual of the Ext value is taken blockwise, i.e. over the completed
    product where that value lives.  When dual(b) is not representable the
    check still succeeds structurally if m is projective and flat (both
    sides vanish); otherwise the hypotheses are not met and
    NotRepresentable propagates.
    """
    e = ext(i, ctx, m, b)
    try:
        b_dual = dual_module(b)
    except NotRepresentable:
        flat_projective = all(x.kind in ("Z", "Zp") for x in m.blocks())
        if i >= 1 and flat_projective:
            return True  # both sides vanish identically
        raise
    lhs = dual_module(e.module)
    rhs = tor(i, ctx, m, b_dual).module
    return is_isomorphic(lhs, rhs)


# --- Bass and Betti numbers ---------------------------------------------------

GENERIC = "generic"


def _residue(p: int) -> CanonicalModule:
    return normalize([C(p, 1)])


def bass(i: int, p, m: CanonicalModule) -> int:
    """mu^i(p, m): length of Ext^i(residue field at p, m)."""
    if p == GENERIC:
        if i != 0:
            raise InvalidIndex("generic Bass numbers are defined at i = 0 only")
        return m.free + sum(part.adic for _, part in m.locals)
    if i < 0:
        raise InvalidIndex(f"negative homological degree {i}")
    if i >= 2:
        return 0
    val = length(ext(i, Z_RING, _residue(p), m).module)
    assert not val.is_infinite
    return val.value


def betti(i: int, p, m: CanonicalModule) -> int:
    """beta_i(p, m): length of Tor_i(residue field at p, m)."""
    if p == GENERIC:
        if i != 0:
            raise InvalidIndex("generic Betti numbers are defined at i = 0 only")
        return m.free + sum(part.adic for _, part in m.locals)
    if i < 0:
        raise InvalidIndex(f"negative homological degree {i}")
    if i >= 2:
        return 0
    val = length(tor(i, Z_RING, _residue(p), m).module)
    assert not val.is_infinite
    return val.value


# --- length bounds and vanishing certificates ---------------------------------


@dataclass(frozen=True)
class LengthBoundReport:
    lhs: ExtNat
    chain: tuple[ExtNat, ExtNat, ExtNat]
    holds: bool

    @property
    def bound(self) -> ExtNat:
        return self.chain[-1]

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs.to_json(),
            "chain": [b.to_json() for b in self.chain],
            "bound": self.bound.to_json(),
            "holds": self.holds,
        }


def tensor_length_bound(t: CanonicalModule, t2: CanonicalModule) -> LengthBoundReport:
    """The chained length bounds for a tensor of torsion modules.

    lhs <= sum over shared p of min(len(t/p^a t) len(t2/p t2),
                                    len(t/p t) len(t2/p^a t2))
        <= len(t/b^x t) max_p len(t2/p t2)
        <= len(t/b^x t) len(t2/b t2)

    with a = a_p the truncation exponent of t at p, b the product of the
    shared primes and x = max a_p; the 0 * inf convention is moot here
    because all the quotients of torsion modules are finite.
    """
    _require_torsion(t)
    _require_torsion(t2)
    shared = sorted(set(t.primes) & set(t2.primes))
    alphas = {p: truncation_exponent(p, t) for p in shared}
    x = max(alphas.values(), default=0)

    def flen(module: CanonicalModule) -> ExtNat:
        return length(module)

    lhs = flen(tensor(Z_RING, t, t2).module)
    b1 = ExtNat(0)
    for p in shared:
        left = flen(mod_prime_power(t, p, alphas[p])) * flen(mod_prime_power(t2, p, 1))
        right = flen(mod_prime_power(t, p, 1)) * flen(mod_prime_power(t2, p, alphas[p]))
        b1 = b1 + (left if left <= right else right)
    len_t_bx = ExtNat(0)
    for p in shared:
        len_t_bx = len_t_bx + flen(mod_prime_power(t, p, x))
    col_lens = [flen(mod_prime_power(t2, p, 1)) for p in shared]
    max_col = ExtNat(0)
    sum_col = ExtNat(0)
    for v in col_lens:
        if max_col <= v:
            max_col = v
        sum_col = sum_col + v
    b2 = len_t_bx * max_col
    b3 = len_t_bx * sum_col
    holds = lhs <= b1 and b1 <= b2 and b2 <= b3
    return LengthBoundReport(lhs, (b1, b2, b3), holds)


@dataclass(frozen=True)
class VanishingReport:
    vanishes: bool
    certificate: dict

    def to_json(self) -> dict:
        return {
            "vanishes": self.vanishes,
            "certificate": {str(k): v for k, v in sorted(self.certificate.items())},
        }


def vanishing_tensor(t: CanonicalModule, t2: CanonicalModule) -> VanishingReport:
    """Tensor vanishing: at every shared prime one side must be divisible."""
    _require_torsion(t)
    _require_torsion(t2)
    certificate: dict = {}
    vanishes = True
    for p in sorted(set(t.primes) & set(t2.primes)):
        if not t.local(p).finite:
            certificate[p] = "T=mT"
        elif not t2.local(p).finite:
            certificate[p] = "T'=mT'"
        else:
            certificate[p] = "neither"
            vanishes = False
    return VanishingReport(vanishes, certificate)


@dataclass(frozen=True)
class HomVanishingReport:
    vanishes: bool
    equivalents: dict

    def to_json(self) -> dict:
        return {
            "vanishes": self.vanishes,
            "which_equivalents_checked": sorted(self.equivalents),
        }


def hom_vanishing(a: CanonicalModule, b: CanonicalModule) -> HomVanishingReport:
    """Hom(artinian, -) vanishing, checked two ways.

    Directly, and through attached primes of the source against the support
    of the dual of the target's torsion part, factor by factor over the
    completed product.
    """
    _require_artinian(a)
    direct = hom(Z_RING, a, b).module.is_zero
    shared = set(a.primes) & {
        p for p, part in b.locals if part.finite or part.div
    }
    meets = False
    for p in shared:
        ap, bp = a.local(p), b.local(p)
        if ap.finite and (bp.finite or bp.div):
            meets = True
        if ap.div and bp.div:
            meets = True
    via_att = not meets
    if direct != via_att:
        raise AssertionError(
            f"hom_vanishing equivalents disagree on ({a}, {b}): "
            f"direct={direct} att_supp={via_att}"
        )
    return HomVanishingReport(direct, {"direct": direct, "att_supp": via_att})


def ass_of_hom(a: CanonicalModule, b: CanonicalModule) -> SupportSet:
    """Ass of Hom(artinian, -) over the completed product, computed from the
    attached primes of the source and the support of the dual target."""
    _require_artinian(a)
    if b.has_adic():
        raise NotRepresentable("ass_of_hom needs a partner without adic blocks")
    shared = sorted(
        set(support(Z_RING, a).maximals) & set(ass(Z_RING, b).maximals)
    )
    maximals = []
    generic = False
    for p in shared:
        ap, bp = a.local(p), b.local(p)
        if ap.finite and (bp.finite or bp.div):
            maximals.append(p)
        if ap.div and bp.div:
            generic = True
    return support_set(maximals, generic=generic)


__all__ = [
    "HomologyResult",
    "hom",
    "tensor",
    "ext",
    "tor",
    "hom_theoremC",
    "theoremC_annihilator_bound",
    "tensor_truncated",
    "ext_via_completion",
    "ext_dual_swap",
    "ext_via_general_dual",
    "theta_check",
    "bass",
    "betti",
    "GENERIC",
    "LengthBoundReport",
    "tensor_length_bound",
    "VanishingReport",
    "vanishing_tensor",
    "HomVanishingReport",
    "hom_vanishing",
    "ass_of_hom",
    "att",
]
