"""Seeded property suites and the exhaustive oracle grid.

Each suite draws deterministic instances from a seed and checks one family
of invariants; a report carries pass/fail counts and the first failing
instance as JSON.  NotRepresentable raised while building an instance means
the hypotheses of the property are not met and the case passes vacuously;
StabilizationFailed and plain disagreement are genuine failures.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import duality, homology, oracle, structure
from .errors import NotRepresentable, UnknownSuite
from .modules import (
    CanonicalModule,
    Pr,
    Z_RING,
    direct_sum,
    is_isomorphic,
    normalize,
    padic,
)
from .oracle import InstanceConfig

CASE_SEED_STRIDE = 1_000_003

DEFAULT_CONFIG = InstanceConfig()


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    cases: int
    passed: int
    failed: int
    first_failure: dict | None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "first_failure": self.first_failure,
        }

    def render(self) -> str:
        line = (
            f"suite={self.suite} seed={self.seed} cases={self.cases} "
            f"passed={self.passed} failed={self.failed}"
        )
        if self.first_failure is not None:
            line += "\nfirst_failure=" + json.dumps(self.first_failure, sort_keys=True)
        return line


def _fail(check: str, **data) -> dict:
    out = {"check": check}
    for key, value in data.items():
        if isinstance(value, CanonicalModule):
            out[key] = value.to_json()
        else:
            out[key] = value
    return out


def _with_kinds(cfg: InstanceConfig, kinds: set[str]) -> InstanceConfig:
    return dataclasses.replace(cfg, allow_kinds=frozenset(kinds))


def _draw(rng: random.Random, cfg: InstanceConfig, kinds: set[str]) -> CanonicalModule:
    return oracle.random_module(rng, _with_kinds(cfg, kinds))


# --- individual suites ----------------------------------------------------------


def _case_decomposition(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    m = _draw(rng, cfg, {"Z", "C", "Pr", "Zp"})
    n = _draw(rng, cfg, {"Z", "C", "Pr", "Zp"})
    blocks = list(m.blocks())
    rng.shuffle(blocks)
    if normalize(blocks) != m:
        return _fail("normalize order-insensitive", m=m)
    if normalize(m.blocks()) != m:
        return _fail("normalize idempotent", m=m)
    if direct_sum(m, n) != direct_sum(n, m):
        return _fail("direct_sum commutative", m=m, n=n)
    if direct_sum(m, direct_sum(n, m)) != direct_sum(direct_sum(m, n), m):
        return _fail("direct_sum associative", m=m, n=n)
    from .modules import ZERO

    if direct_sum(m, ZERO) != m:
        return _fail("zero identity", m=m)
    if CanonicalModule.from_json(m.to_json()) != m:
        return _fail("json round trip", m=m)
    t = _draw(rng, cfg, {"C", "Pr"})
    if t.primes:
        pieces = [structure.gamma(Z_RING, [p], t) for p in t.primes]
        if direct_sum(*pieces) != t:
            return _fail("primary decomposition", t=t)
        s = list(t.primes)
        if structure.localize(s, t) != structure.gamma(Z_RING, s, t):
            return _fail("localize equals gamma", t=t)
        if structure.complete(s, t) != structure.gamma(Z_RING, s, t):
            return _fail("complete equals gamma on torsion", t=t)
    supp = structure.support(Z_RING, m)
    assoc = structure.ass(Z_RING, m)
    if not supp.full and not assoc.maximals <= supp.maximals:
        return _fail("ass inside supp", m=m)
    # gamma only sees the torsion part, so the supp intersection law is a
    # torsion-module statement
    sub = [p for p in t.primes if rng.random() < 0.5]
    if sub:
        t_supp = structure.support(Z_RING, t)
        g_supp = structure.support(Z_RING, structure.gamma(Z_RING, sub, t))
        if g_supp.maximals != t_supp.maximals & frozenset(sub):
            return _fail("supp of gamma", t=t, primes=sub)
    return None


def _draw_local(rng: random.Random, cfg: InstanceConfig, p: int) -> CanonicalModule:
    """Random p-local module (admitted by the p-adic context)."""
    m = _draw(rng, cfg, {"C", "Pr", "Zp"})
    return CanonicalModule(0, tuple((q, part) for q, part in m.locals if q == p))


def _case_duality(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    p = rng.choice(_with_kinds(cfg, {"C"}).primes())
    plocal = _draw_local(rng, cfg, p)
    ctx = padic(p)
    d = duality.dual(ctx, plocal)
    if duality.dual_module(d.module) != plocal:
        return _fail("padic dual involution", m=plocal)
    flags = structure.classify(ctx, plocal)
    dual_flags = structure.classify(ctx, d.module)
    if flags.noetherian != dual_flags.artinian or flags.artinian != dual_flags.noetherian:
        return _fail("dual swaps chain conditions", m=plocal)
    if structure.annihilator(d.module) != structure.annihilator(plocal):
        return _fail("annihilator preserved (padic)", m=plocal)
    if duality.check_biduality(ctx, plocal) is not True:
        return _fail("padic reflexivity", m=plocal)

    fin = _draw(rng, cfg, {"C"})
    dd = duality.bidual_value(Z_RING, fin)
    if dd != fin:
        return _fail("finite double dual", m=fin)
    if structure.length(duality.dual(Z_RING, fin).module) != structure.length(fin):
        return _fail("length preserved", m=fin)
    if structure.annihilator(duality.dual(Z_RING, fin).module) != structure.annihilator(fin):
        return _fail("annihilator preserved", m=fin)
    if duality.check_biduality(Z_RING, fin) != (not structure.length(fin).is_infinite):
        return _fail("reflexive iff finite length", m=fin)

    a = _draw(rng, cfg, {"C", "Pr"})
    att = structure.att(a)
    dual_a = duality.dual_module(a)
    assoc = structure.ass(Z_RING, dual_a)
    if att.maximals != assoc.maximals or att.generic != assoc.generic:
        return _fail("att equals ass of dual", a=a)
    return None


def _path_instances(rng: random.Random, cfg: InstanceConfig):
    t = _draw(rng, cfg, {"C", "Pr"})
    l = _draw(rng, cfg, {"Z", "C", "Pr"})
    return t, l


def _case_path_agreement(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    t, l = _path_instances(rng, cfg)
    for i in (0, 1):
        direct = homology.ext(i, Z_RING, t, l).module
        via_comp = homology.ext_via_completion(i, t, l).module
        if not is_isomorphic(direct, via_comp):
            return _fail("ext completion path", i=i, t=t, l=l, direct=direct, alt=via_comp)
        via_gen = homology.ext_via_general_dual(i, t, l).module
        if not is_isomorphic(direct, via_gen):
            return _fail("ext general-dual path", i=i, t=t, l=l, direct=direct, alt=via_gen)
        if l.free == 0:
            via_swap = homology.ext_dual_swap(i, t, l).module
            if not is_isomorphic(direct, via_swap):
                return _fail("ext dual-swap path", i=i, t=t, l=l, direct=direct, alt=via_swap)
    if not l.has_divisible():
        hc = homology.hom_theoremC(t, l).module
        if not is_isomorphic(hc, homology.hom(Z_RING, t, l).module):
            return _fail("truncated hom path", t=t, l=l)
        if structure.length(hc).is_infinite:
            return _fail("truncated hom finite length", t=t, l=l)
        bound = homology.theoremC_annihilator_bound(t, l)
        ann = structure.annihilator(hc)
        if not (ann and bound % ann == 0):
            return _fail("truncated hom annihilator", t=t, l=l, bound=bound, ann=ann)
    t2 = _draw(rng, cfg, {"C", "Pr"})
    direct = homology.tensor(Z_RING, t, t2).module
    trunc = homology.tensor_truncated(t, t2).module
    if not is_isomorphic(direct, trunc):
        return _fail("truncated tensor path", t=t, t2=t2, direct=direct, alt=trunc)
    return None


def _case_theorem_a(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    a, m = _path_instances(rng, cfg)
    for i in (0, 1):
        e = homology.ext(i, Z_RING, a, m).module
        if e.free or e.has_divisible():
            return _fail("ext noetherian over completion", i=i, a=a, m=m, value=e)
        t = homology.tor(i, Z_RING, a, m).module
        if t.free or t.has_adic():
            return _fail("tor artinian torsion", i=i, a=a, m=m, value=t)
        if not structure.length(a).is_infinite and not structure.length(m).is_infinite:
            if structure.length(e).is_infinite or structure.length(t).is_infinite:
                return _fail("finite-length closure", i=i, a=a, m=m)
    p = rng.choice(_with_kinds(cfg, {"C"}).primes())
    ctx = padic(p)
    mm = _draw_local(rng, cfg, p)
    mm2 = _draw_local(rng, cfg, p)
    for i in (0, 1):
        try:
            e = homology.ext(i, ctx, mm, mm2).module
            t = homology.tor(i, ctx, mm, mm2).module
        except NotRepresentable:
            continue  # hypotheses not met for this block combination
        if not structure.classify(ctx, e).matlis_reflexive:
            return _fail("padic ext reflexive", i=i, m=mm, m2=mm2)
        if not structure.classify(ctx, t).matlis_reflexive:
            return _fail("padic tor reflexive", i=i, m=mm, m2=mm2)
    return None


def _case_theta(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    a = _draw(rng, cfg, {"C", "Pr"})
    b = _draw(rng, cfg, {"C", "Pr"})
    for i in (0, 1):
        if homology.theta_check(i, a, b) is not True:
            return _fail("theta artinian pair", i=i, m=a, b=b)
    free_m = _draw(rng, cfg, {"Z"})
    if homology.theta_check(1, free_m, _draw(rng, cfg, {"Z", "C", "Pr"})) is not True:
        return _fail("theta projective source", m=free_m)
    p = rng.choice(_with_kinds(cfg, {"C"}).primes())
    ctx = padic(p)
    mm = _draw_local(rng, cfg, p)
    bb = _draw_local(rng, cfg, p)
    for i in (0, 1):
        try:
            if homology.theta_check(i, mm, bb, ctx) is not True:
                return _fail("theta padic minimax", i=i, m=mm, b=bb)
        except NotRepresentable:
            continue
    return None


def _case_lengths(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    t = _draw(rng, cfg, {"C", "Pr"})
    t2 = _draw(rng, cfg, {"C", "Pr"})
    report = homology.tensor_length_bound(t, t2)
    if not report.holds:
        return _fail("tensor length chain", t=t, t2=t2, report=report.to_json())
    if structure.length(homology.tensor(Z_RING, t, t2).module).is_infinite:
        return _fail("artinian tensor finite length", t=t, t2=t2)
    return None


def _case_vanishing(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    t = _draw(rng, cfg, {"C", "Pr"})
    t2 = _draw(rng, cfg, {"C", "Pr"})
    report = homology.vanishing_tensor(t, t2)
    direct_zero = homology.tensor(Z_RING, t, t2).module.is_zero
    if report.vanishes != direct_zero:
        return _fail("tensor vanishing criterion", t=t, t2=t2, report=report.to_json())
    a = _draw(rng, cfg, {"C", "Pr"})
    b = _draw(rng, cfg, {"Z", "C", "Pr"})
    try:
        hv = homology.hom_vanishing(a, b)
    except AssertionError as exc:
        return _fail("hom vanishing equivalents", a=a, b=b, detail=str(exc))
    if hv.vanishes != homology.hom(Z_RING, a, b).module.is_zero:
        return _fail("hom vanishing verdict", a=a, b=b)
    predicted = homology.ass_of_hom(a, b)
    actual = structure.ass(Z_RING, homology.hom(Z_RING, a, b).module)
    if predicted.maximals != actual.maximals or predicted.generic != actual.generic:
        return _fail(
            "ass of hom",
            a=a,
            b=b,
            predicted=predicted.to_json(),
            actual=actual.to_json(),
        )
    return None


def _case_ass_att(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    m = _draw(rng, cfg, {"Z", "C", "Pr", "Zp"})
    supp = structure.support(Z_RING, m)
    assoc = structure.ass(Z_RING, m)
    if not supp.full:
        if not assoc.maximals <= supp.maximals:
            return _fail("ass inside supp", m=m)
        if assoc.generic:
            return _fail("generic embedding forces full support", m=m)
    if m.is_torsion():
        if assoc.maximals != supp.maximals or assoc.generic or supp.full:
            return _fail("torsion supp equals ass", m=m)
    a = _draw(rng, cfg, {"C", "Pr"})
    att = structure.att(a)
    if att.maximals != frozenset(p for p, part in a.locals if part.finite):
        return _fail("att maximals", a=a)
    if att.generic != a.has_divisible():
        return _fail("att generic", a=a)
    if m.free or m.has_adic():
        try:
            structure.att(m)
        except Exception as exc:
            if type(exc).__name__ != "NotArtinian":
                return _fail("att error type", m=m, got=type(exc).__name__)
        else:
            return _fail("att must reject non-artinian", m=m)
    return None


def _case_oracle_diff(rng: random.Random, cfg: InstanceConfig) -> dict | None:
    fin_cfg = _with_kinds(cfg, {"C"})
    inst_a = oracle.random_instance(rng.getrandbits(48), fin_cfg)
    inst_b = oracle.random_instance(rng.getrandbits(48), fin_cfg)
    for inst in (inst_a, inst_b):
        if oracle.fp_structure(inst.presentation) != inst.module:
            return _fail("presentation invariance", m=inst.module)
    pa, pb = inst_a.presentation, inst_b.presentation
    a, b = inst_a.module, inst_b.module
    checks = [
        ("hom", oracle.fp_hom(pa, pb), homology.hom(Z_RING, a, b).module),
        ("tensor", oracle.fp_tensor(pa, pb), homology.tensor(Z_RING, a, b).module),
        ("ext1", oracle.fp_ext1(pa, pb), homology.ext(1, Z_RING, a, b).module),
        ("tor1", oracle.fp_tor1(pa, pb), homology.tor(1, Z_RING, a, b).module),
    ]
    for name, got, want in checks:
        if got != want:
            return _fail(f"oracle {name}", a=a, b=b, oracle=got, engine=want)
    # Pruefer towers against the table, certificates included
    p = rng.choice(fin_cfg.primes())
    pm = normalize([Pr(p)])
    if oracle.pruefer_colimit("tensor", p, pb) != homology.tensor(Z_RING, pm, b).module:
        return _fail("pruefer tensor colimit", p=p, b=b)
    if oracle.pruefer_colimit("tor1", p, pb) != homology.tor(1, Z_RING, pm, b).module:
        return _fail("pruefer tor colimit", p=p, b=b)
    mixed = oracle.random_instance(rng.getrandbits(48), _with_kinds(cfg, {"C", "Z"}))
    if oracle.pruefer_limit_ext(p, mixed.presentation) != homology.ext(
        1, Z_RING, pm, mixed.module
    ).module:
        return _fail("pruefer ext limit", p=p, b=mixed.module)
    return None


_SUITES = {
    "decomposition": _case_decomposition,
    "duality": _case_duality,
    "path_agreement": _case_path_agreement,
    "oracle_diff": _case_oracle_diff,
    "theorem_a": _case_theorem_a,
    "theta": _case_theta,
    "lengths": _case_lengths,
    "vanishing": _case_vanishing,
    "ass_att": _case_ass_att,
}

SUITE_NAMES = tuple(sorted(_SUITES))


def _run_case(suite: str, seed: int, idx: int, cfg: InstanceConfig) -> dict | None:
    rng = random.Random(seed * CASE_SEED_STRIDE + idx)
    try:
        return _SUITES[suite](rng, cfg)
    except NotRepresentable:
        return None  # hypotheses not met: vacuous pass
    except Exception as exc:
        return {"check": "unexpected exception", "error": type(exc).__name__, "detail": str(exc)}


def _worker(args):
    suite, seed, idx, cfg = args
    return idx, _run_case(suite, seed, idx, cfg)


def run_suite(
    name: str,
    cases: int,
    seed: int,
    config: InstanceConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> SuiteReport:
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    failures: dict[int, dict] = {}
    if jobs > 1 and cases > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            work = ((name, seed, idx, config) for idx in range(cases))
            for idx, detail in pool.map(_worker, work, chunksize=64):
                if detail is not None:
                    failures[idx] = detail
    else:
        for idx in range(cases):
            detail = _run_case(name, seed, idx, config)
            if detail is not None:
                failures[idx] = detail
    failed = len(failures)
    first = None
    if failures:
        first_idx = min(failures)
        first = {"case": first_idx, **failures[first_idx]}
    return SuiteReport(name, seed, cases, cases - failed, failed, first)


# --- exhaustive oracle grid ------------------------------------------------------


def grid_modules(primes=(2, 3, 5), max_exp=3, max_blocks=3) -> list[CanonicalModule]:
    """All finite modules with at most max_blocks cyclic blocks over the primes."""
    from .modules import C

    atoms = [C(p, e) for p in primes for e in range(1, max_exp + 1)]
    out = []
    for k in range(max_blocks + 1):
        for combo in itertools.combinations_with_replacement(atoms, k):
            out.append(normalize(combo))
    return sorted(set(out), key=str)


def oracle_grid_check(primes=(2, 3, 5), max_exp=3, max_blocks=3) -> dict | None:
    """Compare the four functors against the oracle on every ordered pair.

    Returns None when everything matches, else the first mismatch.  The
    tensor/tor tables are symmetric, so unordered pairs are computed once
    and engine symmetry is asserted on the swap.
    """
    mods = grid_modules(primes, max_exp, max_blocks)
    reduced = [oracle._reduced_relations(oracle.canonical_presentation(m)) for m in mods]
    for ia, a in enumerate(mods):
        ra = reduced[ia]
        for ib, b in enumerate(mods):
            sb = reduced[ib]
            want_hom = homology.hom(Z_RING, a, b).module
            got_hom = oracle.hom_reduced(ra, sb)
            if got_hom != want_hom:
                return _fail("grid hom", a=a, b=b, oracle=got_hom, engine=want_hom)
            want_ext = homology.ext(1, Z_RING, a, b).module
            got_ext = oracle.ext1_reduced(ra, sb)
            if got_ext != want_ext:
                return _fail("grid ext1", a=a, b=b, oracle=got_ext, engine=want_ext)
            if ib < ia:
                continue  # symmetric functors below
            want_ten = homology.tensor(Z_RING, a, b).module
            got_ten = oracle.tensor_reduced(ra, sb)
            if got_ten != want_ten:
                return _fail("grid tensor", a=a, b=b, oracle=got_ten, engine=want_ten)
            if homology.tensor(Z_RING, b, a).module != want_ten:
                return _fail("tensor symmetry", a=a, b=b)
            want_tor = homology.tor(1, Z_RING, a, b).module
            got_tor = oracle.tor1_reduced(ra, sb)
            if got_tor != want_tor:
                return _fail("grid tor1", a=a, b=b, oracle=got_tor, engine=want_tor)
            if homology.tor(1, Z_RING, b, a).module != want_tor:
                return _fail("tor symmetry", a=a, b=b)
    return None
