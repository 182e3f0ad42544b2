"""Structural functors and predicates on canonical modules.

Support, associated and attached primes, the torsion functor, localization
at a finite prime set, completion base-change, length, annihilator, class
predicates, and the truncation exponent used by the truncated-Hom path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    InvalidRing,
    NotArtinian,
    NotRepresentable,
    NotStabilizing,
    NotTorsion,
)
from .modules import (
    CanonicalModule,
    LocalPart,
    RingContext,
    ZERO,
    admit,
    normalize,
    require_admitted,
)


@dataclass(frozen=True)
class SupportSet:
    """Value of Supp/Ass/Att queries: a finite set of maximal primes plus
    flags for the generic prime (0) and for full support."""

    full: bool = False
    generic: bool = False
    maximals: frozenset = frozenset()

    def __post_init__(self):
        if self.full and not self.generic:
            object.__setattr__(self, "generic", True)

    @property
    def is_empty(self) -> bool:
        return not self.full and not self.generic and not self.maximals

    def to_json(self) -> dict:
        return {
            "full": self.full,
            "generic": self.generic,
            "maximals": [str(p) for p in sorted(self.maximals)],
        }

    def __str__(self) -> str:
        if self.full:
            return "Spec"
        parts = []
        if self.generic:
            parts.append("(0)")
        parts.extend(f"({p})" for p in sorted(self.maximals))
        return "{" + ", ".join(parts) + "}"


def support_set(maximals: Iterable[int] = (), generic: bool = False, full: bool = False):
    return SupportSet(full, generic or full, frozenset(maximals))


class ExtNat:
    """A length: a non-negative integer or infinity, with 0*inf = 0."""

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        self.value = value  # None means infinite

    INF: "ExtNat"

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        return isinstance(other, ExtNat) and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __le__(self, other: "ExtNat") -> bool:
        if other.is_infinite:
            return True
        if self.is_infinite:
            return False
        return self.value <= other.value

    def __add__(self, other: "ExtNat") -> "ExtNat":
        if self.is_infinite or other.is_infinite:
            return ExtNat.INF
        return ExtNat(self.value + other.value)

    def __mul__(self, other: "ExtNat") -> "ExtNat":
        if self == 0 or other == 0:
            return ExtNat(0)
        if self.is_infinite or other.is_infinite:
            return ExtNat.INF
        return ExtNat(self.value * other.value)

    def to_json(self):
        return "infinity" if self.is_infinite else self.value

    def __repr__(self):
        return "ExtNat(inf)" if self.is_infinite else f"ExtNat({self.value})"


ExtNat.INF = ExtNat(None)


def support(ctx: RingContext, m: CanonicalModule) -> SupportSet:
    """Supp(m) over ctx.

    Over Z, free or adic blocks localize nonzero everywhere, so support is
    full; otherwise it is the finite set of primes carrying a local part.
    """
    require_admitted(ctx, m)
    if ctx.kind == "Z":
        if m.free or m.has_adic():
            return support_set(m.primes, full=True)
        return support_set(m.primes)
    p = ctx.prime
    part = m.local(p)
    return support_set(
        maximals=[p] if (part.finite or part.div) else [],
        generic=part.adic > 0,
    )


def ass(ctx: RingContext, m: CanonicalModule) -> SupportSet:
    """Associated primes: (0) embeds iff a torsion-free block is present;
    a maximal (p) embeds iff the p-part is nonzero."""
    require_admitted(ctx, m)
    return support_set(
        maximals=[p for p, part in m.locals if part.finite or part.div],
        generic=bool(m.free or m.has_adic()),
    )


def att(a: CanonicalModule) -> SupportSet:
    """Attached primes of an artinian module.

    Computed in closed form via the dual (Ooishi): a Pruefer block has only
    the zero annihilator on nonzero quotients, a finite block attaches its
    prime.
    """
    if not (a.free == 0 and not a.has_adic()):
        raise NotArtinian(f"{a} is not artinian")
    return support_set(
        maximals=[p for p, part in a.locals if part.finite],
        generic=a.has_divisible(),
    )


def gamma(ctx: RingContext, primes: Iterable[int], m: CanonicalModule) -> CanonicalModule:
    """Torsion functor for the ideal cutting out the given primes: keeps
    finite and divisible parts there, drops free rank and adic blocks."""
    require_admitted(ctx, m)
    s = frozenset(primes)
    if not s:
        raise InvalidRing("gamma requires a nonempty prime set")
    if ctx.kind == "padic" and s != {ctx.prime}:
        raise InvalidRing(f"gamma over {ctx} allows only the prime {ctx.prime}")
    locs = []
    for p, part in m.locals:
        if p in s and (part.finite or part.div):
            locs.append((p, LocalPart(part.finite, part.div, 0)))
    return CanonicalModule(0, tuple(locs))


def localize(primes: Iterable[int], t: CanonicalModule) -> CanonicalModule:
    """Localization of a torsion module by inverting everything outside the
    given primes; agrees with gamma on torsion modules."""
    if not t.is_torsion():
        raise NotTorsion(f"{t} is not torsion")
    s = frozenset(primes)
    return CanonicalModule(0, tuple((p, part) for p, part in t.locals if p in s))


def complete(primes: Iterable[int], m: CanonicalModule) -> CanonicalModule:
    """Base change along Z -> product of Z_p over the given primes.

    Blockwise: Z becomes one adic block per prime, torsion blocks survive
    at their own prime and die elsewhere.  Adic inputs leave the class.
    """
    if m.has_adic():
        raise NotRepresentable("completion of an adic block leaves the block class")
    s = sorted(set(primes))
    locs: dict[int, LocalPart] = {}
    for p, part in m.locals:
        if p in s:
            locs[p] = LocalPart(part.finite, part.div, 0)
    if m.free:
        for p in s:
            old = locs.get(p, LocalPart())
            locs[p] = LocalPart(old.finite, old.div, old.adic + m.free)
    return CanonicalModule(0, tuple(sorted(locs.items())))


def length(m: CanonicalModule) -> ExtNat:
    if m.free or m.has_divisible() or m.has_adic():
        return ExtNat.INF
    return ExtNat(sum(sum(part.finite) for _, part in m.locals))


def annihilator(m: CanonicalModule) -> int:
    """Generator >= 0 of Ann(m); 0 for faithful, 1 for the zero module."""
    if m.free or m.has_divisible() or m.has_adic():
        return 0
    n = 1
    for p, part in m.locals:
        if part.finite:
            n *= p ** max(part.finite)
    return n


@dataclass(frozen=True)
class ClassFlags:
    noetherian: bool
    artinian: bool
    minimax: bool
    matlis_reflexive: bool

    def to_json(self) -> dict:
        return {
            "noetherian": self.noetherian,
            "artinian": self.artinian,
            "minimax": self.minimax,
            "matlis_reflexive": self.matlis_reflexive,
        }


def classify(ctx: RingContext, m: CanonicalModule) -> ClassFlags:
    """Chain-condition classes and Matlis reflexivity.

    Over Z, reflexive means finite length (mini-max with nonzero
    annihilator); over a p-adic ring, every admitted block module is
    mini-max and the ring is complete local, so mini-max means reflexive.
    """
    require_admitted(ctx, m)
    if ctx.kind == "Z":
        noeth = not m.has_divisible() and not m.has_adic()
        artin = m.free == 0 and not m.has_adic()
        minimax = not m.has_adic()
        reflexive = noeth and artin  # finite length
        return ClassFlags(noeth, artin, minimax, reflexive)
    noeth = not m.has_divisible()
    artin = not m.has_adic()
    return ClassFlags(noeth, artin, True, True)


def truncation_exponent(p: int, m: CanonicalModule) -> int:
    """Least a with p^a * m = p^(a+1) * m as subgroups.

    Free and adic-at-p blocks strictly descend forever; finite blocks
    stabilize at their largest exponent; everything else is p-stable.
    """
    if m.free or m.local(p).adic:
        raise NotStabilizing(f"p^a {m} never stabilizes at p={p}")
    part = m.local(p)
    return max(part.finite) if part.finite else 0


def mod_prime_power(m: CanonicalModule, p: int, k: int) -> CanonicalModule:
    """m / p^k m for a torsion module m (closed form, used by truncation
    and length-bound computations)."""
    if not m.is_torsion():
        raise NotTorsion(f"{m} is not torsion")
    if k == 0:
        return ZERO
    part = m.local(p)
    from .modules import C

    return normalize(C(p, min(e, k)) for e in part.finite)


def socle_colon(m: CanonicalModule, p: int, k: int) -> CanonicalModule:
    """(0 :_m p^k), the p^k-torsion subgroup, for m without adic blocks."""
    if m.has_adic():
        raise NotRepresentable("colon of an adic block not representable")
    if k == 0:
        return ZERO
    part = m.local(p)
    from .modules import C

    return normalize(C(p, min(e, k)) for e in list(part.finite) + [k] * part.div)
