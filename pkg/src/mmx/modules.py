"""Canonical block representation of the modules the engine manipulates.

Every module in scope is a finite direct sum of four block kinds:

* ``Z``       -- the integers (free rank),
* ``C(p,e)``  -- the finite cyclic group of order p^e,
* ``Pr(p)``   -- the Pruefer group Z(p^infinity), divisible p-torsion,
* ``Zp(p)``   -- the ring of p-adic integers as a module.

A :class:`CanonicalModule` groups these by prime and sorts everything, so
structural equality of canonical forms decides isomorphism (structure
theorem over a PID plus Krull-Remak-Schmidt-Azumaya for the artinian
part).  Non-split extensions of noetherian by artinian modules are not
representable; every functor value the engine computes lands back in the
split class, which is why this is enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidRing
from .intmath import check_prime, factorize


@dataclass(frozen=True)
class Block:
    kind: str  # 'Z', 'C', 'Pr' or 'Zp'
    prime: int | None = None
    exponent: int | None = None

    def __post_init__(self):
        if self.kind == "Z":
            if self.prime is not None or self.exponent is not None:
                raise ValueError("Z block carries no prime")
        elif self.kind == "C":
            check_prime(self.prime)
            if self.exponent is None or self.exponent < 1:
                raise ValueError("C block needs exponent >= 1")
        elif self.kind in ("Pr", "Zp"):
            check_prime(self.prime)
            if self.exponent is not None:
                raise ValueError(f"{self.kind} block carries no exponent")
        else:
            raise ValueError(f"unknown block kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "C":
            return f"Z/{self.prime**self.exponent}"
        return f"{self.kind}({self.prime})"


def Z() -> Block:
    return Block("Z")


def C(p: int, e: int) -> Block:
    return Block("C", p, e)


def Pr(p: int) -> Block:
    return Block("Pr", p)


def Zp(p: int) -> Block:
    return Block("Zp", p)


@dataclass(frozen=True)
class LocalPart:
    """What a module looks like at one prime: C exponents, Pruefer and adic ranks."""

    finite: tuple[int, ...] = ()
    div: int = 0
    adic: int = 0

    def __post_init__(self):
        if list(self.finite) != sorted(self.finite) or any(e < 1 for e in self.finite):
            raise ValueError("finite exponents must be sorted and >= 1")
        if self.div < 0 or self.adic < 0:
            raise ValueError("negative rank")

    @property
    def trivial(self) -> bool:
        return not self.finite and self.div == 0 and self.adic == 0


_ZERO_PART = LocalPart()


@dataclass(frozen=True)
class CanonicalModule:
    free: int = 0
    locals: tuple[tuple[int, LocalPart], ...] = ()

    def __post_init__(self):
        primes = [p for p, _ in self.locals]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("locals must be keyed by strictly increasing primes")
        if any(part.trivial for _, part in self.locals):
            raise ValueError("trivial local parts must be omitted")
        if self.free < 0:
            raise ValueError("negative free rank")

    def local(self, p: int) -> LocalPart:
        for q, part in self.locals:
            if q == p:
                return part
        return _ZERO_PART

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.locals)

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.locals

    def blocks(self) -> Iterator[Block]:
        for _ in range(self.free):
            yield Z()
        for p, part in self.locals:
            for e in part.finite:
                yield C(p, e)
            for _ in range(part.div):
                yield Pr(p)
            for _ in range(part.adic):
                yield Zp(p)

    def has_adic(self) -> bool:
        return any(part.adic for _, part in self.locals)

    def has_divisible(self) -> bool:
        return any(part.div for _, part in self.locals)

    def is_torsion(self) -> bool:
        """Killed blockwise by integers: only C and Pr blocks."""
        return self.free == 0 and not self.has_adic()

    def is_finite(self) -> bool:
        return self.free == 0 and all(
            part.div == 0 and part.adic == 0 for _, part in self.locals
        )

    def to_json(self) -> dict:
        out: dict = {}
        if self.free:
            out["free"] = self.free
        if self.locals:
            loc = {}
            for p, part in self.locals:
                entry: dict = {}
                if part.finite:
                    entry["finite"] = list(part.finite)
                if part.div:
                    entry["div"] = part.div
                if part.adic:
                    entry["adic"] = part.adic
                loc[str(p)] = entry
            out["locals"] = loc
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CanonicalModule":
        locs = []
        for p_str, entry in data.get("locals", {}).items():
            part = LocalPart(
                tuple(sorted(entry.get("finite", ()))),
                entry.get("div", 0),
                entry.get("adic", 0),
            )
            if not part.trivial:
                locs.append((int(p_str), part))
        locs.sort()
        return cls(data.get("free", 0), tuple(locs))

    def __str__(self) -> str:
        parts = [str(b) for b in self.blocks()]
        return " + ".join(parts) if parts else "0"


ZERO = CanonicalModule()


def normalize(blocks: Iterable[Block]) -> CanonicalModule:
    """Group blocks by prime and sort; order-insensitive and idempotent."""
    free = 0
    finite: dict[int, list[int]] = {}
    div: dict[int, int] = {}
    adic: dict[int, int] = {}
    for b in blocks:
        if b.kind == "Z":
            free += 1
        elif b.kind == "C":
            finite.setdefault(b.prime, []).append(b.exponent)
        elif b.kind == "Pr":
            div[b.prime] = div.get(b.prime, 0) + 1
        else:
            adic[b.prime] = adic.get(b.prime, 0) + 1
    primes = sorted(set(finite) | set(div) | set(adic))
    locs = tuple(
        (p, LocalPart(tuple(sorted(finite.get(p, ()))), div.get(p, 0), adic.get(p, 0)))
        for p in primes
    )
    return CanonicalModule(free, locs)


def cyclic(n: int) -> CanonicalModule:
    """Z/n split into prime-power blocks by CRT; Z/1 is the zero module."""
    if n < 1:
        raise ValueError("cyclic order must be positive")
    return normalize(C(pp.p, pp.e) for pp in factorize(n)) if n > 1 else ZERO


def repeat(m: CanonicalModule, k: int) -> CanonicalModule:
    """Direct sum of k copies of m, computed without expanding blocks."""
    if k < 0:
        raise ValueError("repetition count must be non-negative")
    if k == 0:
        return ZERO
    locs = tuple(
        (p, LocalPart(tuple(sorted(part.finite * k)), part.div * k, part.adic * k))
        for p, part in m.locals
    )
    return CanonicalModule(m.free * k, locs)


def block_count(m: CanonicalModule) -> int:
    return m.free + sum(len(part.finite) + part.div + part.adic for _, part in m.locals)


def direct_sum(*modules: CanonicalModule) -> CanonicalModule:
    blocks: list[Block] = []
    for m in modules:
        blocks.extend(m.blocks())
    return normalize(blocks)


def is_isomorphic(m: CanonicalModule, n: CanonicalModule) -> bool:
    return m == n


@dataclass(frozen=True)
class RingContext:
    kind: str  # 'Z' or 'padic'
    prime: int | None = None

    def __post_init__(self):
        if self.kind == "Z":
            if self.prime is not None:
                raise ValueError("Z context carries no prime")
        elif self.kind == "padic":
            check_prime(self.prime)
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    def __str__(self) -> str:
        return "Z" if self.kind == "Z" else f"Z_{self.prime}"


Z_RING = RingContext("Z")


def padic(p: int) -> RingContext:
    return RingContext("padic", p)


def admit(ctx: RingContext, m: CanonicalModule) -> bool:
    """Whether m is a legal module over ctx.

    The integers admit everything; the p-adic ring admits exactly the
    p-local modules without free rank (the same underlying group carries
    both structures in that case).
    """
    if ctx.kind == "Z":
        return True
    if m.free:
        return False
    return all(p == ctx.prime for p in m.primes)


def require_admitted(ctx: RingContext, m: CanonicalModule) -> None:
    if not admit(ctx, m):
        raise InvalidRing(f"{m} is not a module over {ctx}")


# --- ring-of-result markers -------------------------------------------------
#
# Functor values with adic blocks live over a non-canonical completion of Z
# (a finite product of p-adic rings), and silently re-tagging them would hide
# that.  Results therefore carry an explicit marker.


@dataclass(frozen=True)
class RingMarker:
    kind: str  # 'Z', 'padic' or 'product'
    primes: tuple[int, ...] = ()

    def to_json(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "padic":
            return {"padic": self.primes[0]}
        return {"product": list(self.primes)}

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "padic":
            return f"Z_{self.primes[0]}"
        return "*".join(f"Z_{p}" for p in self.primes) if self.primes else "Z-hat(1)"


MARKER_Z = RingMarker("Z")


def marker_padic(p: int) -> RingMarker:
    return RingMarker("padic", (p,))


def marker_product(primes: Iterable[int]) -> RingMarker:
    return RingMarker("product", tuple(sorted(set(primes))))


def result_marker(ctx: RingContext, m: CanonicalModule) -> RingMarker:
    """Default marker: p-adic context keeps its ring; otherwise adic output
    blocks force the completed product over exactly their primes."""
    if ctx.kind == "padic":
        return marker_padic(ctx.prime)
    adic_primes = [p for p, part in m.locals if part.adic]
    if adic_primes:
        return marker_product(adic_primes)
    return MARKER_Z
