"""Matlis duality on the representable classes.

Over Z the dual of a torsion module is taken; its value lives over the
completed product of the p-adic rings at the input's support, and the
marker records that ring change explicitly.  Over a p-adic ring every
admitted block module has a dual in the class:

    C(p,e) <-> C(p,e),   Pr(p) <-> Zp(p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRepresentable
from .modules import (
    Block,
    C,
    CanonicalModule,
    Pr,
    RingContext,
    RingMarker,
    Zp,
    is_isomorphic,
    marker_padic,
    marker_product,
    normalize,
    require_admitted,
)
from .structure import classify


@dataclass(frozen=True)
class DualResult:
    module: CanonicalModule
    ring: RingMarker

    def to_json(self) -> dict:
        return {"module": self.module.to_json(), "ring": self.ring.to_json()}


def _dual_block(b: Block) -> Block:
    if b.kind == "C":
        return C(b.prime, b.exponent)
    if b.kind == "Pr":
        return Zp(b.prime)
    if b.kind == "Zp":
        return Pr(b.prime)
    raise NotRepresentable("dual of a free block has infinite support")


def dual_module(m: CanonicalModule) -> CanonicalModule:
    """Blockwise Matlis dual of a module without free rank.

    Over Z this is only meaningful for torsion input; callers that allow
    adic blocks are working over a completed ring where Zp(p)^v = Pr(p).
    """
    if m.free:
        raise NotRepresentable("dual of a free block has infinite support")
    return normalize(_dual_block(b) for b in m.blocks())


def dual(ctx: RingContext, m: CanonicalModule) -> DualResult:
    require_admitted(ctx, m)
    if ctx.kind == "padic":
        return DualResult(dual_module(m), marker_padic(ctx.prime))
    if m.free or m.has_adic():
        raise NotRepresentable(
            "Matlis dual over Z is only representable for torsion modules"
        )
    return DualResult(dual_module(m), marker_product(m.primes))


def bidual_value(ctx: RingContext, m: CanonicalModule) -> CanonicalModule:
    """dual(dual(m)) with the second dual taken over the first dual's ring."""
    first = dual(ctx, m)
    return dual_module(first.module)


def check_biduality(ctx: RingContext, m: CanonicalModule) -> bool:
    """Whether m is Matlis reflexive over ctx.

    The blockwise double dual always returns m on the nose, but over Z the
    second dual is computed over a completed product, not over Z itself; the
    verdict therefore follows the mini-max-with-complete-semi-local-quotient
    criterion (equivalently: finite length over Z), not bare value equality.
    """
    value_ok = is_isomorphic(bidual_value(ctx, m), m)
    verdict = classify(ctx, m).matlis_reflexive
    # the value-level round trip never fails inside the representable class
    assert value_ok
    return verdict
