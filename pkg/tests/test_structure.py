"""Support, Ass, Att, torsion functor, localization, completion, length."""

import pytest

from mmx.errors import InvalidRing, NotArtinian, NotStabilizing, NotTorsion
from mmx.modules import C, Pr, Z, ZERO, Z_RING, Zp, normalize, padic
from mmx.structure import (
    ExtNat,
    annihilator,
    ass,
    att,
    classify,
    complete,
    gamma,
    length,
    localize,
    mod_prime_power,
    socle_colon,
    support,
    truncation_exponent,
)


def test_support():
    s = support(Z_RING, normalize([Pr(2), C(3, 1)]))
    assert not s.full and s.maximals == {2, 3}
    assert support(Z_RING, normalize([Z()])).full
    assert support(Z_RING, normalize([Zp(5)])).full
    assert support(Z_RING, ZERO).is_empty


def test_support_padic():
    s = support(padic(2), normalize([C(2, 1)]))
    assert s.maximals == {2} and not s.generic
    assert support(padic(2), normalize([Zp(2)])).generic


def test_ass():
    s = ass(Z_RING, normalize([Z(), C(2, 1)]))
    assert s.generic and s.maximals == {2}
    s = ass(Z_RING, normalize([Pr(3)]))
    assert not s.generic and s.maximals == {3}
    s = ass(Z_RING, normalize([Zp(2)]))
    assert s.generic and not s.maximals


def test_att():
    s = att(normalize([Pr(2)]))
    assert s.generic and not s.maximals
    s = att(normalize([C(2, 3)]))
    assert not s.generic and s.maximals == {2}
    s = att(normalize([C(2, 1), Pr(3)]))
    assert s.generic and s.maximals == {2}
    with pytest.raises(NotArtinian):
        att(normalize([Z()]))
    with pytest.raises(NotArtinian):
        att(normalize([Zp(2)]))


def test_gamma():
    assert gamma(Z_RING, [2], normalize([Z(), C(2, 2), Pr(3)])) == normalize([C(2, 2)])
    assert gamma(Z_RING, [5], normalize([Zp(5)])) == ZERO
    t = normalize([Pr(2), Pr(3)])
    assert gamma(Z_RING, [2, 3], t) == t
    with pytest.raises(InvalidRing):
        gamma(Z_RING, [], t)
    with pytest.raises(InvalidRing):
        gamma(padic(2), [3], normalize([C(2, 1)]))


def test_localize():
    assert localize([2], normalize([C(2, 1), C(3, 1)])) == normalize([C(2, 1)])
    assert localize([7], normalize([C(2, 1)])) == ZERO
    assert localize([2, 3], normalize([Pr(2), Pr(3), Pr(5)])) == normalize([Pr(2), Pr(3)])
    with pytest.raises(NotTorsion):
        localize([2], normalize([Z()]))


def test_complete():
    assert complete([2], normalize([Z()])) == normalize([Zp(2)])
    assert complete([2], normalize([C(3, 1)])) == ZERO
    assert complete([2, 3], normalize([Z(), Pr(2)])) == normalize([Zp(2), Zp(3), Pr(2)])


def test_length():
    assert length(normalize([C(2, 3), C(3, 1)])) == 4
    assert length(normalize([Pr(2)])).is_infinite
    assert length(ZERO) == 0
    assert ExtNat(0) * ExtNat.INF == 0


def test_annihilator():
    assert annihilator(normalize([C(2, 3), C(2, 1), C(5, 2)])) == 200
    assert annihilator(normalize([Pr(2)])) == 0
    assert annihilator(ZERO) == 1


def test_classify():
    f = classify(Z_RING, normalize([Z(), Pr(2)]))
    assert f.minimax and not f.noetherian and not f.artinian and not f.matlis_reflexive
    f = classify(Z_RING, normalize([C(2, 3)]))
    assert f.noetherian and f.artinian and f.minimax and f.matlis_reflexive
    f = classify(padic(2), normalize([Zp(2), Pr(2)]))
    assert f.minimax and f.matlis_reflexive and not f.noetherian and not f.artinian


def test_truncation_exponent():
    assert truncation_exponent(2, normalize([C(2, 3), Pr(2)])) == 3
    assert truncation_exponent(3, normalize([C(2, 5)])) == 0
    assert truncation_exponent(2, normalize([Pr(2)])) == 0
    with pytest.raises(NotStabilizing):
        truncation_exponent(2, normalize([Z()]))
    with pytest.raises(NotStabilizing):
        truncation_exponent(2, normalize([Zp(2)]))


def test_mod_prime_power_and_socle():
    t = normalize([C(2, 3), C(2, 1), Pr(2)])
    assert mod_prime_power(t, 2, 2) == normalize([C(2, 2), C(2, 1)])
    assert socle_colon(t, 2, 2) == normalize([C(2, 2), C(2, 1), C(2, 2)])
    assert socle_colon(normalize([Z(), C(2, 3)]), 2, 1) == normalize([C(2, 1)])
