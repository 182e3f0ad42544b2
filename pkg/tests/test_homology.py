"""Functor tables, alternative paths, Bass/Betti and certificates."""

import pytest

from mmx.errors import InvalidIndex, NotRepresentable
from mmx.homology import (
    GENERIC,
    ass_of_hom,
    bass,
    betti,
    ext,
    ext_dual_swap,
    ext_via_completion,
    ext_via_general_dual,
    hom,
    hom_theoremC,
    hom_vanishing,
    tensor,
    tensor_length_bound,
    tensor_truncated,
    theoremC_annihilator_bound,
    theta_check,
    tor,
    vanishing_tensor,
)
from mmx.modules import C, Pr, Z, ZERO, Z_RING, Zp, cyclic, direct_sum, normalize, padic


def test_hom_table():
    assert hom(Z_RING, normalize([Pr(2), C(2, 2)]), normalize([Z(), C(2, 3)])).module == normalize([C(2, 2)])
    assert hom(Z_RING, normalize([Z()]), normalize([Pr(3)])).module == normalize([Pr(3)])
    r = hom(Z_RING, normalize([Pr(2)]), normalize([Pr(2)]))
    assert r.module == normalize([Zp(2)])
    assert r.ring.to_json() == {"product": [2]}
    assert hom(Z_RING, normalize([Pr(2)]), normalize([Z()])).module == ZERO
    assert hom(Z_RING, normalize([C(2, 1)]), normalize([Zp(2)])).module == ZERO


def test_hom_adic_source():
    assert hom(Z_RING, normalize([Zp(2)]), normalize([C(2, 3)])).module == normalize([C(2, 3)])
    assert hom(Z_RING, normalize([Zp(2)]), normalize([C(3, 1)])).module == ZERO
    assert hom(Z_RING, normalize([Zp(2)]), normalize([Z()])).module == ZERO
    assert hom(padic(2), normalize([Zp(2)]), normalize([Pr(2)])).module == normalize([Pr(2)])
    with pytest.raises(NotRepresentable):
        hom(Z_RING, normalize([Zp(2)]), normalize([Pr(2)]))


def test_tensor_table():
    assert tensor(Z_RING, cyclic(12), cyclic(18)).module == normalize([C(2, 1), C(3, 1)])
    assert tensor(Z_RING, normalize([Pr(2)]), normalize([Pr(2)])).module == ZERO
    assert tensor(Z_RING, normalize([Zp(2)]), normalize([C(2, 2), C(3, 1)])).module == normalize([C(2, 2)])
    assert tensor(Z_RING, normalize([Zp(2)]), normalize([Z()])).module == normalize([Zp(2)])
    assert tensor(padic(2), normalize([Zp(2)]), normalize([Zp(2)])).module == normalize([Zp(2)])
    with pytest.raises(NotRepresentable):
        tensor(Z_RING, normalize([Zp(2)]), normalize([Zp(2)]))


def test_ext_table():
    assert ext(1, Z_RING, normalize([Pr(2)]), normalize([C(2, 3)])).module == normalize([C(2, 3)])
    assert ext(1, Z_RING, normalize([C(2, 3)]), normalize([Z()])).module == normalize([C(2, 3)])
    assert ext(1, Z_RING, normalize([Pr(2)]), normalize([Z()])).module == normalize([Zp(2)])
    assert ext(1, Z_RING, normalize([Z()]), normalize([C(5, 1)])).module == ZERO
    assert ext(1, Z_RING, normalize([C(2, 2)]), normalize([Pr(2)])).module == ZERO
    assert ext(2, Z_RING, normalize([C(2, 2)]), normalize([C(2, 2)])).module == ZERO
    with pytest.raises(InvalidIndex):
        ext(-1, Z_RING, ZERO, ZERO)


def test_tor_table():
    assert tor(1, Z_RING, normalize([Pr(3)]), normalize([Pr(3), C(3, 1)])).module == normalize([Pr(3), C(3, 1)])
    assert tor(1, Z_RING, cyclic(4), cyclic(6)).module == normalize([C(2, 1)])
    assert tor(1, Z_RING, normalize([Zp(2)]), normalize([C(2, 3)])).module == ZERO
    assert tor(2, Z_RING, normalize([Pr(2)]), normalize([Pr(2)])).module == ZERO


def test_hom_theoremC():
    got = hom_theoremC(normalize([Pr(2), C(2, 2)]), normalize([Z(), C(2, 3)]))
    assert got.module == normalize([C(2, 2)])
    assert got.path == "theoremC"
    assert hom_theoremC(normalize([Pr(2)]), normalize([Z()])).module == ZERO
    assert hom_theoremC(normalize([C(3, 1)]), normalize([C(3, 1)])).module == normalize([C(3, 1)])
    bound = theoremC_annihilator_bound(normalize([Pr(2), C(2, 2)]), normalize([Z(), C(2, 3)]))
    assert bound == 4


def test_tensor_truncated():
    t = normalize([Pr(2), C(2, 1)])
    assert tensor_truncated(t, normalize([C(2, 2)])).module == normalize([C(2, 1)])
    assert tensor_truncated(normalize([Pr(2)]), normalize([Pr(2)])).module == ZERO
    assert tensor_truncated(normalize([C(2, 1)]), normalize([C(3, 1)])).module == ZERO


def test_ext_via_completion():
    assert ext_via_completion(1, normalize([Pr(2)]), normalize([Z()])).module == normalize([Zp(2)])
    assert ext_via_completion(0, normalize([C(2, 1), C(3, 1)]), normalize([C(2, 2)])).module == normalize([C(2, 1)])
    assert ext_via_completion(1, normalize([C(5, 2)]), normalize([Z()])).module == normalize([C(5, 2)])


def test_ext_dual_swap():
    assert ext_dual_swap(0, normalize([Pr(2)]), normalize([Pr(2)])).module == normalize([Zp(2)])
    assert ext_dual_swap(1, normalize([Pr(2)]), normalize([C(2, 3)])).module == normalize([C(2, 3)])
    assert ext_dual_swap(1, normalize([C(2, 2)]), normalize([C(2, 3)])).module == normalize([C(2, 2)])


def test_ext_via_general_dual():
    assert ext_via_general_dual(1, normalize([Pr(2)]), normalize([Z()])).module == normalize([Zp(2)])
    assert ext_via_general_dual(0, normalize([C(2, 1)]), normalize([Z(), C(2, 2)])).module == normalize([C(2, 1)])
    assert ext_via_general_dual(1, normalize([C(2, 2)]), normalize([Pr(2)])).module == ZERO


def test_theta_check():
    assert theta_check(1, normalize([Pr(2)]), normalize([C(2, 2)])) is True
    assert theta_check(0, normalize([C(2, 1)]), normalize([C(2, 3)])) is True
    assert theta_check(1, normalize([Z()]), normalize([Z()])) is True
    assert theta_check(1, normalize([Z()]), normalize([C(3, 2), Pr(5)])) is True


def test_bass_betti():
    assert bass(0, 2, normalize([Pr(2)])) == 1
    assert bass(1, 2, normalize([Z()])) == 1
    assert betti(0, 3, normalize([C(3, 2), C(3, 1)])) == 2
    assert bass(0, GENERIC, normalize([Z(), Z(), Zp(5)])) == 3
    assert betti(0, GENERIC, normalize([C(2, 1)])) == 0
    with pytest.raises(InvalidIndex):
        bass(1, GENERIC, normalize([Z()]))


def test_tensor_length_bound():
    r = tensor_length_bound(normalize([Pr(2), C(2, 1)]), normalize([C(2, 2)]))
    assert r.holds and r.lhs == 1 and r.bound == 1
    r = tensor_length_bound(normalize([Pr(2)]), normalize([Pr(2)]))
    assert r.holds and r.lhs == 0
    r = tensor_length_bound(normalize([C(2, 2), C(2, 2)]), normalize([C(2, 3)]))
    assert r.holds and r.lhs == 4 and r.chain[0] == 4


def test_vanishing_tensor():
    r = vanishing_tensor(normalize([Pr(2)]), normalize([C(2, 5), Pr(2)]))
    assert r.vanishes and r.certificate == {2: "T=mT"}
    assert not vanishing_tensor(normalize([C(2, 1)]), normalize([C(2, 1)])).vanishes
    assert vanishing_tensor(normalize([C(2, 1)]), normalize([C(3, 1)])).vanishes


def test_hom_vanishing():
    assert hom_vanishing(normalize([Pr(2)]), normalize([C(2, 3)])).vanishes
    assert not hom_vanishing(normalize([C(2, 1)]), normalize([Pr(2)])).vanishes
    r = hom_vanishing(normalize([C(2, 1)]), normalize([Z()]))
    assert r.vanishes
    assert r.to_json() == {
        "vanishes": True,
        "which_equivalents_checked": ["att_supp", "direct"],
    }


def test_ass_of_hom():
    s = ass_of_hom(normalize([Pr(2), C(2, 2)]), normalize([C(2, 3)]))
    assert s.maximals == {2} and not s.generic
    assert ass_of_hom(normalize([Pr(2)]), normalize([C(2, 3)])).is_empty
    s = ass_of_hom(normalize([C(3, 1)]), normalize([Z(), C(3, 1)]))
    assert s.maximals == {3}


def test_result_ring_markers():
    r = ext(1, Z_RING, normalize([Pr(2), Pr(3)]), normalize([Z()]))
    assert r.module == normalize([Zp(2), Zp(3)])
    assert r.ring.to_json() == {"product": [2, 3]}
    r = ext(1, padic(2), normalize([C(2, 1)]), normalize([Zp(2)]))
    assert r.ring.to_json() == {"padic": 2}


def test_disjoint_supports_vanish():
    a = normalize([C(2, 3), Pr(2)])
    b = normalize([C(3, 1), Pr(5)])
    for r in (
        hom(Z_RING, a, b),
        tensor(Z_RING, a, b),
        ext(1, Z_RING, a, b),
        tor(1, Z_RING, a, b),
    ):
        assert r.module == ZERO
