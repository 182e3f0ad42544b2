"""Integer arithmetic and matrix kernel/normal-form tests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmx.errors import NotPrime, ZeroInput
from mmx.intmath import (
    IntMatrix,
    column_hnf,
    factorize,
    is_prime,
    kernel_basis,
    kron,
    smith_normal_form,
    snf_diagonal,
    solve,
    valuation,
)


def test_factorize():
    assert [(pp.p, pp.e) for pp in factorize(12)] == [(2, 2), (3, 1)]
    assert factorize(1) == ()
    assert [(pp.p, pp.e) for pp in factorize(-8)] == [(2, 3)]
    with pytest.raises(ZeroInput):
        factorize(0)


def test_valuation():
    assert valuation(2, 40) == 3
    assert valuation(3, 40) == 0
    assert valuation(5, -25) == 2
    with pytest.raises(ZeroInput):
        valuation(2, 0)
    with pytest.raises(NotPrime):
        valuation(4, 8)


def test_is_prime_small():
    primes = [p for p in range(2, 60) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-3)


def test_snf_diagonal_examples():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    assert snf_diagonal(a) == [2, 4]
    assert snf_diagonal(IntMatrix.identity(3)) == [1, 1, 1]
    assert snf_diagonal(IntMatrix.from_rows([[0]])) == [0]


def test_snf_full_transforms():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    d, u, v = smith_normal_form(a)
    assert d.diagonal() == [2, 4]
    # U*A*V == D
    import mmx.intmath as im

    prod = im.mat_mul(im.mat_mul(u.to_rows(), a.to_rows()), v.to_rows())
    assert prod == d.to_rows()


def _mat_vec(a: IntMatrix, v: list) -> list:
    return [
        sum(a.at(i, j) * v[j] for j in range(a.cols)) for i in range(a.rows)
    ]


def test_kernel_basis_annihilates():
    a = IntMatrix.from_rows([[2, 4, 6], [1, 2, 3]])
    k = kernel_basis(a)
    assert k.cols == 2
    for col in k.to_cols():
        assert _mat_vec(a, col) == [0, 0]


def test_kernel_of_injective_is_empty():
    a = IntMatrix.from_rows([[1, 0], [0, 2], [3, 5]])
    assert kernel_basis(a).cols == 0


def test_column_hnf_preserves_column_lattice():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    h = column_hnf(a)
    # every original column solves against h and vice versa
    assert solve(h, a) is not None
    back = solve(a, h)
    assert back is not None
    assert snf_diagonal(h) == snf_diagonal(a)


def test_solve():
    a = IntMatrix.from_rows([[2, 0], [0, 3]])
    b = IntMatrix.from_rows([[4], [9]])
    x = solve(a, b)
    assert x.to_cols() == [[2, 3]]
    assert solve(a, IntMatrix.from_rows([[1], [0]])) is None


def test_kron_shape():
    a = IntMatrix.from_rows([[1, 2]])
    b = IntMatrix.from_rows([[3], [4]])
    k = kron(a, b)
    assert (k.rows, k.cols) == (2, 2)
    assert k.to_rows() == [[3, 6], [4, 8]]


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=2,
        max_size=4,
    )
)
def test_kernel_basis_property(rows):
    a = IntMatrix.from_rows(rows)
    k = kernel_basis(a)
    for col in k.to_cols():
        assert all(x == 0 for x in _mat_vec(a, col))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=2),
        min_size=2,
        max_size=3,
    )
)
def test_snf_divisibility_chain(rows):
    diag = snf_diagonal(IntMatrix.from_rows(rows))
    nonzero = [d for d in diag if d]
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0
    assert all(d >= 0 for d in diag)
