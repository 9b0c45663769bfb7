"""Exact linear algebra over F_p.

Hand-computed oracle values are frozen in ORACLES below; property tests
run over random small matrices via hypothesis.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotr.errors import InputError
from cotr.linalg import F2, PrimeField

# Oracle values, row-reduced by hand over F_2:
#   [[1,1],[1,1]] -> R1 := R1, R2 := R2 - R1 -> [[1,1],[0,0]], pivot col 0
#   kernel of [1 1]: x0 + x1 = 0 -> x = (1,1)
#   solve [1 1] x = [1]: free var x1 := 0 -> x = (1,0)
ORACLES = {
    "rref_ones": (np.array([[1, 1], [1, 1]]), np.array([[1, 1], [0, 0]]), [0]),
    "kernel_sum": (np.array([[1, 1]]), np.array([[1], [1]])),
    "solve_sum": (np.array([[1, 1]]), np.array([1]), np.array([1, 0])),
}


def mat(rows):
    return np.array(rows, dtype=np.int64)


class TestRref:
    def test_identity(self):
        r, piv = F2.rref(np.eye(3, dtype=np.int64))
        assert np.array_equal(r, np.eye(3, dtype=np.int64))
        assert piv == [0, 1, 2]

    def test_zero(self):
        r, piv = F2.rref(np.zeros((2, 4), dtype=np.int64))
        assert not r.any()
        assert piv == []

    def test_all_ones_oracle(self):
        a, expected, piv_expected = ORACLES["rref_ones"]
        r, piv = F2.rref(a)
        assert np.array_equal(r, expected)
        assert piv == piv_expected

    def test_idempotent_oracle(self):
        a = ORACLES["rref_ones"][0]
        r1, _ = F2.rref(a)
        r2, _ = F2.rref(r1)
        assert np.array_equal(r1, r2)


class TestKernel:
    def test_injective(self):
        k = F2.kernel_basis(np.eye(2, dtype=np.int64))
        assert k.shape == (2, 0)

    def test_zero_map(self):
        k = F2.kernel_basis(np.zeros((2, 3), dtype=np.int64))
        assert k.shape == (3, 3)
        assert F2.rank(k) == 3

    def test_sum_oracle(self):
        a, expected = ORACLES["kernel_sum"]
        assert np.array_equal(F2.kernel_basis(a), expected)


class TestSolve:
    def test_identity_system(self):
        b = mat([1, 0, 1])
        x = F2.solve(np.eye(3, dtype=np.int64), b)
        assert np.array_equal(x, b)

    def test_sum_oracle(self):
        a, b, expected = ORACLES["solve_sum"]
        assert np.array_equal(F2.solve(a, b), expected)

    def test_inconsistent(self):
        assert F2.solve(mat([[0]]), mat([1])) is None

    def test_multi_rhs(self):
        a = mat([[1, 1], [0, 1]])
        b = mat([[1, 0], [1, 1]])
        x = F2.solve(a, b)
        assert np.array_equal(F2.mul(a, x), b)


class TestField:
    def test_rejects_composite(self):
        with pytest.raises(InputError):
            PrimeField(4)

    def test_rejects_large(self):
        with pytest.raises(InputError):
            PrimeField(2**13 + 1)

    def test_inverse_f7(self):
        f7 = PrimeField(7)
        for a in range(1, 7):
            assert (a * f7.inv_scalar(a)) % 7 == 1

    def test_invert_matrix(self):
        f3 = PrimeField(3)
        a = mat([[1, 2], [0, 1]])
        ainv = f3.invert(a)
        assert np.array_equal(f3.mul(a, ainv), np.eye(2, dtype=np.int64))

    def test_invert_singular(self):
        with pytest.raises(InputError):
            F2.invert(mat([[1, 1], [1, 1]]))


small_matrix = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(0, 1), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_rank_nullity(rows):
    a = mat(rows)
    assert F2.rank(a) + F2.kernel_basis(a).shape[1] == a.shape[1]


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_rref_idempotent(rows):
    a = mat(rows)
    r, piv = F2.rref(a)
    r2, piv2 = F2.rref(r)
    assert np.array_equal(r, r2)
    assert piv == piv2


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_kernel_vectors_annihilate(rows):
    a = mat(rows)
    k = F2.kernel_basis(a)
    assert not F2.mul(a, k).any()


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_solve_exact_when_consistent(rows, xs):
    a = mat(rows)
    x = mat(xs[: a.shape[1]])
    b = F2.mul(a, x)
    got = F2.solve(a, b)
    assert got is not None
    assert np.array_equal(F2.mul(a, got), b)


@settings(max_examples=40, deadline=None)
@given(small_matrix, small_matrix)
def test_kron_multiplicative(rows1, rows2):
    a, b = mat(rows1), mat(rows2)
    c = np.random.RandomState(0).randint(0, 2, size=(a.shape[1], 3))
    d = np.random.RandomState(1).randint(0, 2, size=(b.shape[1], 2))
    lhs = F2.mul(F2.kron(a, b), F2.kron(c, d))
    rhs = F2.kron(F2.mul(a, c), F2.mul(b, d))
    assert np.array_equal(lhs, rhs)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_image_plus_kernel_dims(rows):
    a = mat(rows)
    img = F2.image_basis(a)
    assert img.shape[1] == F2.rank(a)
    assert F2.rank(np.hstack([a, img])) == F2.rank(a)
