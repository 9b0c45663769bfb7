import numpy as np
import pytest

from cotr.algebra import (
    Arrow,
    Quiver,
    Relation,
    enveloping,
    path_algebra_quotient,
    radical,
    trivial_algebra,
)
from cotr.errors import InputError, NotFiniteDimensional, UnsupportedPresentation
from cotr.linalg import F2


def a2_algebra():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    return path_algebra_quotient(F2, q, (), length_bound=4, name="a2")


def dual_numbers():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    rel = Relation(((1, ("x", "x")),))
    return path_algebra_quotient(F2, q, (rel,), length_bound=4, name="dual")


def ex28_algebra():
    q = Quiver(
        ("1", "2", "3", "4", "5"),
        (
            Arrow("a", "1", "2"),
            Arrow("b", "2", "1"),
            Arrow("c", "3", "2"),
            Arrow("d", "4", "3"),
            Arrow("e", "4", "5"),
            Arrow("f", "5", "4"),
        ),
    )
    # square of the arrow ideal vanishes: one monomial relation per
    # composable pair, written in traversal order
    pairs = [("a", "b"), ("b", "a"), ("c", "b"), ("d", "c"), ("e", "f"), ("f", "d"), ("f", "e")]
    rels = tuple(Relation(((1, p),)) for p in pairs)
    return path_algebra_quotient(F2, q, rels, length_bound=4, name="ex28")


class TestA2:
    def test_dimension_and_labels(self):
        a = a2_algebra()
        assert a.dim == 3
        assert a.basis_labels == ("e_1", "e_2", "a")

    def test_products(self):
        a = a2_algebra()
        e1, e2, arr = (a.basis_vector(i) for i in range(3))
        # arrow composed with its source idempotent
        assert np.array_equal(a.multiply(arr, e1), arr)
        assert np.array_equal(a.multiply(e2, arr), arr)
        # wrong-side idempotents annihilate
        assert not a.multiply(arr, e2).any()
        assert not a.multiply(e1, arr).any()
        assert not a.multiply(arr, arr).any()

    def test_idempotents(self):
        a = a2_algebra()
        total = np.zeros(a.dim, dtype=np.int64)
        for u in a.idempotent_vectors:
            assert np.array_equal(a.multiply(u, u), u)
            total = (total + u) % 2
        assert np.array_equal(total, a.unit)
        for u in a.idempotent_vectors:
            for v in a.idempotent_vectors:
                if u is not v:
                    assert not a.multiply(u, v).any()

    def test_radical(self):
        a = a2_algebra()
        rad = radical(a)
        assert len(rad) == 1
        assert np.array_equal(rad[0], a.basis_vector(2))


class TestDualNumbers:
    def test_dimension(self):
        a = dual_numbers()
        assert a.dim == 2
        assert a.basis_labels == ("e_1", "x")

    def test_square_zero(self):
        a = dual_numbers()
        x = a.basis_vector(1)
        assert not a.multiply(x, x).any()

    def test_commutative(self):
        a = dual_numbers()
        assert np.array_equal(a.structure, np.transpose(a.structure, (1, 0, 2)))

    def test_opposite_is_identical(self):
        a = dual_numbers()
        assert np.array_equal(a.opposite().structure, a.structure)


class TestEx28:
    def test_dimension(self):
        a = ex28_algebra()
        assert a.dim == 11

    def test_radical_square_zero(self):
        a = ex28_algebra()
        for r in radical(a):
            for s in radical(a):
                assert not a.multiply(r, s).any()

    def test_arrow_products_through_vertex(self):
        a = ex28_algebra()
        labels = a.basis_labels
        d_idx, c_idx = labels.index("d"), labels.index("c")
        # c.d would be the traversal d-then-c, killed by the relation
        assert not a.multiply(a.basis_vector(c_idx), a.basis_vector(d_idx)).any()


class TestErrorsAndClosure:
    def test_free_loop_not_finite_dimensional(self):
        q = Quiver(("1",), (Arrow("x", "1", "1"),))
        with pytest.raises(NotFiniteDimensional):
            path_algebra_quotient(F2, q, (), length_bound=4)

    def test_mixed_length_relation_rejected(self):
        q = Quiver(("1",), (Arrow("x", "1", "1"),))
        rel = Relation(((1, ("x", "x")), (1, ("x", "x", "x"))))
        with pytest.raises(UnsupportedPresentation):
            path_algebra_quotient(F2, q, (rel,), length_bound=6)

    def test_relation_with_short_path_rejected(self):
        q = Quiver(("1",), (Arrow("x", "1", "1"),))
        rel = Relation(((1, ("x",)),))
        with pytest.raises(InputError):
            path_algebra_quotient(F2, q, (rel,), length_bound=4)

    def test_cube_zero_closure(self):
        # x^3 = 0 leaves 1, x, x^2
        q = Quiver(("1",), (Arrow("x", "1", "1"),))
        rel = Relation(((1, ("x", "x", "x")),))
        a = path_algebra_quotient(F2, q, (rel,), length_bound=5)
        assert a.dim == 3
        x = a.basis_vector(1)
        x2 = a.multiply(x, x)
        assert x2.any()
        assert not a.multiply(x, x2).any()


class TestOpposite:
    def test_a2_opposite_products(self):
        a = a2_algebra()
        op = a.opposite()
        e1, e2, arr = (op.basis_vector(i) for i in range(3))
        # in the opposite algebra the arrow now leaves vertex 2
        assert np.array_equal(op.multiply(arr, e2), arr)
        assert np.array_equal(op.multiply(e1, arr), arr)
        assert not op.multiply(arr, e1).any()

    def test_involution_is_cached(self):
        a = a2_algebra()
        assert a.opposite().opposite() is a

    def test_presentation_reversed(self):
        a = a2_algebra()
        pres = a.opposite().presentation
        assert pres is not None
        arrow = pres.quiver.arrow("a")
        assert (arrow.source, arrow.target) == ("2", "1")


class TestEnveloping:
    def test_dimension(self):
        a = a2_algebra()
        env = enveloping(a, a)
        assert env.dim == 9

    def test_unit(self):
        a = a2_algebra()
        env = enveloping(a, a)
        assert np.array_equal(env.unit, np.kron(a.unit, a.unit))

    def test_product_rule(self):
        # (r (x) s)(r' (x) s') = rr' (x) s's  in R (x) S^op
        a = a2_algebra()
        env = enveloping(a, a)
        arr = a.basis_vector(2)
        e1 = a.basis_vector(0)
        e2 = a.basis_vector(1)
        lhs = env.multiply(np.kron(arr, e2), np.kron(e1, arr))
        rhs = np.kron(a.multiply(arr, e1), a.multiply(arr, e2))
        assert np.array_equal(lhs, rhs % 2)


def test_trivial_algebra():
    k = trivial_algebra(F2)
    assert k.dim == 1
    assert np.array_equal(k.unit, np.array([1]))
