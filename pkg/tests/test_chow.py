"""Truncated Chow rings of products of projective spaces."""

import pytest
from hypothesis import given, strategies as st

from milnorcalc.chow import (
    AmbientSpace,
    ChowClass,
    divisor_class,
    divisor_gysin,
    factor_tangent_class,
    forget_factor,
    hyperplane,
    insert_factor,
    line_bundle_class,
    self_intersection_check,
    tangent_class,
    unit_inverse,
)

P2 = AmbientSpace((2,))
P3 = AmbientSpace((3,))
P2xP1 = AmbientSpace((2, 1))


def cls(ambient, coefficients):
    return ChowClass(ambient, coefficients)


def naive_product(a, b):
    # Independent multiplication oracle: plain convolution of exponent
    # maps with explicit truncation at the factor dimensions.
    out = {}
    for e1, c1 in a.coefficients.items():
        for e2, c2 in b.coefficients.items():
            e = tuple(i + j for i, j in zip(e1, e2))
            if all(i <= n for i, n in zip(e, a.ambient.factors)):
                out[e] = out.get(e, 0) + c1 * c2
    return ChowClass(a.ambient, out)


class TestAmbient:
    def test_dim_and_top(self):
        assert P2xP1.dim == 3
        assert P2xP1.top == (2, 1)

    def test_letters(self):
        assert P2.letters() == ("H",)
        assert P2xP1.letters() == ("H", "K")
        assert AmbientSpace((1, 1, 1)).letters() == ("H1", "H2", "H3")

    def test_extended(self):
        assert P2.extended(1) == P2xP1

    def test_box_size(self):
        assert len(list(P2xP1.box())) == 6

    def test_zero_dimensional_factor_allowed(self):
        point = AmbientSpace((0,))
        assert tangent_class(point) == ChowClass.unit(point)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            AmbientSpace(())
        with pytest.raises(ValueError):
            AmbientSpace((2, -1))


class TestChowClass:
    def test_truncation_on_construction(self):
        assert cls(P2, {(5,): 3}).is_zero()

    def test_zero_coefficients_dropped(self):
        assert cls(P2, {(1,): 0}).coefficients == {}

    def test_bool_coefficient_rejected(self):
        with pytest.raises(TypeError):
            cls(P2, {(1,): True})

    def test_wrong_exponent_length(self):
        with pytest.raises(ValueError):
            cls(P2, {(1, 1): 1})

    def test_product_truncates(self):
        h = hyperplane(P2)
        assert (h * h * h).is_zero()
        assert h * h == cls(P2, {(2,): 1})

    def test_binomial_power(self):
        one = ChowClass.unit(P2)
        h = hyperplane(P2)
        assert (one + h) ** 3 == cls(P2, {(0,): 1, (1,): 3, (2,): 3})

    def test_scalar_and_sub(self):
        h = hyperplane(P2)
        assert 2 * h - h == h
        assert h - h == ChowClass.zero(P2)

    def test_degree_reads_top_cell(self):
        x = cls(P2xP1, {(2, 1): 7, (1, 0): 5})
        assert x.degree() == 7
        assert ChowClass.zero(P2).degree() == 0

    def test_graded_piece(self):
        x = cls(P2xP1, {(2, 1): 7, (1, 0): 5, (0, 1): 2})
        assert x.graded_piece(1) == cls(P2xP1, {(1, 0): 5, (0, 1): 2})

    def test_point_class(self):
        assert ChowClass.point(P2xP1) == cls(P2xP1, {(2, 1): 1})

    def test_str_single_factor(self):
        assert str(cls(P2, {(1,): 3, (2,): 1})) == "3H + H^2"
        assert str(cls(P2, {(2,): -1})) == "-H^2"
        assert str(ChowClass.zero(P2)) == "0"
        assert str(ChowClass.unit(P2)) == "1"

    def test_str_two_factors(self):
        x = cls(P2xP1, {(2, 1): -2, (1, 0): 1})
        assert str(x) == "H - 2H^2K"


class TestStandardClasses:
    def test_tangent_class_p2(self):
        assert tangent_class(P2) == cls(P2, {(0,): 1, (1,): 3, (2,): 3})

    def test_tangent_class_product(self):
        expected = (ChowClass.unit(P2xP1) + hyperplane(P2xP1, 0)) ** 3 * (
            ChowClass.unit(P2xP1) + hyperplane(P2xP1, 1)
        ) ** 2
        assert tangent_class(P2xP1) == expected

    def test_factor_tangent(self):
        assert factor_tangent_class(P2xP1, 1) == cls(P2xP1, {(0, 0): 1, (0, 1): 2})

    def test_divisor_class(self):
        assert divisor_class(P2xP1, (3, 2)) == cls(P2xP1, {(1, 0): 3, (0, 1): 2})
        with pytest.raises(ValueError):
            divisor_class(P2xP1, (3,))

    def test_line_bundle_class(self):
        assert line_bundle_class(P2, (2,)) == cls(P2, {(0,): 1, (1,): 2})


class TestUnitInverse:
    def test_geometric_series(self):
        u = line_bundle_class(P3, (2,))
        assert unit_inverse(u) == cls(P3, {(0,): 1, (1,): -2, (2,): 4, (3,): -8})

    def test_round_trip(self):
        u = tangent_class(P2xP1)
        assert u * unit_inverse(u) == ChowClass.unit(P2xP1)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError, match="constant coefficient must be 1"):
            unit_inverse(hyperplane(P2))
        with pytest.raises(ValueError, match="constant coefficient must be 1"):
            unit_inverse(2 * ChowClass.unit(P2))


class TestFactorMaps:
    def test_insert_factor(self):
        x = cls(P2, {(2,): 5, (0,): 1})
        lifted = insert_factor(x, 1, 1)
        assert lifted == cls(P2xP1, {(2, 0): 5, (0, 0): 1})

    def test_insert_at_front(self):
        x = cls(AmbientSpace((1,)), {(1,): 4})
        lifted = insert_factor(x, 2, 0)
        assert lifted == cls(AmbientSpace((2, 1)), {(0, 1): 4})

    def test_forget_factor_keeps_full_fiber_power(self):
        x = cls(P2xP1, {(1, 1): 3, (2, 0): 9})
        assert forget_factor(x, 1) == cls(P2, {(1,): 3})

    def test_forget_last_factor_rejected(self):
        with pytest.raises(ValueError):
            forget_factor(hyperplane(P2), 0)

    def test_push_pull_section(self):
        # Forgetting after inserting and multiplying by the fiber point
        # class recovers the original: the section has degree one.
        x = cls(P2, {(1,): 2, (2,): -1})
        fiber_point = cls(P2xP1, {(0, 1): 1})
        assert forget_factor(insert_factor(x, 1, 1) * fiber_point, 1) == x

    def test_pushforward_of_unit(self):
        # P^2 x P^1 -> P^2 has one-dimensional fibers: the unit pushes
        # to zero in the dimension count, not to the unit.
        assert forget_factor(ChowClass.unit(P2xP1), 1).is_zero()


class TestGysin:
    def test_divisor_gysin_is_multiplication(self):
        x = cls(P2, {(0,): 1, (1,): 4})
        assert divisor_gysin(x, (3,)) == divisor_class(P2, (3,)) * x

    def test_self_intersection_sweep(self):
        assert self_intersection_check(P2, (3,))
        assert self_intersection_check(P2xP1, (2, 1))


ambients = st.sampled_from([P2, P3, P2xP1])


@st.composite
def chow_classes(draw, ambient=None):
    if ambient is None:
        ambient = draw(ambients)
    box = list(ambient.box())
    coefficients = draw(
        st.dictionaries(st.sampled_from(box), st.integers(-50, 50), max_size=5)
    )
    return ChowClass(ambient, coefficients)


@given(chow_classes(ambient=P2xP1), chow_classes(ambient=P2xP1))
def test_product_matches_naive_oracle(a, b):
    assert a * b == naive_product(a, b)


@given(chow_classes(ambient=P3), chow_classes(ambient=P3), chow_classes(ambient=P3))
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == ChowClass.zero(P3)
    assert a * ChowClass.unit(P3) == a


@given(chow_classes(ambient=P2xP1))
def test_unit_inverse_round_trip(x):
    u = ChowClass.unit(P2xP1) + x.graded_piece(1) + x.graded_piece(2)
    assert u * unit_inverse(u) == ChowClass.unit(P2xP1)


@given(chow_classes(ambient=P2), chow_classes(ambient=P2xP1))
def test_projection_formula(x, y):
    # forget(insert(x) * y) = x * forget(y) for the projection to P^2.
    lhs = forget_factor(insert_factor(x, 1, 1) * y, 1)
    rhs = x * forget_factor(y, 1)
    assert lhs == rhs
