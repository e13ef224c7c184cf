"""The exact series engine, checked against independent computations:
binomial expansion for the square root, monomial identities for the
slice and divided-difference operators, long division for rational
expansions."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from permclass.series import (
    ConvergenceError,
    DegreeBoundError,
    MultiSeries,
    RealPolynomial,
    RemainderError,
    ValuationError,
    assert_catalytic_bound,
    catalytic_derivative,
    catalytic_eval,
    divided_difference,
    fixed_point_solve,
    newton_algebraic,
    rational_series,
    real_roots,
    shift_div,
    slice_quotient,
    solve_linear,
    sqrt_series,
    substitute_var,
    variable,
)


def z_(order=10):
    return variable("z", order)


def u_(order=10):
    return variable("u", order)


# ---------------------------------------------------------------------------
# arithmetic

class TestArithmetic:
    def test_sub_constant(self):
        s = 1 - 4 * z_()
        assert s.scalar_coefficient(0) == 1
        assert s.scalar_coefficient(1) == -4

    def test_mul_identity(self):
        f = rational_series(z_(), 1 - z_() * u_())
        assert f * 1 == f
        assert f * MultiSeries.constant(1, 10) == f

    def test_equality_uses_min_order(self):
        a = (1 + z_(10))
        b = (1 + z_(5))
        assert a == b

    def test_pow(self):
        z = z_()
        assert z ** 3 == z * z * z
        assert (1 + z) ** 0 == 1

    def test_immutability(self):
        z = z_()
        with pytest.raises(AttributeError):
            z.order = 3


small_polys = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-4, 4)),
    min_size=0, max_size=6,
)


def _series_from(triples, order=8):
    z = variable("z", order)
    u = variable("u", order)
    acc = MultiSeries.zero(order, ("u",))
    for zd, ud, c in triples:
        acc = acc + c * z ** zd * u ** ud
    return acc


class TestRingAxioms:
    @given(small_polys, small_polys, small_polys)
    @settings(max_examples=60, deadline=None)
    def test_associativity_and_distributivity(self, ta, tb, tc):
        a, b, c = _series_from(ta), _series_from(tb), _series_from(tc)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)

    @given(small_polys, small_polys)
    @settings(max_examples=60, deadline=None)
    def test_commutativity(self, ta, tb):
        a, b = _series_from(ta), _series_from(tb)
        assert a * b == b * a
        assert a + b == b + a


# ---------------------------------------------------------------------------
# rational expansion

class TestRationalSeries:
    def test_fan_series(self):
        f = rational_series(z_(), 1 - z_() * u_())
        for n in range(1, 8):
            assert f.coefficient(n) == {(n - 1,): Fraction(1)}
        assert f.coefficient(0) == {}

    def test_u_tree_series_by_long_division(self):
        # z(1-z)/(1-2z): long division gives 1, 1, 2, 4, 8, ... at z^1..
        z = z_()
        f = rational_series(z * (1 - z), 1 - 2 * z)
        expected = [1, 1] + [2 ** (n - 2) for n in range(3, 11)]
        assert f.integer_coefficients(1, 10) == expected

    def test_trivial(self):
        one = MultiSeries.constant(1, 6)
        assert rational_series(one, one) == 1

    def test_valuation_shift(self):
        z = z_()
        f = rational_series(z ** 2, z - z ** 2)  # = z/(1-z)
        assert f.integer_coefficients(1, 5) == [1, 1, 1, 1, 1]

    def test_zero_denominator(self):
        with pytest.raises(ValuationError):
            rational_series(z_(), MultiSeries.zero(10))


class TestSqrt:
    def test_against_binomial_expansion(self):
        # independent oracle: (1-4z)^(1/2) has z^n coefficient C(1/2, n)(-4)^n
        s = sqrt_series(1 - 4 * z_(12))
        for n in range(13):
            binom = Fraction(1)
            for k in range(n):
                binom *= (Fraction(1, 2) - k) / (k + 1)
            assert s.coefficient(n).get((), Fraction(0)) == binom * (-4) ** n

    def test_sqrt_of_one(self):
        assert sqrt_series(MultiSeries.constant(1, 8)) == 1

    def test_catalan_from_sqrt(self):
        s = sqrt_series(1 - 4 * z_(12))
        cat = shift_div(1 - s, 1) * Fraction(1, 2) - 1
        assert cat.integer_coefficients(1, 4) == [1, 2, 5, 14]

    def test_square_round_trip(self):
        s = sqrt_series(1 - 4 * z_(12))
        assert s * s == 1 - 4 * z_(12)

    @given(st.lists(st.integers(-3, 3), min_size=0, max_size=8))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_random_units(self, tail):
        order = 12
        z = variable("z", order)
        f = MultiSeries.constant(1, order)
        for k, c in enumerate(tail, start=1):
            f = f + c * z ** k
        g = sqrt_series(f)
        assert g * g == f
        assert g.scalar_coefficient(0) == 1

    def test_requires_unit_constant_term(self):
        with pytest.raises(Exception):
            sqrt_series(2 + z_())


class TestShiftDiv:
    def test_simple(self):
        z = z_()
        assert shift_div(z ** 3 + z ** 4, 3) == 1 + variable("z", 7)

    def test_valuation_violation(self):
        with pytest.raises(ValuationError):
            shift_div(z_(), 2)


class TestCatalyticEval:
    def test_drop_at_zero(self):
        z, u = z_(), u_()
        f = z + z * z * u
        assert catalytic_eval(f, "u", 0) == z

    def test_unknown_variable(self):
        with pytest.raises(Exception):
            catalytic_eval(z_(), "v", 1)

    def test_derivative(self):
        z, u = z_(), u_()
        d = catalytic_derivative(z ** 2 * u ** 2, "u")
        assert d == 2 * z ** 2 * u

    def test_derivative_of_u_free_series(self):
        assert catalytic_derivative(z_(), "u").is_zero()


class TestSliceQuotient:
    def test_weighted_geometric(self):
        f = u_() ** 2
        g = slice_quotient(f, "u", weighted=True)
        assert g.coefficient(0) == {(0,): 1, (1,): 1, (2,): 1}

    def test_plain_of_constant(self):
        g = slice_quotient(MultiSeries.constant(1, 5), "u", weighted=False)
        assert g.is_zero()

    def test_plain_geometric(self):
        g = slice_quotient(u_() ** 3, "u", weighted=False)
        assert g.coefficient(0) == {(0,): 1, (1,): 1, (2,): 1}

    @given(small_polys)
    @settings(max_examples=50, deadline=None)
    def test_linearity_and_monomial_identity(self, triples):
        # (f(1) - f(u))/(1-u) of u^a is 1 + u + ... + u^(a-1); check termwise
        f = _series_from(triples)
        g = slice_quotient(f, "u", weighted=False)
        order = f.order
        z = variable("z", order)
        u = variable("u", order)
        acc = MultiSeries.zero(order, ("u",))
        for n in range(order + 1):
            for mono, c in f.coefficient(n).items():
                a = mono[0]
                geom = MultiSeries.zero(order, ("u",))
                for e in range(a):
                    geom = geom + u ** e
                acc = acc + c * z ** n * geom
        assert g == acc


class TestDividedDifference:
    @given(small_polys)
    @settings(max_examples=50, deadline=None)
    def test_monomial_expansion(self, triples):
        # (v^a - u^a)/(v - u) = sum_{i+j=a-1} u^i v^j, applied termwise
        f = _series_from(triples)
        g = divided_difference(f, "u", "v")
        order = f.order
        z = variable("z", order)
        u = variable("u", order)
        v = variable("v", order)
        acc = MultiSeries.zero(order, ("u", "v"))
        for n in range(order + 1):
            for mono, c in f.coefficient(n).items():
                a = mono[0]
                for i in range(a):
                    acc = acc + c * z ** n * u ** i * v ** (a - 1 - i)
        assert g == acc

    def test_simple_cases(self):
        u = u_()
        assert divided_difference(u, "u", "v").coefficient(0) == {(0, 0): 1}
        dd = divided_difference(u ** 2, "u", "v")
        assert dd.coefficient(0) == {(1, 0): 1, (0, 1): 1}

    def test_substitute_merges_exponents(self):
        u, v = u_(), variable("v", 10)
        f = u * v
        g = substitute_var(f, "u", "v")
        assert g == v * v


class TestFixedPoint:
    def test_catalan(self):
        z = z_()
        c = fixed_point_solve(lambda f: 1 + z * f * f, MultiSeries.zero(10))
        assert c.integer_coefficients(0, 5) == [1, 1, 2, 5, 14, 42]

    def test_idempotent(self):
        z = z_()
        phi = lambda f: 1 + z * f * f
        c = fixed_point_solve(phi, MultiSeries.zero(10))
        assert phi(c) == c

    def test_non_contraction_detected(self):
        with pytest.raises(ConvergenceError):
            fixed_point_solve(lambda f: f + 1, MultiSeries.zero(6))


class TestNewton:
    def test_square_root_agreement(self):
        z = z_(12)
        direct = sqrt_series(1 - 4 * z)
        viaNewton = newton_algebraic([-(1 - 4 * z), MultiSeries.zero(12), MultiSeries.constant(1, 12)],
                                     MultiSeries.constant(1, 12))
        assert viaNewton == direct

    def test_linear_case(self):
        z = z_()
        f = newton_algebraic([-z, 1 - z], MultiSeries.zero(10))
        assert f == rational_series(z, 1 - z)

    def test_residual_is_zero(self):
        z = z_()
        coeffs = [-z, 1 - z]
        f = newton_algebraic(coeffs, MultiSeries.zero(10))
        assert (coeffs[0] + coeffs[1] * f).is_zero()


class TestDegreeBound:
    def test_counting_series_pass(self):
        f = rational_series(z_(), 1 - z_() * u_())
        assert_catalytic_bound(f)

    def test_violation_detected(self):
        with pytest.raises(DegreeBoundError):
            assert_catalytic_bound(u_())


class TestRealRoots:
    def test_quintic_top_root(self):
        roots = real_roots([2, -41, 101, -97, 36, -4], (0, 10), 1e-9)
        assert abs(roots[-1] - 5.1955) < 5e-5

    def test_golden_quadratic(self):
        roots = real_roots([1, -3, 1], (0, 10), 1e-9)
        assert len(roots) == 2
        assert abs(roots[0] - (3 - 5 ** 0.5) / 2) < 1e-8
        assert abs(roots[1] - (3 + 5 ** 0.5) / 2) < 1e-8

    def test_no_real_roots(self):
        assert real_roots([1, 0, 1], (-10, 10)) == []

    def test_exact_grid_hit(self):
        roots = real_roots([1, -4], (0, 1), 1e-9, grid=4)
        assert abs(roots[0] - 0.25) < 1e-9

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError):
            RealPolynomial((1, 0))
