"""Truncated series: exponentials, the deformation series, Magnus.

The one-generator fixtures are small enough to freeze by hand.  With
x the generator and t the tree product x|>x:

    exp^.(tx)   = 1 + t x + t^2 x.x/2 + ...
    alpha(tx)   = x - t (x|>x) + t^2 (x|>(x|>x) + (x|>x)|>x)/2 - ...
    flow Y      = 1 + t x + t^2 (x.x - x|>x)/2 + ...
    Magnus      = t x - t^2 (x|>x)/2 + ...
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from postgroup_lab.errors import ShapeError, SizeCapError
from postgroup_lab.magnus import (
    TruncatedSeries,
    alpha_series,
    bernoulli_modified,
    check_alpha_ode,
    check_primitivity_of_log,
    derivative,
    exp_dot_series,
    exp_star_series,
    flow_matches_twisted_exp,
    integrate,
    log_dot_series,
    magnus_gl,
    series_concat,
    series_star,
    series_triangle,
    solve_right_flow,
)
from postgroup_lab.tensor_postlie import (
    Leaf,
    Node,
    TensorPoly,
    gl_lie_bracket,
    gl_star,
    is_primitive,
    kmap_tensor,
    unshuffle,
    word_degree,
)

X = Leaf(0)
T2 = Node(X, X)
T3L = Node(T2, X)
T3R = Node(X, T2)
XP = TensorPoly.letter(0)


def tseries(*polys):
    return TruncatedSeries(tuple(polys))


def constant_series(poly, order):
    return tseries(poly, *[TensorPoly.zero()] * order)


class TestSeriesType:
    def test_needs_a_constant_coefficient(self):
        with pytest.raises(ShapeError):
            TruncatedSeries(())

    def test_reads_beyond_the_order_as_zero(self):
        s = constant_series(XP, 2)
        assert s.order == 2
        assert s.coeff(7).is_zero()

    def test_addition_truncates_to_the_shorter_order(self):
        a = TruncatedSeries.unit(4)
        b = constant_series(XP, 2)
        assert (a + b).order == 2

    def test_derivative_and_integral_are_inverse(self):
        s = alpha_series(X, 4)
        assert derivative(integrate(s)).coeffs == s.coeffs

    def test_scalar_multiplication(self):
        s = exp_dot_series(X, 3)
        assert (2 * s - s).coeffs == s.coeffs


class TestExpDot:
    def test_order_zero_is_the_unit(self):
        assert exp_dot_series(X, 0).coeffs == (TensorPoly.unit(),)

    def test_quadratic_coefficient(self):
        got = exp_dot_series(X, 3).coeff(2)
        assert got == TensorPoly({(X, X): Fraction(1, 2)})

    def test_satisfies_its_flow_equation(self):
        # shift-and-compare: d/dt exp = exp . x through the truncation
        exp = exp_dot_series(X, 6)
        rhs = series_concat(exp, constant_series(XP, 6))
        assert derivative(exp).coeffs == rhs.coeffs[:6]

    def test_coefficients_are_group_like(self):
        exp = exp_dot_series(X, 5)
        for k in range(6):
            pairs = unshuffle(exp.coeff(k)).terms
            expected = {}
            for i in range(k + 1):
                for u, a in exp.coeff(i).terms.items():
                    for v, b in exp.coeff(k - i).terms.items():
                        expected[(u, v)] = expected.get((u, v), 0) + a * b
            assert pairs == expected

    def test_order_cap(self):
        with pytest.raises(SizeCapError):
            exp_dot_series(X, 8)
        with pytest.raises(ShapeError):
            exp_dot_series(X, -1)


class TestExpStarAndLog:
    def test_twisted_exp_needs_zero_constant(self):
        with pytest.raises(ShapeError):
            exp_star_series(constant_series(XP, 3))

    def test_twisted_exp_of_zero(self):
        got = exp_star_series(TruncatedSeries.zero(3))
        assert got.coeffs == TruncatedSeries.unit(3).coeffs

    def test_resizing_pads_with_zeros(self):
        z = tseries(TensorPoly.zero(), XP)
        extended = exp_star_series(z, order=3)
        assert extended.order == 3
        assert extended.coeff(1) == XP

    def test_log_needs_the_unit_constant(self):
        with pytest.raises(ShapeError):
            log_dot_series(constant_series(XP, 3))

    def test_log_undoes_exp(self):
        logs = log_dot_series(exp_dot_series(X, 5))
        assert logs.coeff(1) == XP
        for k in (0, 2, 3, 4, 5):
            assert logs.coeff(k).is_zero()


class TestBernoulli:
    def test_listed_values(self):
        got = [bernoulli_modified(n) for n in range(7)]
        assert got == [
            Fraction(1),
            Fraction(1, 2),
            Fraction(1, 6),
            Fraction(0),
            Fraction(-1, 30),
            Fraction(0),
            Fraction(1, 42),
        ]

    def test_beyond_the_listed_prefix(self):
        assert bernoulli_modified(7) == 0
        assert bernoulli_modified(8) == Fraction(-1, 30)

    def test_rejects_negative_index(self):
        with pytest.raises(ShapeError):
            bernoulli_modified(-1)


class TestAlpha:
    def test_first_three_coefficients(self):
        alpha = alpha_series(X, 2)
        assert alpha.coeff(0) == XP
        assert alpha.coeff(1) == -TensorPoly.from_word((T2,))
        expected = TensorPoly({(T3R,): Fraction(1, 2), (T3L,): Fraction(1, 2)})
        assert alpha.coeff(2) == expected

    def test_homogeneity_and_primitivity(self):
        alpha = alpha_series(X, 5)
        for k in range(6):
            coeff = alpha.coeff(k)
            assert {word_degree(w) for w in coeff.terms} == {k + 1}
            assert all(len(w) == 1 for w in coeff.terms)
            assert is_primitive(coeff)

    def test_flow_equation_holds(self):
        assert check_alpha_ode(X, 5).ok

    def test_perturbed_series_fails_at_the_right_order(self):
        alpha = alpha_series(X, 4)
        broken = list(alpha.coeffs)
        broken[2] = broken[2] + TensorPoly.from_word((T3R,))
        report = check_alpha_ode(X, 4, series=TruncatedSeries(tuple(broken)))
        assert not report.ok
        assert "order 1" in report.witness


class TestRightFlow:
    def test_first_three_coefficients(self):
        flow = solve_right_flow(X, 2)
        assert flow.coeff(0) == TensorPoly.unit()
        assert flow.coeff(1) == XP
        expected = TensorPoly({(X, X): Fraction(1, 2), (T2,): Fraction(-1, 2)})
        assert flow.coeff(2) == expected

    def test_flow_is_the_twist_of_exp(self):
        flow = solve_right_flow(X, 5)
        exp = exp_dot_series(X, 5)
        for k in range(6):
            assert flow.coeff(k) == kmap_tensor(exp.coeff(k))

    def test_log_of_the_flow_is_primitive(self):
        assert check_primitivity_of_log(solve_right_flow(X, 4)).ok

    def test_log_of_exp_is_primitive(self):
        assert check_primitivity_of_log(exp_dot_series(X, 4)).ok

    def test_non_primitive_log_is_detected(self):
        exp = exp_dot_series(X, 3)
        broken = list(exp.coeffs)
        broken[2] = TensorPoly.from_word((X, X))
        report = check_primitivity_of_log(TruncatedSeries(tuple(broken)))
        assert not report.ok
        assert "order 2" in report.witness


class TestMagnus:
    def test_first_coefficients(self):
        omega = magnus_gl(X, 3)
        assert omega.coeff(0).is_zero()
        assert omega.coeff(1) == XP
        assert omega.coeff(2) == TensorPoly({(T2,): Fraction(-1, 2)})

    def test_quadratic_coefficient_from_one_recursion_step(self):
        alpha = alpha_series(X, 2)
        omega = magnus_gl(X, 2)
        step = alpha.coeff(1) + Fraction(1, 2) * gl_lie_bracket(
            omega.coeff(1), alpha.coeff(0)
        )
        assert omega.coeff(2) == Fraction(1, 2) * step

    def test_twisted_exp_recovers_exp_dot(self):
        omega = magnus_gl(X, 5)
        assert exp_star_series(omega).coeffs == exp_dot_series(X, 5).coeffs

    def test_combined_report(self):
        assert flow_matches_twisted_exp(X, 5).ok

    def test_magnus_coefficients_are_primitive(self):
        omega = magnus_gl(X, 5)
        for k in range(1, 6):
            assert is_primitive(omega.coeff(k))


class TestSeriesProducts:
    def test_convolution_orders(self):
        a = exp_dot_series(X, 4)
        b = alpha_series(X, 2)
        assert series_concat(a, b).order == 2
        assert series_star(a, b).order == 2
        assert series_triangle(a, b).order == 2

    def test_star_convolution_matches_poly_product(self):
        a = exp_dot_series(X, 3)
        b = solve_right_flow(X, 3)
        got = series_star(a, b).coeff(2)
        expected = TensorPoly.zero()
        for i in range(3):
            expected = expected + gl_star(a.coeff(i), b.coeff(2 - i))
        assert got == expected
