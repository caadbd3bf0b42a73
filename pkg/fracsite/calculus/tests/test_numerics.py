import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from calculus.exceptions import DivergenceError, NoBracketError, QuadratureError
from calculus.numerics import (
    EpsilonSchedule,
    adaptive_quad,
    central_difference,
    extrapolated_limit,
    find_root,
    find_root_bracketed,
    scan_brackets,
)


def geometric(eps0=0.1, levels=6):
    return [eps0 * 0.5**j for j in range(levels)]


class EpsilonScheduleTests(SimpleTestCase):
    def test_steps(self):
        steps = EpsilonSchedule(1e-3, 0.5, 4).steps()
        self.assertEqual(len(steps), 4)
        self.assertAlmostEqual(steps[-1], 1.25e-4, places=18)

    def test_for_point_scales_with_t(self):
        schedule = EpsilonSchedule.for_point(4.0, 0.5)
        self.assertAlmostEqual(schedule.eps0, 2e-3, places=15)
        self.assertEqual(schedule.levels, 6)

    def test_validation(self):
        with self.assertRaises(ValidationError):
            EpsilonSchedule(0.0)
        with self.assertRaises(ValidationError):
            EpsilonSchedule(1e-3, ratio=1.0)
        with self.assertRaises(ValidationError):
            EpsilonSchedule(1e-3, levels=1)


class ExtrapolationTests(SimpleTestCase):
    def test_polynomial_error_is_removed(self):
        samples = [(eps, 2.0 + 3.0 * eps + eps * eps) for eps in geometric()]
        estimate = extrapolated_limit(samples)
        self.assertAlmostEqual(estimate.value, 2.0, places=12)
        self.assertLess(estimate.err_estimate, 1e-10)

    def test_needs_two_decreasing_samples(self):
        with self.assertRaises(ValidationError):
            extrapolated_limit([(0.1, 1.0)])
        with self.assertRaises(ValidationError):
            extrapolated_limit([(0.1, 1.0), (0.2, 1.0)])

    def test_non_finite_samples(self):
        with self.assertRaises(DivergenceError):
            extrapolated_limit([(0.1, 1.0), (0.05, math.inf), (0.025, 1.0)])

    def test_growing_extrapolants(self):
        # quotients growing like 1/eps^2
        with self.assertRaises(DivergenceError):
            extrapolated_limit([(eps, 1.0 / eps**2) for eps in geometric()])

    @settings(max_examples=50, deadline=None)
    @given(
        c0=st.floats(min_value=-100.0, max_value=100.0),
        c1=st.floats(min_value=-100.0, max_value=100.0),
    )
    def test_linear_quotients(self, c0, c1):
        estimate = extrapolated_limit([(eps, c0 + c1 * eps) for eps in geometric()])
        self.assertLess(abs(estimate.value - c0), 1e-9 * (1.0 + abs(c0) + abs(c1)))

    def test_central_difference(self):
        self.assertAlmostEqual(central_difference(math.sin, 1.0).value, math.cos(1.0), places=10)
        self.assertAlmostEqual(central_difference(math.exp, 0.0).value, 1.0, places=10)


class QuadratureTests(SimpleTestCase):
    def test_polynomial(self):
        result = adaptive_quad(lambda x: x * x, 0.0, 1.0)
        self.assertAlmostEqual(result.value, 1.0 / 3.0, places=12)
        self.assertGreaterEqual(result.subdivisions, 1)

    def test_empty_interval(self):
        self.assertEqual(adaptive_quad(math.exp, 1.5, 1.5).value, 0.0)

    def test_declared_weight_at_zero(self):
        # int_0^1 x^(-1/2) dx
        self.assertAlmostEqual(adaptive_quad(lambda x: 1.0, 0.0, 1.0, weight_power=-0.5).value, 2.0, places=12)
        # int_0^2 x^2 x^(-0.9) dx
        expected = 2.0**2.1 / 2.1
        self.assertAlmostEqual(adaptive_quad(lambda x: x * x, 0.0, 2.0, weight_power=-0.9).value, expected, places=9)

    def test_declared_weight_away_from_zero(self):
        self.assertAlmostEqual(adaptive_quad(lambda x: 1.0, 1.0, 4.0, weight_power=-0.5).value, 2.0, places=9)

    def test_undeclared_singularity(self):
        self.assertAlmostEqual(adaptive_quad(lambda x: x**-0.5, 0.0, 1.0).value, 2.0, places=9)

    def test_validation(self):
        with self.assertRaises(ValidationError):
            adaptive_quad(math.exp, 1.0, 0.0)
        with self.assertRaises(ValidationError):
            adaptive_quad(math.exp, 0.0, 1.0, tol=0.0)
        with self.assertRaises(ValidationError):
            adaptive_quad(math.exp, 0.0, 1.0, weight_power=-1.0)

    def test_subdivision_budget(self):
        with self.assertRaises(QuadratureError):
            adaptive_quad(lambda x: math.sin(10.0 * x), 0.0, 3.0, max_subdivisions=1)

    def test_non_finite_integrand(self):
        with self.assertRaises(QuadratureError):
            adaptive_quad(lambda x: math.inf if x > 0.5 else 1.0, 0.0, 1.0)

    @settings(max_examples=30, deadline=None)
    @given(c=st.floats(min_value=0.1, max_value=2.9))
    def test_additive_over_adjacent_intervals(self, c):
        def f(x):
            return math.exp(-x) * math.cos(3.0 * x) + x * x

        left, right, whole = adaptive_quad(f, 0.0, c), adaptive_quad(f, c, 3.0), adaptive_quad(f, 0.0, 3.0)
        slack = left.err_estimate + right.err_estimate + whole.err_estimate + 1e-9
        self.assertLessEqual(abs(left.value + right.value - whole.value), slack)


class RootFindingTests(SimpleTestCase):
    def test_bisection(self):
        self.assertAlmostEqual(find_root_bracketed(lambda x: x * x - 2.0, 0.0, 2.0), math.sqrt(2.0), places=10)

    def test_no_bracket(self):
        with self.assertRaises(NoBracketError):
            find_root_bracketed(lambda x: x * x + 1.0, 1.0, 2.0)

    def test_scan_reports_exact_zeros(self):
        self.assertEqual(scan_brackets(lambda x: x - 0.5, 0.0, 1.0, cells=4), [(0.5, 0.5)])

    def test_scan_brackets_in_grid_order(self):
        brackets = scan_brackets(math.sin, 1.0, 10.0, cells=9)
        self.assertEqual(len(brackets), 3)
        self.assertEqual(brackets, sorted(brackets))

    def test_interior_skips_endpoints(self):
        g = lambda x: x * (x - 1.0)  # noqa: E731
        self.assertEqual(find_root(g, 0.0, 1.0, cells=4), 0.0)
        with self.assertRaises(NoBracketError):
            find_root(g, 0.0, 1.0, cells=4, interior=True)

    def test_find_root_refines_first_bracket(self):
        self.assertAlmostEqual(find_root(math.cos, 0.0, 3.0), math.pi / 2.0, places=10)
