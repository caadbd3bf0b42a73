import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from calculus import functions as fns
from calculus.derivatives import OperatorConfig, deriv_closed
from calculus.exceptions import PoleError
from calculus.integrals import (
    IntervalSpec,
    RLMode,
    integral_fn,
    integrate,
    integrate_composed,
    ml_integrate,
    rl_bridge_factor,
    rl_derivative_factor,
    rl_integral_bridge,
    rl_power,
)
from calculus.special_functions import MLParams

MIXED = MLParams(gamma_p=0.5, beta_p=1.5, rho_p=2.0, delta_p=1.2, p=0.8, q=1.1)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


class IntervalSpecTests(SimpleTestCase):
    def test_validation(self):
        self.assertEqual(IntervalSpec(1.0, 3.0).length, 2.0)
        with self.assertRaises(ValidationError):
            IntervalSpec(-1.0, 1.0)
        with self.assertRaises(ValidationError):
            IntervalSpec(2.0, 1.0)
        with self.assertRaises(ValidationError):
            IntervalSpec(0.0, math.inf)


class IntegrateTests(SimpleTestCase):
    def test_weight_singular_at_zero(self):
        result = integrate(fns.const(1.0), IntervalSpec(0.0, 1.0), 0.5, MLParams())
        self.assertAlmostEqual(result.value, 2.0, places=10)
        self.assertAlmostEqual(integrate(fns.power(1.0), IntervalSpec(0.0, 1.0), 0.5, MLParams()).value,
                               2.0 / 3.0, places=10)

    def test_order_one_is_the_ordinary_integral(self):
        self.assertAlmostEqual(integrate(fns.power(2.0), IntervalSpec(0.0, 3.0), 1.0, MLParams()).value,
                               9.0, places=10)

    def test_divides_by_the_coefficient(self):
        from calculus.derivatives import coefficient

        plain = integrate(fns.exp_at(1.0), IntervalSpec(0.5, 2.0), 0.5, MLParams()).value
        scaled = integrate(fns.exp_at(1.0), IntervalSpec(0.5, 2.0), 0.5, MIXED).value
        self.assertLess(rel(scaled * coefficient(MIXED), plain), 1e-12)

    def test_empty_interval(self):
        self.assertEqual(integrate(fns.exp_at(1.0), IntervalSpec(1.0, 1.0), 0.5, MLParams()).value, 0.0)

    def test_order_validation(self):
        for alpha in (0.0, -0.5, 1.5):
            with self.assertRaises(ValidationError):
                integrate(fns.const(1.0), IntervalSpec(0.0, 1.0), alpha, MLParams())


class IntegralFunctionTests(SimpleTestCase):
    def test_value_and_derivative(self):
        f = integral_fn(fns.power(2.0), 0.0, 0.5, MLParams())
        self.assertAlmostEqual(f(4.0), 4.0**2.5 / 2.5, places=9)
        self.assertAlmostEqual(f.derivative(4.0), 8.0, places=12)

    def test_derivative_undoes_the_integral(self):
        for params in (MLParams(), MIXED):
            for alpha in (0.3, 0.8):
                cfg = OperatorConfig.build(alpha, params)
                f = integral_fn(fns.cos_at(1.0), 0.5, alpha, params)
                for t in (1.0, 2.5):
                    self.assertLess(rel(deriv_closed(f, t, cfg), math.cos(t)), 1e-12)

    def test_composition_law(self):
        lhs, rhs = integrate_composed(fns.const(1.0), IntervalSpec(0.0, 1.0), 0.5, 0.5, MLParams())
        self.assertAlmostEqual(lhs, 2.0, places=8)
        self.assertAlmostEqual(rhs, 2.0, places=9)
        lhs, rhs = integrate_composed(fns.exp_at(1.0), IntervalSpec(0.5, 2.0), 0.4, 0.7, MIXED)
        self.assertLess(rel(lhs, rhs), 1e-8)


class MittagLefflerIntegralTests(SimpleTestCase):
    def test_exponential(self):
        self.assertAlmostEqual(ml_integrate(1.0, 1.0, IntervalSpec(0.0, 1.0), 1.0, MLParams()), math.e - 1.0,
                               places=12)
        self.assertEqual(ml_integrate(1.0, 1.0, IntervalSpec(2.0, 2.0), 0.5, MLParams()), 0.0)

    def test_against_quadrature(self):
        for params in (MLParams(), MIXED):
            for a in (0.0, 0.5):
                for mu, kappa in ((0.5, 1.0), (1.5, 2.0)):
                    iv = IntervalSpec(a, 2.0)
                    closed = ml_integrate(mu, kappa, iv, 0.5, params)
                    numeric = integrate(fns.mlf(mu, kappa), iv, 0.5, params).value
                    self.assertLess(rel(closed, numeric), 1e-8, f"mu={mu} kappa={kappa} a={a}")

    def test_validation(self):
        with self.assertRaises(ValidationError):
            ml_integrate(0.0, 1.0, IntervalSpec(0.0, 1.0), 0.5, MLParams())


class RiemannLiouvilleTests(SimpleTestCase):
    def test_integral_of_one(self):
        self.assertAlmostEqual(rl_power(RLMode.INTEGRAL, 0.0, 0.5, 1.0), 2.0 / math.sqrt(math.pi), places=14)

    def test_derivative_of_t(self):
        self.assertAlmostEqual(rl_power("derivative", 1.0, 0.5, 4.0), 2.2567583341910252, places=13)

    def test_pole(self):
        with self.assertRaises(PoleError):
            rl_power(RLMode.DERIVATIVE, -0.5, 0.5, 1.0)

    def test_validation(self):
        with self.assertRaises(ValidationError):
            rl_power(RLMode.INTEGRAL, -1.0, 0.5, 1.0)
        with self.assertRaises(ValidationError):
            rl_power(RLMode.INTEGRAL, 1.0, 1.0, 1.0)
        with self.assertRaises(ValidationError):
            rl_power(RLMode.INTEGRAL, 1.0, 0.5, 0.0)

    def test_bridge_factor(self):
        self.assertAlmostEqual(rl_bridge_factor(0.5, MLParams()), math.sqrt(math.pi), places=13)

    def test_integral_bridge(self):
        lhs, rhs = rl_integral_bridge(1.0, 0.5, 2.0, MLParams())
        self.assertAlmostEqual(rhs, 8.0 / 3.0 * math.sqrt(2.0), places=12)
        self.assertLess(rel(lhs, rhs), 1e-8)
        lhs, rhs = rl_integral_bridge(2.5, 0.3, 1.5, MIXED)
        self.assertLess(rel(lhs, rhs), 1e-8)

    def test_derivative_factor(self):
        self.assertAlmostEqual(rl_derivative_factor(1.0, 0.5), 2.0 / 3.0 * math.sqrt(math.pi), places=13)
