import math

from django.test import SimpleTestCase

from calculus import functions as fns
from calculus.exceptions import MissingDerivativeError
from calculus.functions import FnSpec


class FnSpecTests(SimpleTestCase):
    def test_expression_and_derivatives(self):
        f = FnSpec.from_expression("t^2")
        self.assertEqual(f(3.0), 9.0)
        self.assertEqual(f.derivative(3.0), 6.0)
        self.assertEqual(f.nth_derivative(2)(1.0), 2.0)
        self.assertEqual(f.label, "t^2")

    def test_symbolic_combinators(self):
        f = fns.power(2.0) * fns.exp_at(1.0)
        self.assertIsNotNone(f.ast)
        self.assertAlmostEqual(f.derivative(1.0), 3.0 * math.e, places=12)
        quotient = fns.sin_at(1.0) / fns.exp_at(1.0)
        self.assertAlmostEqual(quotient.derivative(0.0), 1.0, places=14)
        self.assertAlmostEqual((fns.power(3.0) - fns.const(2.0)).derivative(2.0), 12.0, places=12)

    def test_closure_combinators_propagate_derivatives(self):
        # E_{1,1} is the exponential but carries no AST
        exp_series = fns.mlf(1.0, 1.0)
        self.assertIsNone(exp_series.ast)
        product = exp_series * fns.power(2.0)
        self.assertAlmostEqual(product.derivative(1.0), 3.0 * math.e, places=11)
        composed = exp_series.compose(fns.power(2.0))
        self.assertAlmostEqual(composed(1.0), math.e, places=12)
        self.assertAlmostEqual(composed.derivative(1.0), 2.0 * math.e, places=11)
        self.assertAlmostEqual(exp_series.scaled(3.0).derivative(0.5), 3.0 * math.exp(0.5), places=11)
        self.assertAlmostEqual((-exp_series).derivative(0.0), -1.0, places=12)

    def test_absolute_value_has_no_derivative(self):
        f = fns.sin_at(1.0).absolute()
        self.assertEqual(f(-1.0), math.sin(1.0))
        self.assertFalse(f.has_derivative)
        with self.assertRaises(MissingDerivativeError):
            f.derivative

    def test_without_derivative(self):
        f = fns.power(2.0).without_derivative()
        self.assertEqual(f(2.0), 4.0)
        self.assertFalse(f.has_derivative)
        self.assertFalse((f + fns.power(1.0)).has_derivative)

    def test_symbolic_composition(self):
        f = fns.sin_at(1.0).compose(fns.power(2.0))
        self.assertEqual(f.label, "sin(t^2)")
        self.assertAlmostEqual(f.derivative(1.0), 2.0 * math.cos(1.0), places=14)


class CatalogTests(SimpleTestCase):
    def test_t_alpha_over_alpha(self):
        f = fns.t_alpha_over_alpha(0.5)
        self.assertAlmostEqual(f(4.0), 4.0, places=14)
        self.assertAlmostEqual(f.derivative(4.0), 0.5, places=14)

    def test_fractional_trigonometric_and_exponential(self):
        alpha, t = 0.5, 2.25
        u = t**alpha / alpha
        self.assertAlmostEqual(fns.sin_t_alpha(alpha)(t), math.sin(u), places=14)
        self.assertAlmostEqual(fns.cos_t_alpha(alpha)(t), math.cos(u), places=14)
        self.assertAlmostEqual(fns.exp_t_alpha(alpha)(t), math.exp(u), places=12)

    def test_mittag_leffler_derivatives(self):
        self.assertAlmostEqual(fns.mlf(1.0, 1.0, order=2)(0.5), math.exp(0.5), places=12)
        # E_{2,1}(z) = 1 + z / 2 + z^2 / 24 + ...
        self.assertAlmostEqual(fns.mlf(2.0, 1.0).derivative(0.0), 0.5, places=14)

    def test_catalog(self):
        catalog = fns.catalog(0.5)
        self.assertEqual(len(catalog), 13)
        self.assertTrue(all(fn.has_derivative for fn in catalog.values()))
        self.assertTrue(fns.is_constant(fns.const(7.0)))
        self.assertFalse(fns.is_constant(fns.power(1.0)))
