import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st
from scipy import special

from calculus.conf import vfrac_settings
from calculus.exceptions import DomainGuardError, PoleError
from calculus.special_functions import (
    MLParams,
    TruncationSpec,
    gamma,
    gen_pochhammer,
    h_eval,
    h_terms,
    log_gamma,
    log_pochhammer,
    ml_eval,
    ml_five,
    ml_four,
    ml_one,
    ml_terms,
    ml_three,
    ml_two,
    ml_two_derivative,
    reciprocal_gamma,
)

CHAIN_POINTS = (-2.0, -1.0, 0.5, 1.0, 5.0)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


class GammaTests(SimpleTestCase):
    def test_integer_and_half_integer_values(self):
        self.assertAlmostEqual(gamma(5.0), 24.0, places=10)
        self.assertAlmostEqual(gamma(0.5), math.sqrt(math.pi), places=13)
        self.assertAlmostEqual(gamma(-0.5), -2.0 * math.sqrt(math.pi), places=12)

    def test_matches_scipy(self):
        for x in (0.1, 0.7, 1.3, 2.5, 7.25, 30.0, -1.5, -2.3):
            self.assertLess(abs(gamma(x) / special.gamma(x) - 1.0), 1e-12)

    def test_sign_of_log_gamma(self):
        self.assertEqual(log_gamma(2.5)[1], 1)
        self.assertEqual(log_gamma(-0.5)[1], -1)
        self.assertEqual(log_gamma(-1.5)[1], 1)

    def test_poles(self):
        for x in (0.0, -1.0, -4.0):
            with self.assertRaises(PoleError):
                gamma(x)
        self.assertEqual(reciprocal_gamma(-3.0), 0.0)

    def test_pochhammer(self):
        self.assertEqual(log_pochhammer(2.5, 1.3, 0), 0.0)
        self.assertAlmostEqual(gen_pochhammer(1.0, 1.0, 3), 6.0, places=12)
        expected = special.gamma(2.0 + 1.1 * 4) / special.gamma(2.0)
        self.assertLess(rel(gen_pochhammer(2.0, 1.1, 4), expected), 1e-12)

    def test_pochhammer_rejects_bad_parameters(self):
        with self.assertRaises(ValidationError):
            gen_pochhammer(-1.0, 1.0, 2)
        with self.assertRaises(ValidationError):
            gen_pochhammer(1.0, 1.0, 1.5)


class MLParamsTests(SimpleTestCase):
    def test_defaults_are_all_ones(self):
        self.assertEqual(MLParams.ones().as_dict(), {
            "gamma": 1.0, "beta": 1.0, "rho": 1.0, "delta": 1.0, "p": 1.0, "q": 1.0,
        })

    def test_non_positive_parameter(self):
        with self.assertRaises(ValidationError):
            MLParams(gamma_p=-1.0)
        with self.assertRaises(ValidationError):
            MLParams(delta_p=0.0)

    def test_gamma_plus_p_below_q(self):
        with self.assertRaises(ValidationError):
            MLParams(gamma_p=0.5, p=0.5, q=2.0)


class MittagLefflerTests(SimpleTestCase):
    def test_all_ones_is_exponential(self):
        self.assertLess(abs(ml_eval(MLParams(), 1.0) - math.e), 1e-12)
        for z in (-3.0, -0.5, 2.0, 10.0):
            self.assertLess(rel(ml_eval(MLParams(), z), math.exp(z)), 1e-12)

    def test_reduction_chain(self):
        for z in CHAIN_POINTS:
            self.assertLess(rel(ml_eval(MLParams.one_parameter(0.5), z), ml_one(0.5, z)), 1e-12)
            self.assertLess(rel(ml_eval(MLParams.two_parameter(0.8, 1.7), z), ml_two(0.8, 1.7, z)), 1e-12)
            self.assertLess(
                rel(ml_eval(MLParams.three_parameter(1.2, 0.6, 2.0), z), ml_three(1.2, 0.6, 2.0, z)), 1e-12
            )
            self.assertLess(
                rel(ml_eval(MLParams.four_parameter(1.5, 1.0, 0.7, 1.3), z), ml_four(1.5, 1.0, 0.7, 1.3, z)),
                1e-12,
            )
            self.assertLess(
                rel(
                    ml_eval(MLParams.five_parameter(1.5, 1.0, 0.7, 2.2, 1.3), z),
                    ml_five(1.5, 1.0, 0.7, 2.2, 1.3, z),
                ),
                1e-12,
            )

    def test_known_closed_forms(self):
        for x in (0.3, 1.0, 2.5):
            # E_{1/2}(z) = exp(z^2) erfc(-z)
            self.assertLess(rel(ml_one(0.5, x), special.erfcx(-x)), 1e-11)
            # E_{2}(-x^2) = cos(x)
            self.assertLess(abs(ml_one(2.0, -x * x) - math.cos(x)), 1e-12)
            # E_{1,2}(z) = (e^z - 1) / z
            self.assertLess(rel(ml_two(1.0, 2.0, x), math.expm1(x) / x), 1e-12)
            # E^2_{1,2}(t) = e^t
            self.assertLess(rel(ml_three(1.0, 2.0, 2.0, x), math.exp(x)), 1e-12)

    def test_series_derivative(self):
        self.assertLess(rel(ml_two_derivative(1.0, 1.0, 0.7, 1), math.exp(0.7)), 1e-12)
        self.assertLess(rel(ml_two_derivative(1.0, 2.0, 1.5, 0), ml_two(1.0, 2.0, 1.5)), 1e-14)

    def test_fixed_truncation(self):
        # 1 + 1 + 1/2
        self.assertAlmostEqual(ml_eval(MLParams(), 1.0, TruncationSpec.fixed(2)), 2.5, places=14)
        self.assertEqual(ml_eval(MLParams(), 5.0, TruncationSpec.fixed(0)), 1.0)
        self.assertEqual(len(ml_terms(MLParams(), 2.0, 4)), 5)

    def test_adaptive_guard(self):
        with self.assertRaises(DomainGuardError):
            ml_eval(MLParams(), 60.0)
        # fixed truncation has no guard
        ml_eval(MLParams(), 60.0, TruncationSpec.fixed(3))

    def test_truncation_spec_validation(self):
        with self.assertRaises(ValidationError):
            TruncationSpec.fixed(-1)
        with self.assertRaises(ValidationError):
            TruncationSpec.adaptive(tol=0.0)

    @settings(max_examples=50, deadline=None)
    @given(
        gamma_p=st.floats(min_value=0.2, max_value=3.0),
        z=st.floats(min_value=-3.0, max_value=3.0),
    )
    def test_six_parameter_reduces_to_one_parameter(self, gamma_p, z):
        self.assertLess(rel(ml_eval(MLParams.one_parameter(gamma_p), z), ml_one(gamma_p, z)), 1e-12)

    @settings(max_examples=50, deadline=None)
    @given(
        gamma_p=st.floats(min_value=0.5, max_value=2.5),
        beta_p=st.floats(min_value=0.5, max_value=2.5),
        z=st.floats(min_value=-3.0, max_value=3.0),
        tol=st.sampled_from([1e-8, 1e-10, 1e-12]),
    )
    def test_tighter_tolerance_changes_less_than_the_looser_one(self, gamma_p, beta_p, z, tol):
        params = MLParams(gamma_p=gamma_p, beta_p=beta_p)
        loose = ml_eval(params, z, TruncationSpec.adaptive(tol=tol))
        tight = ml_eval(params, z, TruncationSpec.adaptive(tol=tol / 2))
        self.assertLess(abs(loose - tight), tol * max(1.0, abs(tight)))

    @settings(max_examples=50, deadline=None)
    @given(
        gamma_p=st.floats(min_value=0.2, max_value=3.0),
        beta_p=st.floats(min_value=0.2, max_value=3.0),
        rho_p=st.floats(min_value=0.2, max_value=3.0),
        delta_p=st.floats(min_value=0.2, max_value=3.0),
        p=st.floats(min_value=1.0, max_value=2.0),
        q=st.floats(min_value=0.5, max_value=1.2),
        z=st.floats(min_value=0.0, max_value=5.0),
    )
    def test_partial_sums_grow_with_the_index_for_non_negative_z(self, gamma_p, beta_p, rho_p, delta_p, p, q, z):
        params = MLParams(gamma_p=gamma_p, beta_p=beta_p, rho_p=rho_p, delta_p=delta_p, p=p, q=q)
        sums = [ml_eval(params, z, TruncationSpec.fixed(i)) for i in range(21)]
        for smaller, larger in zip(sums, sums[1:]):
            self.assertLessEqual(smaller, larger)


class HFunctionTests(SimpleTestCase):
    def test_value_at_zero(self):
        params = MLParams(gamma_p=0.5, beta_p=1.5, rho_p=2.0, delta_p=1.2, p=0.8, q=1.1)
        for i in (1, 3, 5):
            self.assertEqual(h_eval(params, 0.0, i), 1.0)

    def test_all_ones_is_truncated_exponential(self):
        z = 0.3
        self.assertAlmostEqual(h_eval(MLParams(), z, 3), 1 + z + z**2 / 2 + z**3 / 6, places=14)

    def test_index_must_be_positive(self):
        with self.assertRaises(ValidationError):
            h_terms(MLParams(), 0.5, 0)

    @settings(max_examples=50, deadline=None)
    @given(
        gamma_p=st.floats(min_value=0.2, max_value=4.0),
        z=st.floats(min_value=-2.0, max_value=2.0),
        i=st.integers(min_value=1, max_value=5),
    )
    def test_h_is_gamma_beta_times_truncated_series(self, gamma_p, z, i):
        params = MLParams(gamma_p=gamma_p, beta_p=1.7)
        expected = gamma(1.7) * ml_eval(params, z, TruncationSpec.fixed(i))
        self.assertLess(rel(h_eval(params, z, i), expected), 1e-12)


class SettingsTests(SimpleTestCase):
    def test_defaults(self):
        self.assertEqual(vfrac_settings("Z_MAX"), 50.0)
        self.assertEqual(vfrac_settings("CLOSED_FORM_TOL"), 1e-10)
        with self.assertRaises(KeyError):
            vfrac_settings("NO_SUCH_SETTING")

    @override_settings(VFRAC={"Z_MAX": 80.0})
    def test_override_widens_the_guard(self):
        self.assertEqual(vfrac_settings("Z_MAX"), 80.0)
        self.assertEqual(vfrac_settings("ML_TOL"), 1e-15)
        self.assertLess(rel(ml_eval(MLParams(), 60.0), math.exp(60.0)), 1e-12)
