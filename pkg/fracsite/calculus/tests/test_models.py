from django.contrib.auth.models import User
from django.core.exceptions import ValidationError
from django.test import TestCase

from calculus.models import VerificationCase, VerificationRun
from calculus.verifier import CaseResult, RuleId, VerificationReport


def make_report(passed=True):
    cases = [
        CaseResult(inputs={"f": "t^2", "t": 1.0}, residual=0.0),
        CaseResult(inputs={"f": "t^2", "t": 2.0}, residual=3e-12, witness=1.5),
    ]
    return VerificationReport(
        rule=RuleId.ROLLE,
        cases=cases,
        max_residual=3e-12 if passed else 1.0,
        passed=passed,
        tolerance=1e-8,
        warnings=["no rolle point for sin(t) on [0, 1]"],
    )


class VerificationRunModelTests(TestCase):
    def setUp(self):
        self.user = User.objects.create_user(username='testuser', password='testpass123')

    def test_record(self):
        run = VerificationRun.record(make_report(), user=self.user)
        self.assertEqual(run.rule, 'rolle')
        self.assertTrue(run.passed)
        self.assertEqual(run.case_count, 2)
        self.assertEqual(run.requested_by, self.user)
        self.assertEqual(len(run.warnings), 1)

        cases = list(run.cases.all())
        self.assertEqual([case.index for case in cases], [0, 1])
        self.assertEqual(cases[1].inputs, {"f": "t^2", "t": 2.0})
        self.assertEqual(cases[1].witness, 1.5)
        self.assertIsNone(cases[0].witness)

    def test_str(self):
        run = VerificationRun.record(make_report(passed=False))
        self.assertEqual(str(run), "rolle FAILED (1.00e+00 <= 1e-08)")
        self.assertEqual(str(run.cases.first()), "rolle[0]: 0.00e+00")

    def test_latest_first(self):
        first = VerificationRun.record(make_report())
        second = VerificationRun.record(make_report())
        self.assertEqual(list(VerificationRun.objects.all()), [second, first])

    def test_unknown_rule(self):
        with self.assertRaises(ValidationError):
            VerificationRun.objects.create(rule='no_such_rule', passed=True, max_residual=0.0, tolerance=1e-8)

    def test_non_positive_tolerance(self):
        with self.assertRaises(ValidationError):
            VerificationRun.objects.create(rule='ftc', passed=True, max_residual=0.0, tolerance=0.0)

    def test_negative_residual(self):
        with self.assertRaises(ValidationError):
            VerificationRun.objects.create(rule='ftc', passed=True, max_residual=-1.0, tolerance=1e-8)

    def test_deleting_the_user_keeps_the_run(self):
        run = VerificationRun.record(make_report(), user=self.user)
        self.user.delete()
        run.refresh_from_db()
        self.assertIsNone(run.requested_by)

    def test_cases_are_deleted_with_the_run(self):
        run = VerificationRun.record(make_report())
        run.delete()
        self.assertEqual(VerificationCase.objects.count(), 0)


class VerificationRunAdminTests(TestCase):
    def setUp(self):
        self.admin = User.objects.create_superuser(username='admin', password='adminpass123')
        self.client.force_login(self.admin)

    def test_changelist_and_change_page(self):
        run = VerificationRun.record(make_report())
        response = self.client.get('/admin/calculus/verificationrun/')
        self.assertEqual(response.status_code, 200)
        self.assertContains(response, 'rolle')
        response = self.client.get(f'/admin/calculus/verificationrun/{run.pk}/change/')
        self.assertEqual(response.status_code, 200)
        self.assertContains(response, 't^2')
