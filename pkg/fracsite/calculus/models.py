from django.contrib.auth.models import User
from django.core.exceptions import ValidationError
from django.db import models, transaction
from django.utils import timezone

from .verifier import RuleId


class VerificationRun(models.Model):
    """
    One execution of a verifier rule over its suite.

    Stores the summary of a VerificationReport (pass/fail, worst residual and
    the tolerance it was judged against) together with any witness warnings.
    The individual cases are kept as VerificationCase rows.
    """
    RULE_CHOICES = [(rule.value, rule.value.replace('_', ' ')) for rule in RuleId]

    rule = models.CharField(max_length=40, choices=RULE_CHOICES)  # RuleId value
    passed = models.BooleanField()
    max_residual = models.FloatField()  # Largest case residual
    tolerance = models.FloatField()  # Tolerance the residuals were compared with
    case_count = models.PositiveIntegerField(default=0)
    warnings = models.JSONField(default=list, blank=True)  # Witness searches that found nothing
    requested_by = models.ForeignKey(User, null=True, blank=True, on_delete=models.SET_NULL)  # Empty for CLI runs
    created_at = models.DateTimeField(default=timezone.now)

    class Meta:
        ordering = ['-created_at', '-id']
        indexes = [
            models.Index(fields=['rule', 'created_at'], name='calculus_run_rule_idx'),
        ]

    def clean(self):
        """
        Validates the run before saving:
        - the rule is a known RuleId
        - the tolerance is positive and the residual non-negative
        """
        try:
            RuleId(self.rule)
        except ValueError:
            raise ValidationError(f"Unknown rule '{self.rule}'")
        if not self.tolerance > 0:
            raise ValidationError("Tolerance must be positive")
        if self.max_residual < 0:
            raise ValidationError("Residual cannot be negative")

    def save(self, *args, **kwargs):
        self.clean()
        super().save(*args, **kwargs)

    @classmethod
    def record(cls, report, user=None):
        """
        Persists a VerificationReport with all of its cases.

        Args:
            report: the VerificationReport returned by ``verify``
            user: the user who requested the run, if any

        Returns:
            VerificationRun: the stored run
        """
        with transaction.atomic():
            run = cls.objects.create(
                rule=report.rule.value,
                passed=report.passed,
                max_residual=report.max_residual,
                tolerance=report.tolerance,
                case_count=report.case_count,
                warnings=list(report.warnings),
                requested_by=user,
            )
            VerificationCase.objects.bulk_create([
                VerificationCase(
                    run=run,
                    index=index,
                    inputs=case.inputs,
                    residual=case.residual,
                    witness=case.witness,
                )
                for index, case in enumerate(report.cases)
            ])
        return run

    def __str__(self):
        status = "passed" if self.passed else "FAILED"
        return f"{self.rule} {status} ({self.max_residual:.2e} <= {self.tolerance:.0e})"


class VerificationCase(models.Model):
    """A single case of a run: its inputs, residual and located witness point."""
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='cases')
    index = models.PositiveIntegerField()  # Position in the suite
    inputs = models.JSONField()
    residual = models.FloatField()
    witness = models.FloatField(null=True, blank=True)

    class Meta:
        ordering = ['run', 'index']
        unique_together = ['run', 'index']

    def __str__(self):
        return f"{self.run.rule}[{self.index}]: {self.residual:.2e}"
