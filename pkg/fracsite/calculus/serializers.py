from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from calculus.conf import vfrac_settings
from calculus.exceptions import ExprSyntaxError
from calculus.functions import FnSpec
from calculus.models import VerificationCase, VerificationRun
from calculus.special_functions import MLParams
from calculus.verifier import RuleId


class CaseResultSerializer(serializers.Serializer):
    inputs = serializers.JSONField()
    residual = serializers.FloatField()
    witness = serializers.FloatField(allow_null=True)


class VerificationReportSerializer(serializers.Serializer):
    """Read-only rendering of a VerificationReport; the CLI's JSON schema."""
    rule = serializers.SerializerMethodField()
    passed = serializers.BooleanField()
    max_residual = serializers.FloatField()
    tolerance = serializers.FloatField()
    case_count = serializers.IntegerField()
    warnings = serializers.ListField(child=serializers.CharField())
    cases = CaseResultSerializer(many=True)

    def get_rule(self, report):
        return report.rule.value


class VerificationCaseSerializer(serializers.ModelSerializer):
    class Meta:
        model = VerificationCase
        fields = ['index', 'inputs', 'residual', 'witness']


class VerificationRunSerializer(serializers.ModelSerializer):
    cases = VerificationCaseSerializer(many=True, read_only=True)
    requested_by = serializers.StringRelatedField()

    class Meta:
        model = VerificationRun
        fields = ['id', 'rule', 'passed', 'max_residual', 'tolerance', 'case_count',
                  'warnings', 'requested_by', 'created_at', 'cases']


# Query parameter serializers of the evaluation endpoints


class ParamsQuerySerializer(serializers.Serializer):
    """The six Mittag-Leffler parameters, all defaulting to 1."""
    gamma = serializers.FloatField(default=1.0)
    beta = serializers.FloatField(default=1.0)
    rho = serializers.FloatField(default=1.0)
    delta = serializers.FloatField(default=1.0)
    p = serializers.FloatField(default=1.0)
    q = serializers.FloatField(default=1.0)

    def validate(self, attrs):
        try:
            attrs['params'] = MLParams(
                gamma_p=attrs.pop('gamma'),
                beta_p=attrs.pop('beta'),
                rho_p=attrs.pop('rho'),
                delta_p=attrs.pop('delta'),
                p=attrs.pop('p'),
                q=attrs.pop('q'),
            )
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.messages)
        return attrs


class MLQuerySerializer(ParamsQuerySerializer):
    z = serializers.FloatField()
    trunc_i = serializers.IntegerField(required=False, min_value=0)  # fixed truncation when given


class ExpressionField(serializers.CharField):
    """Expression text parsed into an FnSpec."""

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            return FnSpec.from_expression(text)
        except ExprSyntaxError as exc:
            raise serializers.ValidationError(str(exc))


class DerivQuerySerializer(ParamsQuerySerializer):
    fn = ExpressionField()
    t = serializers.FloatField()
    alpha = serializers.FloatField(default=lambda: vfrac_settings('DEFAULT_ALPHA'))
    n = serializers.IntegerField(required=False, min_value=0)
    trunc_i = serializers.IntegerField(default=lambda: vfrac_settings('TRUNC_I'), min_value=1)
    method = serializers.ChoiceField(choices=['closed', 'limit', 'both'], default='closed')


class IntegralQuerySerializer(ParamsQuerySerializer):
    fn = ExpressionField()
    a = serializers.FloatField(default=0.0)
    t = serializers.FloatField()
    alpha = serializers.FloatField(default=lambda: vfrac_settings('DEFAULT_ALPHA'))


class RunRequestSerializer(serializers.Serializer):
    rule = serializers.ChoiceField(choices=[rule.value for rule in RuleId])
    tol = serializers.FloatField(required=False, min_value=0.0)
