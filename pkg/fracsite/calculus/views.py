import logging

from django.core.exceptions import ObjectDoesNotExist
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import permissions, status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response
from rest_framework.views import APIView

from .derivatives import Order, OperatorConfig, deriv_closed, deriv_limit_estimate
from .exceptions import VFracError
from .integrals import IntervalSpec, integrate
from .models import VerificationRun
from .serializers import (
    DerivQuerySerializer,
    IntegralQuerySerializer,
    MLQuerySerializer,
    RunRequestSerializer,
    VerificationRunSerializer,
)
from .special_functions import TruncationSpec, ml_eval
from .verifier import residual, verify

logger = logging.getLogger(__name__)


class CalculusErrorMixin:
    """Maps validation and numerical failures to 400 and missing objects to 404."""

    def handle_exception(self, exc):
        if isinstance(exc, ObjectDoesNotExist):
            return Response(
                {'error': 'Requested resource not found'},
                status=status.HTTP_404_NOT_FOUND
            )
        elif isinstance(exc, DjangoValidationError):
            return Response(
                {'error': '; '.join(exc.messages)},
                status=status.HTTP_400_BAD_REQUEST
            )
        elif isinstance(exc, VFracError):
            return Response(
                {'error': str(exc), 'kind': type(exc).__name__},
                status=status.HTTP_400_BAD_REQUEST
            )
        return super().handle_exception(exc)


class MLView(CalculusErrorMixin, APIView):
    """GET: the six-parameter Mittag-Leffler function at z."""
    permission_classes = [permissions.AllowAny]

    def get(self, request):
        query = MLQuerySerializer(data=request.query_params)
        query.is_valid(raise_exception=True)
        data = query.validated_data
        params = data['params']
        trunc = TruncationSpec.fixed(data['trunc_i']) if 'trunc_i' in data else None
        return Response({
            'z': data['z'],
            'params': params.as_dict(),
            'value': ml_eval(params, data['z'], trunc),
        })


class DerivView(CalculusErrorMixin, APIView):
    """GET: the truncated V-fractional derivative of an expression at t."""
    permission_classes = [permissions.AllowAny]

    def get(self, request):
        query = DerivQuerySerializer(data=request.query_params)
        query.is_valid(raise_exception=True)
        data = query.validated_data
        order = Order(data['alpha'], data['n']) if 'n' in data else Order.of(data['alpha'])
        cfg = OperatorConfig(params=data['params'], order=order, trunc_i=data['trunc_i'])
        fn, t, method = data['fn'], data['t'], data['method']

        result = {'fn': fn.label, 't': t, 'alpha': order.alpha, 'n': order.n}
        if method in ('closed', 'both'):
            result['closed'] = deriv_closed(fn, t, cfg)
        if method in ('limit', 'both'):
            estimate = deriv_limit_estimate(fn, t, cfg)
            result['limit'] = estimate.value
            result['limit_err'] = estimate.err_estimate
        if method == 'both':
            result['agree'] = residual(result['limit'], result['closed']) <= cfg.tol
        return Response(result)


class IntegralView(CalculusErrorMixin, APIView):
    """GET: the V-fractional integral of an expression over [a, t]."""
    permission_classes = [permissions.AllowAny]

    def get(self, request):
        query = IntegralQuerySerializer(data=request.query_params)
        query.is_valid(raise_exception=True)
        data = query.validated_data
        quad = integrate(data['fn'], IntervalSpec(data['a'], data['t']), data['alpha'], data['params'])
        return Response({
            'fn': data['fn'].label,
            'a': data['a'],
            't': data['t'],
            'alpha': data['alpha'],
            'value': quad.value,
            'err_estimate': quad.err_estimate,
            'subdivisions': quad.subdivisions,
        })


class VerificationRunViewSet(CalculusErrorMixin, viewsets.ReadOnlyModelViewSet):
    """
    API endpoints for stored verification runs.
    Provides 'list' and 'retrieve', plus a 'run' action that verifies a rule and records it.
    """
    queryset = VerificationRun.objects.prefetch_related('cases')
    serializer_class = VerificationRunSerializer
    permission_classes = [permissions.AllowAny]

    @action(detail=False, methods=['post'], permission_classes=[permissions.IsAuthenticated])
    def run(self, request):
        """Runs one rule over its default suite and stores the report"""
        body = RunRequestSerializer(data=request.data)
        body.is_valid(raise_exception=True)
        report = verify(body.validated_data['rule'], tol=body.validated_data.get('tol'))
        run = VerificationRun.record(report, user=request.user)
        logger.info("run %s recorded for %s", run.pk, request.user.username)
        return Response(self.get_serializer(run).data, status=status.HTTP_201_CREATED)
