"""
``vfrac``: evaluate Mittag-Leffler functions, apply the V-fractional operators to
expressions, run the verification suite and emit tables.
"""
import argparse
import logging
from concurrent.futures import ThreadPoolExecutor

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from calculus.cli import RunConfig
from calculus.conf import vfrac_settings
from calculus.derivatives import OperatorConfig, deriv_closed, deriv_limit_estimate, ml_deriv
from calculus.exceptions import VFracError
from calculus.functions import FnSpec
from calculus.integrals import IntervalSpec, integrate, ml_integrate
from calculus.models import VerificationRun
from calculus.numerics import EpsilonSchedule
from calculus.serializers import VerificationReportSerializer
from calculus.special_functions import TruncationSpec, ml_eval, ml_two
from calculus.tables import CSV, FORMATS, JSON, emit_table, format_value, render_json
from calculus.verifier import RuleId, residual, verify

logger = logging.getLogger(__name__)

METHODS = ("closed", "limit", "both")


def _map_in_order(func, values, workers):
    """Applies func to every value; rows come back in the order of ``values``."""
    if workers <= 1 or len(values) <= 1:
        return [func(value) for value in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, values))


def _operator_config(cfg, t):
    schedule = None
    if cfg.eps0 is not None or cfg.eps_levels is not None:
        order = cfg.order
        schedule = EpsilonSchedule.for_point(t, order.alpha - order.n, cfg.eps0, cfg.eps_levels)
    return OperatorConfig(
        params=cfg.params,
        order=cfg.order,
        trunc_i=cfg.trunc_i,
        schedule=schedule,
        tol=cfg.tol if cfg.tol is not None else vfrac_settings("DERIV_TOL"),
        allow_numeric_derivative=cfg.numeric_derivative,
    )


def _points(cfg, fallback=None, what="t"):
    if cfg.grid is not None:
        return cfg.grid.values()
    if fallback is not None:
        return [float(fallback)]
    raise ValidationError(f"{cfg.subcommand} needs --{what} or --grid")


def _parse_function(cfg):
    if not cfg.fn:
        raise ValidationError(f"{cfg.subcommand} needs --fn")
    fn = FnSpec.from_expression(cfg.fn)
    if cfg.numeric_derivative:
        if cfg.order.n:
            raise ValidationError("--numeric-derivative applies to orders alpha <= 1")
        fn = fn.without_derivative()
    return fn


def ml_rows(cfg):
    if cfg.fixed:
        trunc = TruncationSpec.fixed(cfg.trunc_i)
    else:
        trunc = TruncationSpec.adaptive(tol=cfg.tol)
    zs = cfg.grid.values() if cfg.grid is not None else [float(cfg.z)]
    return [{"z": z, "value": ml_eval(cfg.params, z, trunc)} for z in zs], ["z", "value"]


def deriv_rows(cfg):
    if cfg.method not in METHODS:
        raise ValidationError(f"unknown method '{cfg.method}'")
    fn = _parse_function(cfg)
    points = _points(cfg)

    def row(t):
        op = _operator_config(cfg, t)
        result = {"t": t}
        if cfg.method in ("closed", "both"):
            result["closed"] = deriv_closed(fn, t, op)
        if cfg.method in ("limit", "both"):
            estimate = deriv_limit_estimate(fn, t, op)
            result["limit"] = estimate.value
            result["limit_err"] = estimate.err_estimate
        if cfg.method == "both":
            result["agree"] = residual(result["limit"], result["closed"]) <= op.tol
        return result

    fields = {
        "closed": ["t", "closed"],
        "limit": ["t", "limit", "limit_err"],
        "both": ["t", "closed", "limit", "limit_err", "agree"],
    }[cfg.method]
    return _map_in_order(row, points, cfg.workers), fields


def integral_rows(cfg):
    fn = _parse_function(cfg)
    points = _points(cfg, fallback=cfg.b)

    def row(t):
        result = integrate(fn, IntervalSpec(cfg.a, t), cfg.alpha, cfg.params, cfg.tol)
        return {"t": t, "value": result.value, "err_estimate": result.err_estimate}

    return _map_in_order(row, points, cfg.workers), ["t", "value", "err_estimate"]


def table_rows(cfg):
    """f, its derivative and its integral from a on the grid; the integral column is blank for alpha > 1."""
    if cfg.grid is None:
        raise ValidationError("table needs --grid")
    use_ml = cfg.mu is not None or cfg.kappa is not None
    if use_ml and (cfg.mu is None or cfg.kappa is None):
        raise ValidationError("table of E_{mu,kappa} needs both --mu and --kappa")
    if use_ml == bool(cfg.fn):
        raise ValidationError("table needs either --fn or --mu with --kappa")
    fn = None if use_ml else _parse_function(cfg)
    with_integral = cfg.order.n == 0

    def row(t):
        op = _operator_config(cfg, t)
        if use_ml:
            value = ml_two(cfg.mu, cfg.kappa, t)
            derivative = ml_deriv(cfg.mu, cfg.kappa, t, op)
        else:
            value = fn(t)
            derivative = deriv_closed(fn, t, op)
        integral = None
        if with_integral:
            iv = IntervalSpec(cfg.a, t)
            if use_ml:
                integral = ml_integrate(cfg.mu, cfg.kappa, iv, cfg.alpha, cfg.params)
            else:
                integral = integrate(fn, iv, cfg.alpha, cfg.params, cfg.tol).value
        return {"t": t, "f": value, "deriv": derivative, "integral": integral}

    return _map_in_order(row, cfg.grid.values(), cfg.workers), ["t", "f", "deriv", "integral"]


def summary_row(report):
    return {
        "rule": report.rule.value,
        "passed": report.passed,
        "max_residual": report.max_residual,
        "tolerance": report.tolerance,
        "cases": report.case_count,
        "warnings": len(report.warnings),
    }


class Command(BaseCommand):
    help = "Evaluates V-fractional operators and Mittag-Leffler functions and verifies their theorems."

    requires_system_checks = []

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        params = common.add_argument_group("Mittag-Leffler parameters")
        params.add_argument("--gamma", type=float, default=1.0)
        params.add_argument("--beta", type=float, default=1.0)
        params.add_argument("--rho", type=float, default=1.0)
        params.add_argument("--delta", type=float, default=1.0)
        params.add_argument("--p", type=float, default=1.0)
        params.add_argument("--q", type=float, default=1.0)
        common.add_argument("--alpha", type=float, default=vfrac_settings("DEFAULT_ALPHA"))
        common.add_argument("--n", type=int, default=None, help="integer part of the order, n < alpha <= n + 1")
        common.add_argument("--trunc-i", type=int, default=vfrac_settings("TRUNC_I"))
        common.add_argument("--eps0", type=float, default=None)
        common.add_argument("--eps-levels", type=int, default=None)
        common.add_argument("--a", type=float, default=0.0)
        common.add_argument("--b", type=float, default=None)
        common.add_argument("--t", type=float, default=None)
        common.add_argument("--format", choices=FORMATS, default=CSV)
        common.add_argument("--tol", type=float, default=None)
        common.add_argument("--workers", type=int, default=1)

        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        ml = subparsers.add_parser(
            "ml",
            parents=[common],
            help="evaluate the six-parameter Mittag-Leffler function; "
                 "a single --z prints the bare value, a --grid a z,value table",
        )
        ml.add_argument("--z", type=float, default=1.0)
        ml.add_argument("--grid", help="start:stop:count grid of z values")
        ml.add_argument("--fixed", action="store_true", help="sum the truncated series up to --trunc-i")

        deriv = subparsers.add_parser("deriv", parents=[common], help="apply the truncated V-fractional derivative")
        deriv.add_argument("--fn", required=True)
        deriv.add_argument("--grid")
        deriv.add_argument("--method", choices=METHODS, default="closed")
        deriv.add_argument("--numeric-derivative", action="store_true")

        integral = subparsers.add_parser("integral", parents=[common], help="apply the V-fractional integral")
        integral.add_argument("--fn", required=True)
        integral.add_argument("--grid")

        verify_parser = subparsers.add_parser("verify", parents=[common], help="run the theorem verifier")
        which = verify_parser.add_mutually_exclusive_group(required=True)
        which.add_argument("--rule", choices=[rule.value for rule in RuleId])
        which.add_argument("--all", dest="all_rules", action="store_true")
        verify_parser.add_argument("--record", action="store_true", help="store the reports in the database")

        table = subparsers.add_parser("table", parents=[common], help="tabulate f, its derivative and its integral")
        table.add_argument("--grid", required=True)
        table.add_argument("--fn")
        table.add_argument("--mu", type=float)
        table.add_argument("--kappa", type=float)
        table.add_argument("--numeric-derivative", action="store_true")

    def handle(self, *args, **options):
        try:
            cfg = RunConfig.from_options(options)
            if cfg.subcommand == "verify":
                return self.handle_verify(cfg)
            rows, fields = {
                "ml": ml_rows,
                "deriv": deriv_rows,
                "integral": integral_rows,
                "table": table_rows,
            }[cfg.subcommand](cfg)
        except (ValidationError, VFracError) as exc:
            raise CommandError(f"{_message(exc)} [input: {_echo(options)}]")
        if cfg.subcommand == "ml" and cfg.grid is None and cfg.fmt == CSV:
            # a single point prints the bare value
            self.stdout.write(format_value(rows[0]["value"]))
            return
        self.stdout.write(emit_table(rows, cfg.fmt, fields), ending="")

    def handle_verify(self, cfg):
        rules = list(RuleId) if cfg.all_rules else [RuleId(cfg.rule)]
        reports = _map_in_order(lambda rule: verify(rule, tol=cfg.tol), rules, cfg.workers)
        if cfg.record:
            for report in reports:
                VerificationRun.record(report)
            logger.info("recorded %d verification runs", len(reports))

        if cfg.fmt == JSON:
            data = VerificationReportSerializer(reports, many=True).data
            self.stdout.write(render_json(data if cfg.all_rules else data[0]), ending="")
        else:
            self.stdout.write(emit_table([summary_row(report) for report in reports], CSV), ending="")

        failed = [report.rule.value for report in reports if not report.passed]
        if failed:
            raise CommandError(f"verification failed: {', '.join(failed)}", returncode=2)


def _message(exc):
    if isinstance(exc, ValidationError):
        return "; ".join(exc.messages)
    return str(exc)


def _echo(options):
    keys = ("subcommand", "fn", "t", "grid", "z", "a", "b", "alpha", "n", "rule")
    return " ".join(f"{key}={options[key]}" for key in keys if options.get(key) is not None)
