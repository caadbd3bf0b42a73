"""
Entry point of the ``vfrac`` command line and the run configuration it builds.

``run`` drives the ``vfrac`` management command through ``call_command`` so the
same parser and handlers serve ``manage.py vfrac`` and the standalone launcher.
"""
import os
import sys
from dataclasses import dataclass
from typing import Optional

from django.core.exceptions import ValidationError

from .derivatives import Order
from .special_functions import MLParams
from .tables import CSV, GridSpec

SUBCOMMANDS = ("ml", "deriv", "integral", "verify", "table")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: MLParams
    alpha: float
    n: Optional[int] = None
    trunc_i: int = 3
    fixed: bool = False
    eps0: Optional[float] = None
    eps_levels: Optional[int] = None
    a: float = 0.0
    b: Optional[float] = None
    t: Optional[float] = None
    z: float = 1.0
    fn: Optional[str] = None
    rule: Optional[str] = None
    all_rules: bool = False
    grid: Optional[GridSpec] = None
    fmt: str = CSV
    tol: Optional[float] = None
    method: str = "closed"
    numeric_derivative: bool = False
    record: bool = False
    workers: int = 1
    mu: Optional[float] = None
    kappa: Optional[float] = None

    def __post_init__(self):
        self.clean()

    def clean(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"unknown subcommand '{self.subcommand}'")
        if self.tol is not None and not self.tol > 0:
            raise ValidationError("--tol must be positive")
        if self.workers < 1:
            raise ValidationError("--workers must be at least 1")
        if self.subcommand in ("deriv", "table") and self.grid is not None and self.grid.start <= 0:
            raise ValidationError("the derivative needs a grid with start > 0")

    @classmethod
    def from_options(cls, options):
        """Builds the configuration from parsed command options."""
        params = MLParams(
            gamma_p=options["gamma"],
            beta_p=options["beta"],
            rho_p=options["rho"],
            delta_p=options["delta"],
            p=options["p"],
            q=options["q"],
        )
        grid = options.get("grid")
        if grid is not None:
            grid = GridSpec.parse(grid)
        elif options.get("t") is not None and options["subcommand"] != "ml":
            grid = GridSpec.single(options["t"])
        return cls(
            subcommand=options["subcommand"],
            params=params,
            alpha=options["alpha"],
            n=options.get("n"),
            trunc_i=options.get("trunc_i", 3),
            fixed=options.get("fixed", False),
            eps0=options.get("eps0"),
            eps_levels=options.get("eps_levels"),
            a=options.get("a") or 0.0,
            b=options.get("b"),
            t=options.get("t"),
            z=options.get("z", 1.0),
            fn=options.get("fn"),
            rule=options.get("rule"),
            all_rules=options.get("all_rules", False),
            grid=grid,
            fmt=options.get("format", CSV),
            tol=options.get("tol"),
            method=options.get("method", "closed"),
            numeric_derivative=options.get("numeric_derivative", False),
            record=options.get("record", False),
            workers=options.get("workers", 1),
            mu=options.get("mu"),
            kappa=options.get("kappa"),
        )

    @property
    def order(self):
        if self.n is not None:
            return Order(self.alpha, self.n)
        return Order.of(self.alpha)


def run(argv=None, stdout=None, stderr=None):
    """
    Runs ``vfrac`` with ``argv`` and returns the exit code: 0 on success, 1 on
    usage or numerical errors, 2 when a verification fails.
    """
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "fracsite.settings")
    import django
    from django.core.management import call_command
    from django.core.management.base import CommandError

    django.setup()
    argv = sys.argv[1:] if argv is None else [str(arg) for arg in argv]
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        call_command("vfrac", *argv, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f"vfrac: {exc}\n")
        return exc.returncode
    except SystemExit as exc:
        # --help and argparse's own exits
        return exc.code if isinstance(exc.code, int) else 0
    return 0
