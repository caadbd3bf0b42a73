"""
Numerical defaults for the calculus app.

Values come from the ``VFRAC`` dictionary in Django settings; anything missing, or
everything when settings are not configured (library use outside a project), falls
back to ``DEFAULTS``.
"""
from django.conf import settings

DEFAULTS = {
    # Mittag-Leffler series
    "Z_MAX": 50.0,
    "ML_TOL": 1e-15,
    "ML_K_MAX": 1000,
    "ML_STOP_RUN": 3,
    # Truncated V-fractional derivative
    "TRUNC_I": 3,
    "EPS_SCALE": 1e-3,
    "EPS_RATIO": 0.5,
    "EPS_LEVELS": 6,
    "DERIV_TOL": 1e-6,
    "DEFAULT_ALPHA": 0.5,
    # Quadrature and root finding
    "QUAD_TOL": 1e-10,
    "QUAD_MAX_DEPTH": 40,
    "QUAD_MAX_SUBDIVISIONS": 200000,
    "ROOT_SCAN_CELLS": 256,
    "ROOT_TOL": 1e-12,
    # Verification tiers
    "CLOSED_FORM_TOL": 1e-10,
    "NUMERIC_TOL": 1e-6,
}


def vfrac_settings(key):
    """Return the configured value for ``key``."""
    if key not in DEFAULTS:
        raise KeyError(f"Unknown VFRAC setting: {key}")
    if settings.configured:
        return getattr(settings, "VFRAC", {}).get(key, DEFAULTS[key])
    return DEFAULTS[key]
