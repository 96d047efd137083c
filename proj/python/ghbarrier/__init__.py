"""Barrier and stability computations for Gibbons-Hawking metrics."""

import json

from . import _core
from ._core import (
    GhbError,
    PointConfiguration,
    constant_C,
    constant_Rk,
    counterexample_closed_form,
    k_smallest_eigensum,
    sphere_codim2_margins,
    sphere_hyp_margin,
    strong_stability_scan,
    symmetric_eigenvalues,
)

__all__ = [
    "GhbError",
    "PointConfiguration",
    "cli",
    "constant_C",
    "constant_Rk",
    "convexity_scan",
    "counterexample_closed_form",
    "critical_points",
    "k_smallest_eigensum",
    "lifted_sff",
    "sphere_codim2_margins",
    "sphere_hyp_margin",
    "strong_stability_scan",
    "symmetric_eigenvalues",
]


def lifted_sff(config, surface, params):
    """Lifted second fundamental form at chart parameters of a surface dict."""
    return _core.lifted_sff(config, json.dumps(surface), params)


def convexity_scan(config, surface, k, grid=64, random=1000, seed=0):
    return json.loads(_core.convexity_scan(config, json.dumps(surface), k, grid, random, seed))


def critical_points(config, random_seeds=1000, seed=0):
    return json.loads(_core.critical_points(config, random_seeds, seed))


def cli(*args):
    """Runs the command line front end in process: (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
