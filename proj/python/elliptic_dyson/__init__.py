"""Elliptic Dyson models: special functions, correlation kernels, simulation and validation suites."""

import json

from ._core import (
    EllipticDysonError,
    Kernel,
    __version__,
    a_func,
    cal_n,
    d_mart,
    dedekind_eta,
    equilibrium_density,
    eta1,
    factorized_det,
    kernel_eq_trig,
    macdonald_det,
    p_interval,
    simulate,
    theta,
    weierstrass_p,
    weierstrass_zeta,
)
from ._core import run_suite as _run_suite


def run_suite(suite="identities", families=(), n=(), seed=42, mc_paths=100000, threads=0):
    """Run a validation suite and return the parsed report."""
    return json.loads(_run_suite(suite, list(families), list(n), seed, mc_paths, threads))


__all__ = [
    "EllipticDysonError",
    "Kernel",
    "__version__",
    "a_func",
    "cal_n",
    "d_mart",
    "dedekind_eta",
    "equilibrium_density",
    "eta1",
    "factorized_det",
    "kernel_eq_trig",
    "macdonald_det",
    "p_interval",
    "run_suite",
    "simulate",
    "theta",
    "weierstrass_p",
    "weierstrass_zeta",
]
