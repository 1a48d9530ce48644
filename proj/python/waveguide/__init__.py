"""Helmholtz scattering in symmetric branched waveguides."""

import math

from ._core import (
    ExceptionalCaseError,
    Geometry,
    SolveOptions,
    SolverError,
    ValidationError,
    augmented,
    branch_gamma,
    build_omega,
    build_staircase,
    combine,
    limit_mixed,
    limit_neumann,
    mobius_circle_2,
    predicted_periods,
    r_asy,
    refine,
    s22_asy,
    solve_full,
    solve_half,
    sweep,
    symmetry_residual,
    threshold_lambda,
    trapped_candidate,
    unitarity_residual,
)

#: Wavenumber used throughout the reference computations.
K_DEFAULT = 0.8 * math.pi

__all__ = [
    "ExceptionalCaseError",
    "Geometry",
    "K_DEFAULT",
    "SolveOptions",
    "SolverError",
    "ValidationError",
    "augmented",
    "branch_gamma",
    "build_omega",
    "build_staircase",
    "combine",
    "limit_mixed",
    "limit_neumann",
    "mobius_circle_2",
    "predicted_periods",
    "r_asy",
    "refine",
    "s22_asy",
    "solve_full",
    "solve_half",
    "sweep",
    "symmetry_residual",
    "threshold_lambda",
    "trapped_candidate",
    "unitarity_residual",
]
