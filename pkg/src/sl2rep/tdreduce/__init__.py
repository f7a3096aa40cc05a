"""Reduction of Schrödinger equations with time-dependent quadratic potentials."""

from .chi import (
    L_SIGNS,
    WRONSKIAN_CONVENTION,
    BracketResidual,
    ChiIdentityResiduals,
    ChiSystem,
    ChiSystemError,
    LOperator,
    bracket_residual_L,
    chi_identities_residual,
    default_probes,
    gamma_map,
    gaussian_probe,
    generators_L,
    solve_chi,
)
from .potential import PRESETS, Poly, PotentialSpec, PotentialSpecError, parse_poly, parse_potential
from .transform import (
    MULTIPLIERS,
    PASS_TOL,
    GridFunction,
    ResidualReport,
    TransformError,
    free_gaussian,
    multiplier_exponent,
    parse_grid,
    td_residual,
    transform_solution,
    with_lambda,
)

__all__ = [
    "L_SIGNS", "WRONSKIAN_CONVENTION", "BracketResidual", "ChiIdentityResiduals", "ChiSystem",
    "ChiSystemError", "LOperator", "bracket_residual_L", "chi_identities_residual",
    "default_probes", "gamma_map", "gaussian_probe", "generators_L", "solve_chi",
    "PRESETS", "Poly", "PotentialSpec", "PotentialSpecError", "parse_poly", "parse_potential",
    "MULTIPLIERS", "PASS_TOL", "GridFunction", "ResidualReport", "TransformError",
    "free_gaussian", "multiplier_exponent", "parse_grid", "td_residual", "transform_solution",
    "with_lambda",
]
