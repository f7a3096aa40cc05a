"""Confluent hypergeometric evaluation and K-type jets."""

from .jets import PsiJet, kummer_params, psi_jet, psi_value, radial_jet
from .kummer import (
    InvalidParameterError,
    KummerError,
    KummerEval,
    NonConvergenceError,
    PrecisionLossError,
    contiguous_residual,
    contiguous_terms,
    kummer_m,
    kummer_m_deriv,
    kummer_ode_residual,
    sample_grid,
    pochhammer_ratio,
    precision_mode,
)

__all__ = [
    "KummerEval",
    "KummerError",
    "InvalidParameterError",
    "NonConvergenceError",
    "PrecisionLossError",
    "kummer_m",
    "kummer_m_deriv",
    "pochhammer_ratio",
    "contiguous_residual",
    "contiguous_terms",
    "kummer_ode_residual",
    "sample_grid",
    "precision_mode",
    "PsiJet",
    "psi_jet",
    "psi_value",
    "radial_jet",
    "kummer_params",
]
