"""Finite-window verification of invariant subspaces and composition series."""

from .series import ChainMember, SeriesReport, Subquotient, chain_for, composition_series
from .truncated import (
    MATRIX_GENERATORS,
    InvarianceReport,
    IrreducibilityReport,
    TruncatedModule,
    Window,
    WindowError,
    build_truncated,
    commutator_check,
    detect_extremal,
    verify_invariance,
    verify_irreducible_quotient,
)

__all__ = [
    "ChainMember",
    "SeriesReport",
    "Subquotient",
    "chain_for",
    "composition_series",
    "MATRIX_GENERATORS",
    "InvarianceReport",
    "IrreducibilityReport",
    "TruncatedModule",
    "Window",
    "WindowError",
    "build_truncated",
    "commutator_check",
    "detect_extremal",
    "verify_invariance",
    "verify_irreducible_quotient",
]
