"""Exact Weyl-algebra operators in (t, x) with symbolic parameters."""

from .coeffs import GaussianRational, ParamPoly
from .identities import (
    PHYSICAL,
    IdentityReport,
    box_operator,
    casimir,
    casimir_closed_form,
    casimir_kernel_identity,
    check_identity,
    gl_action_operator,
    heis_commutator_identity,
    heis_commutator_stated,
    heisenberg_generator,
    sl2_algebra_operator,
    sl2_generators,
)
from .operator import DT, DX, T, X, WeylOperator, op_bracket, op_mul, x_pow
from .parser import OperatorExpr, OperatorSyntaxError, format_operator, parse, parse_operator

__all__ = [
    "GaussianRational",
    "ParamPoly",
    "WeylOperator",
    "OperatorExpr",
    "OperatorSyntaxError",
    "op_mul",
    "op_bracket",
    "parse",
    "parse_operator",
    "format_operator",
    "x_pow",
    "T",
    "X",
    "DT",
    "DX",
    "PHYSICAL",
    "IdentityReport",
    "check_identity",
    "sl2_generators",
    "sl2_algebra_operator",
    "box_operator",
    "heisenberg_generator",
    "gl_action_operator",
    "casimir",
    "casimir_closed_form",
    "casimir_kernel_identity",
    "heis_commutator_identity",
    "heis_commutator_stated",
]
