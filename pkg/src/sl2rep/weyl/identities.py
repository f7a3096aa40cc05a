"""The named operators and identity checks of the non-compact picture."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Tuple

from .coeffs import GaussianRational
from .operator import DT, DX, T, X, WeylOperator, op_bracket, x_pow
from .parser import format_operator

R = WeylOperator.param("r")
S = WeylOperator.param("s")
LAM = WeylOperator.param("lam")
U = WeylOperator.param("u")
V = WeylOperator.param("v")
W = WeylOperator.param("w")

# the specialization used throughout the Schrödinger analysis
PHYSICAL = {"r": Fraction(-1, 2), "s": GaussianRational(0, Fraction(1, 2))}


def sl2_generators() -> Tuple[WeylOperator, WeylOperator, WeylOperator]:
    """Return ``(h, e+, e-)`` with symbolic r, s."""
    h = -X * DX - 2 * T * DT + R
    e_plus = -DT
    e_minus = T * X * DX + T * T * DT - (S * X * X + R * T)
    return h, e_plus, e_minus


def box_operator() -> WeylOperator:
    """The free Schrödinger operator ``2 i dt + dx^2``."""
    return WeylOperator.scalar(GaussianRational(0, 2)) * DT + DX * DX


def heisenberg_generator(u=None, v=None, w=None) -> WeylOperator:
    """``(t v - u) dx + s (w - 2 v x)``; omitted coordinates stay symbolic."""
    u = U if u is None else WeylOperator.coerce(u)
    v = V if v is None else WeylOperator.coerce(v)
    w = W if w is None else WeylOperator.coerce(w)
    return (T * v - u) * DX + S * (w - 2 * v * X)


def sl2_algebra_operator(a, b, c) -> WeylOperator:
    """Operator of the Lie algebra element ``[[a, b], [c, -a]]``.

    ``(ct - a) x dx + (ct^2 - 2at - b) dt + (ra - csx^2 - rct)``.
    """
    a, b, c = (Fraction(z) for z in (a, b, c))
    return (
        (c * T - a) * X * DX
        + (c * T * T - 2 * a * T - b) * DT
        + (R * a - S * c * X * X - R * c * T)
    )


def gl_action_operator(a, b, c, d) -> WeylOperator:
    """The displayed operator for the matrix ``[[a, b], [c, d]]`` with ``ad - bc = 1``.

    The determinant is checked exactly; ``d`` plays no other role, since
    the operator only involves ``a, b, c``.
    """
    a, b, c, d = (Fraction(z) for z in (a, b, c, d))
    if a * d - b * c != 1:
        raise ValueError(f"determinant ad - bc = {a * d - b * c}, expected 1")
    return sl2_algebra_operator(a, b, c)


def casimir() -> Tuple[WeylOperator, WeylOperator]:
    """``(Omega, Omega')`` built by composition from the sl2 triple."""
    h, ep, em = sl2_generators()
    omega = Fraction(1, 2) * h * h - h + 2 * ep * em
    omega_prime = 2 * omega - R * (R + 2)
    return omega, omega_prime


def casimir_closed_form() -> WeylOperator:
    """``(4 s x^2 dt + x^2 dx^2 - (1+2r) x dx + r(r+2)) / 2``."""
    return Fraction(1, 2) * (
        4 * S * X * X * DT + X * X * DX * DX - (1 + 2 * R) * X * DX + R * (R + 2)
    )


def casimir_kernel_identity() -> WeylOperator:
    """``Omega' - 2 lam - x^2 (box - 2 lam x^-2)`` at the physical point."""
    _, omega_prime = casimir()
    lhs = omega_prime - 2 * LAM - X * X * (box_operator() - 2 * LAM * x_pow(-2))
    return lhs.subs(PHYSICAL)


def heis_commutator_identity(u=None, v=None, w=None) -> WeylOperator:
    """``[box - 2 lam x^-2, X(u, v, w)]`` with ``s = i/2`` substituted."""
    left = box_operator() - 2 * LAM * x_pow(-2)
    return op_bracket(left, heisenberg_generator(u, v, w)).subs({"s": PHYSICAL["s"]})


def heis_commutator_stated() -> WeylOperator:
    """Right-hand side as stated for the inverse-square commutator: ``4 lam (t v - u) x^-3``."""
    return 4 * LAM * (T * V - U) * x_pow(-3)


@dataclass
class IdentityReport:
    lhs: str
    rhs: str
    equal: bool
    difference: str

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def check_identity(lhs: WeylOperator, rhs: WeylOperator) -> IdentityReport:
    diff = lhs - rhs
    return IdentityReport(
        lhs=format_operator(lhs),
        rhs=format_operator(rhs),
        equal=diff.is_zero(),
        difference=format_operator(diff),
    )


__all__ = [
    "PHYSICAL",
    "sl2_generators",
    "box_operator",
    "heisenberg_generator",
    "gl_action_operator",
    "sl2_algebra_operator",
    "casimir",
    "casimir_closed_form",
    "casimir_kernel_identity",
    "heis_commutator_identity",
    "heis_commutator_stated",
    "IdentityReport",
    "check_identity",
]
