"""Closed-form jets of the K-type functions.

Psi_{m,l}(theta, y) = exp(-i m theta / 2) exp(-y^2/2) y^l 1F1(a, b, y^2) with
a = (1 + 2l - m)/4 and b = l + 1/2.  The y-derivatives are assembled from the
exact derivatives of 1F1 rather than by differencing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .kummer import kummer_m_deriv


@dataclass(frozen=True)
class PsiJet:
    index: object  # anything with integer attributes q, l, m
    point: Tuple[float, float]
    value: complex
    d_theta: complex
    d_y: complex
    d_yy: complex
    condition: float = 1.0


def kummer_params(l: int, m: int) -> Tuple[Fraction, Fraction]:
    return Fraction(1 + 2 * l - m, 4), Fraction(2 * l + 1, 2)


def _mono(c: float, y: float, p: int) -> float:
    # terms with a zero coefficient are dropped, which keeps y = 0 finite
    if c == 0:
        return 0.0
    return c * y**p


def radial_jet(l: int, m: int, y: float):
    """Return ``(R, R', R'', condition)`` for R(y) = exp(-y^2/2) y^l 1F1(a, b, y^2)."""
    a, b = kummer_params(l, m)
    z = y * y
    M0 = kummer_m_deriv(a, b, z, 0)
    M1 = kummer_m_deriv(a, b, z, 1)
    M2 = kummer_m_deriv(a, b, z, 2)
    m0, m1, m2 = M0.value.real, M1.value.real, M2.value.real
    P = _mono(m0, y, l)
    P1 = _mono(l * m0, y, l - 1) + _mono(2 * m1, y, l + 1)
    P2 = (
        _mono(l * (l - 1) * m0, y, l - 2)
        + _mono((4 * l + 2) * m1, y, l)
        + _mono(4 * m2, y, l + 2)
    )
    g = math.exp(-z / 2)
    R = g * P
    R1 = g * (P1 - y * P)
    R2 = g * (P2 - 2 * y * P1 + (z - 1) * P)
    cond = max(M0.condition_estimate, M1.condition_estimate, M2.condition_estimate)
    return R, R1, R2, cond


def psi_jet(index, theta: float, y: float) -> PsiJet:
    """Value and partial derivatives of Psi at ``(theta, y)``.

    ``index`` needs integer attributes ``q, l, m``.  Admissibility
    (m = 2l + q mod 4) is checked here as well as in the index type.
    """
    q, l, m = int(index.q), int(index.l), int(index.m)
    if l < 0:
        raise ValueError("l must be nonnegative")
    if (m - 2 * l - q) % 4:
        raise ValueError(
            f"inadmissible K-type (q={q}, l={l}, m={m}): need m = {(2 * l + q) % 4} mod 4"
        )
    R, R1, R2, cond = radial_jet(l, m, float(y))
    phase = cmath.exp(-0.5j * m * theta)
    value = phase * R
    return PsiJet(
        index=index,
        point=(float(theta), float(y)),
        value=value,
        d_theta=(-0.5j * m) * value,
        d_y=phase * R1,
        d_yy=phase * R2,
        condition=cond,
    )


def psi_value(l: int, m: int, theta: float, y: float) -> complex:
    """Psi without admissibility checks; useful for fitting and transforms."""
    R, _, _, _ = radial_jet(l, m, float(y))
    return cmath.exp(-0.5j * m * theta) * R
