"""Residual certificates for the closed-form K-type solutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

from ..hyperfun.jets import psi_jet
from .lattice import KTypeIndex

DEFAULT_H = 1e-3


@dataclass(frozen=True)
class Residual:
    value: complex
    scale: float

    @property
    def relative(self) -> float:
        return abs(self.value) / self.scale


def cond_D_residual(index: KTypeIndex, y: float, theta: float = 0.0) -> Residual:
    """``y^2 Psi_yy - (2 lam - m y^2 + y^4) Psi`` from exact jets.

    The scale is ``max(1, |Psi|)``.
    """
    jet = psi_jet(index, theta, y)
    lam = float(index.lambda_())
    z = y * y
    res = z * jet.d_yy - (2 * lam - index.m * z + z * z) * jet.value
    return Residual(res, max(1.0, abs(jet.value)))


def schrodinger_fd(f: Callable[[float, float], complex], lam: float, t: float, x: float, h: float
                   ) -> Tuple[complex, float]:
    """Central-difference ``2i f_t + f_xx - 2 lam x^-2 f`` and the stencil max of |f|."""
    if abs(x) <= h:
        raise ValueError(f"x = {x} is within the step h = {h} of the singular line x = 0")
    f0 = f(t, x)
    ftp, ftm = f(t + h, x), f(t - h, x)
    fxp, fxm = f(t, x + h), f(t, x - h)
    ft = (ftp - ftm) / (2 * h)
    fxx = (fxp - 2 * f0 + fxm) / (h * h)
    res = 2j * ft + fxx - 2 * lam / (x * x) * f0
    scale = max(abs(v) for v in (f0, ftp, ftm, fxp, fxm))
    return res, scale


@dataclass(frozen=True)
class SchrodingerResidual:
    coarse: complex  # step h
    fine: complex  # step h/2
    extrapolated: complex
    scale: float

    @property
    def relative(self) -> float:
        return abs(self.extrapolated) / self.scale

    @property
    def order_ratio(self) -> float:
        return abs(self.coarse) / abs(self.fine) if self.fine else float("inf")


def schrodinger_residual(f, lam, t: float, x: float, h: float = DEFAULT_H) -> SchrodingerResidual:
    """Richardson-extrapolated FD residual of the inverse-square Schrodinger equation.

    Scale is ``max(1, max |f| over both stencils)``.
    """
    lam = float(lam)
    r1, s1 = schrodinger_fd(f, lam, t, x, h)
    r2, s2 = schrodinger_fd(f, lam, t, x, h / 2)
    extrap = (4 * r2 - r1) / 3
    return SchrodingerResidual(r1, r2, extrap, max(1.0, s1, s2))
