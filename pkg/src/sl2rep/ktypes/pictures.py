"""Compact (theta, y) and non-compact (t, x) function models and the maps between them.

Transport between the pictures uses

    F(theta, y) = cos(theta)^r exp(-s y^2 tan(theta)) f(tan(theta), y sec(theta))
    f(t, x)     = (1 + t^2)^(r/2) exp(s t x^2 / (1 + t^2)) F(arctan t, x / sqrt(1 + t^2))

These exponents make the transported K-types solve the Schrodinger equation;
the opposite sign of the power of cos (``printed_exponent=True``) is kept
for comparison and does not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from ..hyperfun.jets import psi_value
from .lattice import KTypeIndex

R_PHYS = -0.5
S_PHYS = 0.5j

COMPACT = "compact"
NONCOMPACT = "noncompact"


class PoleError(ValueError):
    """Evaluation at an odd multiple of pi/2, where tan has a pole."""


@dataclass(frozen=True)
class GridSpec:
    a0: float
    a1: float
    na: int
    b0: float
    b1: float
    nb: int

    @property
    def spacing(self) -> Tuple[float, float]:
        ha = (self.a1 - self.a0) / (self.na - 1) if self.na > 1 else 0.0
        hb = (self.b1 - self.b0) / (self.nb - 1) if self.nb > 1 else 0.0
        return ha, hb

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.linspace(self.a0, self.a1, self.na), np.linspace(self.b0, self.b1, self.nb)


@dataclass(frozen=True)
class PictureFunction:
    """A function in one of the two pictures.

    Exactly one representation is used: closed-form K-type components,
    an arbitrary evaluator, or samples on a grid.
    """

    picture: str
    q: int
    r: complex = R_PHYS
    s: complex = S_PHYS
    components: Tuple[Tuple[KTypeIndex, complex], ...] = ()
    evaluator: Optional[Callable[[float, float], complex]] = field(default=None, compare=False)
    grid: Optional[GridSpec] = None
    samples: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        if self.picture not in (COMPACT, NONCOMPACT):
            raise ValueError(f"unknown picture {self.picture!r}")

    def __call__(self, a: float, b: float) -> complex:
        if self.evaluator is not None:
            return complex(self.evaluator(a, b))
        if self.components:
            if self.picture != COMPACT:
                raise ValueError("closed-form K-type components live in the compact picture")
            return sum(c * psi_value(idx.l, idx.m, a, b) for idx, c in self.components)
        if self.samples is not None and self.grid is not None:
            return self._sample(a, b)
        return 0j

    def _sample(self, a, b) -> complex:
        ha, hb = self.grid.spacing
        ia = round((a - self.grid.a0) / ha) if ha else 0
        ib = round((b - self.grid.b0) / hb) if hb else 0
        if not (0 <= ia < self.grid.na and 0 <= ib < self.grid.nb):
            raise ValueError("point outside the sampled grid")
        if abs(self.grid.a0 + ia * ha - a) > 1e-9 * max(1.0, abs(a)) or abs(
            self.grid.b0 + ib * hb - b
        ) > 1e-9 * max(1.0, abs(b)):
            raise ValueError("grid functions can only be evaluated at grid nodes")
        return complex(self.samples[ia, ib])


def ktype_function(index: KTypeIndex, coeff: complex = 1.0, r=R_PHYS, s=S_PHYS) -> PictureFunction:
    """The compact-picture K-type Psi_{m,l} as a PictureFunction."""
    return PictureFunction(COMPACT, index.q, r, s, components=((index, coeff),))


def combination(terms: Sequence[Tuple[KTypeIndex, complex]], r=R_PHYS, s=S_PHYS) -> PictureFunction:
    qs = {idx.q for idx, _ in terms}
    if len(qs) != 1:
        raise ValueError("all components must share the same q")
    return PictureFunction(COMPACT, qs.pop(), r, s, components=tuple(terms))


def _cos_power(c: float, r: complex) -> complex:
    # principal real power; c > 0 inside the strip
    if isinstance(r, complex) and r.imag:
        return cmath.exp(r * math.log(c))
    return c ** float(r.real if isinstance(r, complex) else r)


def to_noncompact(F: PictureFunction, printed_exponent: bool = False) -> PictureFunction:
    """Non-compact picture function f(t, x) built from F(theta, y)."""
    if F.picture != COMPACT:
        raise ValueError("to_noncompact expects a compact-picture function")
    sign = -1.0 if printed_exponent else 1.0
    r, s = F.r, F.s

    def f(t: float, x: float) -> complex:
        u = 1.0 + t * t
        pref = _cos_power(u, sign * r / 2)
        return pref * cmath.exp(s * t * x * x / u) * F(math.atan(t), x / math.sqrt(u))

    return PictureFunction(NONCOMPACT, F.q, r, s, evaluator=f)


def reduce_theta(theta: float) -> Tuple[float, int]:
    """Write theta = theta0 + j pi with theta0 in [-pi/2, pi/2)."""
    j = math.floor((theta + math.pi / 2) / math.pi)
    return theta - j * math.pi, j


def to_compact(f: PictureFunction, printed_exponent: bool = False) -> PictureFunction:
    """Compact picture function F(theta, y) built from f(t, x).

    Outside the strip |theta| < pi/2 the parity rule
    F(theta + j pi, y) = i^(-jq) F(theta, (-1)^j y) extends the formula.
    """
    if f.picture != NONCOMPACT:
        raise ValueError("to_compact expects a non-compact-picture function")
    sign = -1.0 if printed_exponent else 1.0
    r, s, q = f.r, f.s, f.q

    def strip(theta: float, y: float) -> complex:
        c = math.cos(theta)
        if abs(c) < 1e-15:
            raise PoleError(f"theta = {theta} is an odd multiple of pi/2")
        tn = math.tan(theta)
        return _cos_power(c, sign * r) * cmath.exp(-s * y * y * tn) * f(tn, y / c)

    def F(theta: float, y: float) -> complex:
        theta0, j = reduce_theta(theta)
        if j == 0:
            return strip(theta0, y)
        return (1j) ** ((-j * q) % 4) * strip(theta0, (-1) ** (j % 2) * y)

    return PictureFunction(COMPACT, q, r, s, evaluator=F)


def parity_residual(F: PictureFunction, theta: float, y: float, j: int) -> complex:
    """F(theta + j pi, (-1)^j y) - i^(-jq) F(theta, y)."""
    if j == 0:
        return 0j
    lhs = F(theta + j * math.pi, (-1) ** (j % 2) * y)
    return lhs - (1j) ** ((-j * F.q) % 4) * F(theta, y)
