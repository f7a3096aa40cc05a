"""One-parameter subgroup actions in the non-compact picture.

Two conventions are implemented.

``derived`` (default) is the action whose derivatives at the identity are
exactly the algebra operators:

    SL2:  (g.f)(t, x) = (a - ct)^r exp(-s c x^2 / (a - ct)) f((dt - b)/(a - ct), x/(a - ct))
    Heis: ((u,v,w).f)(t, x) = exp(s(w - 2vx - t v^2 + uv)) f(t, x - u + tv)

``printed`` is the formula as published, with the extra factor
(a - ct)^(-q/2) eps(g^-1 . (t + z)) evaluated at the probe z = i, and the
Heisenberg line exp(-s(uv - 2vx - t v^2 + w)) f(t, x - u - tv).  Its
derivatives disagree with the algebra operators (see derivative_check).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from ..ktypes.pictures import R_PHYS, S_PHYS
from ..weyl.identities import heisenberg_generator, sl2_algebra_operator
from ..weyl.operator import WeylOperator

Func = Callable[[float, float], complex]

SUBGROUPS = ("N", "A", "Nbar", "K", "Heis")
EPS_PROBE_Z = 1j


class ChartError(ValueError):
    """a - ct <= 0: outside the chart where the principal branch is used."""


def subgroup_matrix(name: str, tau: float) -> Tuple[float, float, float, float]:
    if name == "N":
        return 1.0, tau, 0.0, 1.0
    if name == "A":
        return math.exp(tau), 0.0, 0.0, math.exp(-tau)
    if name == "Nbar":
        return 1.0, 0.0, tau, 1.0
    if name == "K":
        c, s = math.cos(tau), math.sin(tau)
        return c, s, -s, c
    raise ValueError(f"unknown SL2 subgroup {name!r}")


def subgroup_epsilon(name: str, tau: float, z: complex) -> complex:
    """Square-root cocycle for the explicit one-parameter subgroups (principal root)."""
    if name == "N":
        return 1.0
    if name == "A":
        return math.exp(-tau / 2)
    if name == "Nbar":
        return cmath.sqrt(tau * z + 1)
    if name == "K":
        return cmath.sqrt(math.cos(tau) - z * math.sin(tau))
    raise ValueError(f"unknown SL2 subgroup {name!r}")


def algebra_element(name: str) -> Tuple[float, float, float]:
    """(a, b, c) of the Lie algebra element [[a, b], [c, -a]] generating the subgroup."""
    return {"N": (0, 1, 0), "A": (1, 0, 0), "Nbar": (0, 0, 1), "K": (0, 1, -1)}[name]


def sl2_act(name: str, tau: float, f: Func, r=R_PHYS, s=S_PHYS, q: int = 0,
            convention: str = "derived") -> Func:
    a, b, c, d = subgroup_matrix(name, tau)

    def g_f(t: float, x: float) -> complex:
        den = a - c * t
        if den <= 0:
            raise ChartError(f"a - ct = {den} <= 0 at t = {t}")
        core = cmath.exp(-s * c * x * x / den) * f((d * t - b) / den, x / den)
        if convention == "derived":
            return den**r * core
        if convention == "printed":
            w = t + EPS_PROBE_Z
            ginv_w = (d * w - b) / (-c * w + a)
            eps = subgroup_epsilon(name, tau, ginv_w)
            return den ** (r - q / 2) * eps * core
        raise ValueError(f"unknown convention {convention!r}")

    return g_f


def heis_act(u: float, v: float, w: float, f: Func, s=S_PHYS, convention: str = "derived") -> Func:
    def g_f(t: float, x: float) -> complex:
        if convention == "derived":
            return cmath.exp(s * (w - 2 * v * x - t * v * v + u * v)) * f(t, x - u + t * v)
        if convention == "printed":
            return cmath.exp(-s * (u * v - 2 * v * x - t * v * v + w)) * f(t, x - u - t * v)
        raise ValueError(f"unknown convention {convention!r}")

    return g_f


DEFAULT_HEIS_DIRECTION = (0.3, -0.7, 0.5)


def act(subgroup: str, tau: float, f: Func, direction=DEFAULT_HEIS_DIRECTION, **kw) -> Func:
    """The action of the subgroup element with parameter tau.

    For ``Heis`` the element is ``tau * direction`` in (u, v, w) coordinates.
    """
    if subgroup == "Heis":
        u, v, w = (tau * comp for comp in direction)
        kw.pop("q", None)
        kw.pop("r", None)
        return heis_act(u, v, w, f, **kw)
    return sl2_act(subgroup, tau, f, **kw)


def group_action(subgroup: str, tau: float, f: Func, t: float, x: float, **kw) -> complex:
    return act(subgroup, tau, f, **kw)(t, x)


def subgroup_operator(subgroup: str, direction=DEFAULT_HEIS_DIRECTION) -> WeylOperator:
    """The algebra operator the subgroup's derivative at the identity should equal."""
    if subgroup == "Heis":
        return heisenberg_generator(*[_exact(c) for c in direction])
    return sl2_algebra_operator(*algebra_element(subgroup))


def _exact(v):
    from fractions import Fraction

    return Fraction(v).limit_denominator(10**9)


# smooth probes with exact derivatives ------------------------------------------


def _pmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((A.shape[0] + B.shape[0] - 1, A.shape[1] + B.shape[1] - 1), dtype=complex)
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            if A[i, j]:
                out[i : i + B.shape[0], j : j + B.shape[1]] += A[i, j] * B
    return out


def _pder(A: np.ndarray, axis: int) -> np.ndarray:
    out = np.polynomial.polynomial.polyder(A, axis=axis)
    if out.size == 0 or 0 in out.shape:
        return np.zeros((1, 1), dtype=complex)
    return out


def _padd(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((max(A.shape[0], B.shape[0]), max(A.shape[1], B.shape[1])), dtype=complex)
    out[: A.shape[0], : A.shape[1]] += A
    out[: B.shape[0], : B.shape[1]] += B
    return out


@dataclass
class ExpQuadraticProbe:
    """f = exp(P(t, x)) with P a complex quadratic; derivatives are exact.

    ``coeffs`` holds P's coefficients keyed by (t-power, x-power).
    """

    coeffs: Dict[Tuple[int, int], complex]

    def __post_init__(self):
        P = np.zeros((3, 3), dtype=complex)
        for (i, j), c in self.coeffs.items():
            P[i, j] = c
        self._P = P
        self._cache: Dict[Tuple[int, int], np.ndarray] = {(0, 0): np.ones((1, 1), dtype=complex)}

    def _factor(self, k: int, l: int) -> np.ndarray:
        # d_t^k d_x^l exp(P) = Q_{k,l} exp(P)
        key = (k, l)
        if key in self._cache:
            return self._cache[key]
        if l > 0:
            Q = self._factor(k, l - 1)
            out = _padd(_pder(Q, 1), _pmul(_pder(self._P, 1), Q))
        else:
            Q = self._factor(k - 1, 0)
            out = _padd(_pder(Q, 0), _pmul(_pder(self._P, 0), Q))
        self._cache[key] = out
        return out

    def __call__(self, t: float, x: float) -> complex:
        return cmath.exp(np.polynomial.polynomial.polyval2d(t, x, self._P))

    def deriv(self, k: int, l: int, t: float, x: float) -> complex:
        Q = self._factor(k, l)
        return complex(np.polynomial.polynomial.polyval2d(t, x, Q)) * self(t, x)


DEFAULT_PROBE = ExpQuadraticProbe(
    {(2, 0): -0.4, (0, 2): -0.5 + 0.2j, (1, 1): 0.1j, (1, 0): 0.3, (0, 1): -0.2 + 0.1j}
)


def apply_operator(op: WeylOperator, probe: ExpQuadraticProbe, t: float, x: float,
                   params=None) -> complex:
    """Evaluate ``op`` applied to an exact-derivative probe at (t, x)."""
    params = params or {"r": R_PHYS, "s": S_PHYS}
    total = 0j
    for (i, j, k, l), c in op.terms.items():
        total += c.evaluate(params) * t**i * x**j * probe.deriv(k, l, t, x)
    return total


@dataclass
class DerivativeCheck:
    subgroup: str
    point: Tuple[float, float]
    derivative: complex
    operator_value: complex
    deviation: float
    scale: float

    @property
    def relative(self) -> float:
        return self.deviation / self.scale


def derivative_check(subgroup: str, probe: ExpQuadraticProbe = DEFAULT_PROBE, t: float = 0.3,
                     x: float = 0.7, delta: float = 1e-3, convention: str = "derived",
                     q: int = 0, direction=DEFAULT_HEIS_DIRECTION) -> DerivativeCheck:
    """Richardson-extrapolated d/dtau of the action at tau = 0, minus the algebra operator."""
    kw = dict(convention=convention, direction=direction)
    if subgroup != "Heis":
        kw["q"] = q

    def central(dl):
        plus = group_action(subgroup, dl, probe, t, x, **kw)
        minus = group_action(subgroup, -dl, probe, t, x, **kw)
        return (plus - minus) / (2 * dl)

    d1, d2 = central(delta), central(delta / 2)
    deriv = (4 * d2 - d1) / 3
    opv = apply_operator(subgroup_operator(subgroup, direction), probe, t, x)
    scale = max(1.0, abs(probe(t, x)), abs(opv))
    return DerivativeCheck(subgroup, (t, x), deriv, opv, abs(deriv - opv), scale)
