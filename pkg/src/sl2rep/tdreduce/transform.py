"""Carry free-picture solutions to a time-dependent potential and certify them.

``f~(t, x) = rho(t, x) f(gamma(t, x))`` with gamma from the chi-system.  Two
multipliers are offered:

* ``verbatim``: ``exp(int_0^t [B_2/chi_2^2 + ((phi_2' x/2 + A_2)/chi_2^2)^2] du)``
  with x held at the outer value, so the exponent is quadratic in x with
  coefficients given by three quadratures;
* ``corrected``: ``chi_2^(-1/2) exp(i chi_2' x^2 / (2 chi_2) - i C_2 x / chi_2
  - (i/2) int C_2^2/chi_2^2 - i int g0)``, the multiplier that makes the
  residual vanish.

The PDE residual ``2i f_t + f_xx - 2 V f`` is the judge between them.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .chi import ChiSystem, _cumulative, gamma_map
from .potential import PotentialSpec

MULTIPLIERS = ("verbatim", "corrected")
PASS_TOL = 1e-5
X_EXCLUSION = 0.1


class TransformError(ValueError):
    pass


@dataclass
class GridFunction:
    t: np.ndarray
    x: np.ndarray
    samples: np.ndarray  # shape (len(t), len(x)), complex

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (len(self.t), len(self.x)):
            raise TransformError("samples shape does not match the grid")
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise TransformError("t axis must be strictly increasing")
        if len(self.x) > 1 and not np.all(np.diff(self.x) > 0):
            raise TransformError("x axis must be strictly increasing")
        if not np.all(np.isfinite(self.samples)):
            raise TransformError("samples must be finite")

    @property
    def spacing(self) -> Tuple[float, float]:
        ht = float(self.t[1] - self.t[0]) if len(self.t) > 1 else 0.0
        hx = float(self.x[1] - self.x[0]) if len(self.x) > 1 else 0.0
        return ht, hx

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "re", "im"])
        for i, t in enumerate(self.t):
            for j, x in enumerate(self.x):
                v = self.samples[i, j]
                w.writerow([f"{t:.17g}", f"{x:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
        return buf.getvalue()


def parse_grid(text: str):
    """``t0:t1:nt,x0:x1:nx`` -> (t axis, x axis)."""
    try:
        tpart, xpart = text.split(",")
        axes = []
        for part in (tpart, xpart):
            a, b, n = part.split(":")
            n = int(n)
            if n < 1:
                raise ValueError("node count must be positive")
            axes.append(np.linspace(float(a), float(b), n))
    except ValueError as exc:
        raise TransformError(f"grid must look like t0:t1:nt,x0:x1:nx ({exc})") from exc
    return axes[0], axes[1]


def _spline(cs: ChiSystem, integrand: np.ndarray) -> CubicHermiteSpline:
    i0 = int(np.argmin(np.abs(cs.grid)))
    return CubicHermiteSpline(cs.grid, _cumulative(integrand, cs.step, i0), integrand)


def _poly_integral(p, t):
    """int_0^t of a coefficient polynomial, exactly in the coefficients."""
    c = np.polynomial.polynomial.polyint(p.coeffs)
    return np.polynomial.polynomial.polyval(t, c)


def multiplier_exponent(cs: ChiSystem, t: np.ndarray, x: np.ndarray, kind: str = "verbatim"):
    """Log of the multiplier on the mesh ``t[:, None], x[None, :]``."""
    if kind not in MULTIPLIERS:
        raise TransformError(f"multiplier must be one of {MULTIPLIERS}")
    spec = cs.spec
    T = np.asarray(t, float)[:, None]
    X = np.asarray(x, float)[None, :]
    if spec.is_free:
        # chi_2 = 1, A_2 = C_2 = D_2 = 0: only the g0 phase survives
        G0 = _poly_integral(spec.g0, T)
        phase = 1j * G0 if kind == "verbatim" else -1j * G0
        return phase + 0 * X
    if kind == "corrected":
        c2 = cs.interp("chi2", T)
        d2 = cs.interp("dchi2", T)
        C2 = cs.interp("C2", T)
        Q = cs.interp("Q", T)
        G0 = cs.interp("G0", T)
        return (-0.5 * np.log(c2 + 0j) + 1j * d2 * X * X / (2 * c2) - 1j * C2 * X / c2
                - 0.5j * Q - 1j * G0)
    f = cs.fields_at(cs.grid)
    c2sq = f["chi2"] ** 2
    i2 = -0.25j * f["ddphi2"] / c2sq + (0.5 * f["dphi2"]) ** 2 / c2sq**2
    i1 = -1j * f["dA2"] / c2sq + f["dphi2"] * f["A2"] / c2sq**2
    i0 = (0.25 * f["dphi2"] + 1j * f["g0"] * f["phi2"] + 1j * f["D2"]) / c2sq + f["A2"] ** 2 / c2sq**2
    I = [_spline(cs, np.asarray(v, complex) * np.ones_like(cs.grid)) for v in (i0, i1, i2)]
    return I[0](T) + I[1](T) * X + I[2](T) * X * X


def transform_solution(cs: ChiSystem, f: Callable[[float, float], complex], t, x,
                       multiplier: str = "verbatim") -> GridFunction:
    """Sample ``rho(t, x) f(gamma(t, x))`` on the grid ``t x x``."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if cs.spec.is_free:
        th, xi = np.broadcast_to(t[:, None], (len(t), len(x))), np.broadcast_to(x[None, :], (len(t), len(x)))
    else:
        th, xi = gamma_map(cs, t[:, None], x[None, :])
        th = np.broadcast_to(th, xi.shape)
    vals = np.empty(xi.shape, dtype=complex)
    for i in range(xi.shape[0]):
        for j in range(xi.shape[1]):
            try:
                vals[i, j] = f(float(th[i, j]), float(xi[i, j]))
            except (ValueError, ZeroDivisionError) as exc:
                raise TransformError(
                    f"gamma-image ({th[i, j]:.6g}, {xi[i, j]:.6g}) of grid point "
                    f"({t[i]:.6g}, {x[j]:.6g}) is outside the domain of f: {exc}"
                ) from exc
    rho = np.exp(multiplier_exponent(cs, t, x, multiplier))
    return GridFunction(t, x, rho * vals)


@dataclass
class ResidualReport:
    spec: str
    max_residual: float
    profile: List[dict]
    verdict: str
    multiplier: str = ""
    tolerance: float = PASS_TOL

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "max_residual": self.max_residual,
            "profile": self.profile,
            "verdict": self.verdict,
            "multiplier": self.multiplier,
            "tolerance": self.tolerance,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _grid_residual(F: np.ndarray, t, x, V: np.ndarray, k: int) -> np.ndarray:
    """Central-difference residual with stencil k*h at nodes [2:-2, 2:-2]."""
    ht, hx = (t[1] - t[0]) * k, (x[1] - x[0]) * k
    n, m = F.shape
    c = F[2:n - 2, 2:m - 2]
    ft = (F[2 + k:n - 2 + k, 2:m - 2] - F[2 - k:n - 2 - k, 2:m - 2]) / (2 * ht)
    fxx = (F[2:n - 2, 2 + k:m - 2 + k] - 2 * c + F[2:n - 2, 2 - k:m - 2 - k]) / (hx * hx)
    return 2j * ft + fxx - 2 * V[2:n - 2, 2:m - 2] * c


def td_residual(gf: GridFunction, spec: PotentialSpec, probes: Optional[Sequence[Tuple[float, float]]] = None,
                tol: float = PASS_TOL, multiplier: str = "") -> ResidualReport:
    """Richardson-combined residual of ``2i f_t + f_xx - 2V f`` on grid nodes.

    Stencils of width 2h and h are combined as ``(4 R_h - R_2h) / 3`` and
    divided by ``max(1, |f~|)`` at the node.  Nodes within two spacings of the
    grid edge, and with ``|x| < 0.1`` when lambda != 0, are skipped.  The
    verdict is PASS when the maximum is at most ``tol``.
    """
    t, x, F = gf.t, gf.x, gf.samples
    if len(t) < 5 or len(x) < 5:
        raise TransformError("td_residual needs at least 5 nodes on each axis")
    ht, hx = gf.spacing
    if not np.allclose(np.diff(t), ht) or not np.allclose(np.diff(x), hx):
        raise TransformError("td_residual needs a uniform grid")
    T, X = np.meshgrid(t, x, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        V = spec.V(T, X)
    r1 = _grid_residual(F, t, x, V, 1)
    r2 = _grid_residual(F, t, x, V, 2)
    ext = (4 * r1 - r2) / 3
    core = F[2:-2, 2:-2]
    rel = np.abs(ext) / np.maximum(1.0, np.abs(core))
    tc, xc = t[2:-2], x[2:-2]
    mask = np.ones(rel.shape, dtype=bool)
    if spec.lam != 0:
        mask &= np.abs(xc)[None, :] >= X_EXCLUSION
    if probes is not None:
        pm = np.zeros_like(mask)
        for pt, px in probes:
            i, j = int(np.argmin(np.abs(tc - pt))), int(np.argmin(np.abs(xc - px)))
            pm[i, j] = True
        mask &= pm
    if not mask.any():
        raise TransformError("no admissible probe nodes")
    rel = np.where(mask, rel, 0.0)
    profile = [
        {"t": float(tc[i]), "x": float(xc[j]), "residual": float(rel[i, j])}
        for i, j in zip(*np.nonzero(mask))
    ]
    worst = float(rel.max())
    verdict = "PASS" if worst <= tol else "MULTIPLIER-DISCREPANCY"
    return ResidualReport(spec.canonical(), worst, profile, verdict, multiplier, tol)


def free_gaussian(t, x):
    """``(1 + i t)^(-1/2) exp(-x^2 / (2 (1 + i t)))``, a solution of ``2i f_t + f_xx = 0``."""
    z = 1 + 1j * t
    return np.exp(-x * x / (2 * z)) / np.sqrt(z)


def with_lambda(spec: PotentialSpec, lam) -> PotentialSpec:
    """``spec`` with the inverse-square coupling set to lam (constraints rechecked)."""
    return replace(spec, lam=Fraction(lam))
