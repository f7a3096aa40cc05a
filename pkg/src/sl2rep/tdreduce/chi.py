"""The chi-system of a time-dependent quadratic potential.

chi_2 solves chi'' + 2 g2 chi = 0 with chi_2(0) = 1, chi_2'(0) = 0 and
chi_1 = chi_2 * Theta with Theta(t) = int_0^t chi_2^-2.  This normalisation
gives chi_1' chi_2 - chi_1 chi_2' = +1.  A second chi_1 is integrated
directly (chi_1(0) = 0, chi_1'(0) = 1) so the Wronskian and the integral
formula can be checked against each other.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicHermiteSpline

from .potential import PotentialSpec

CHI_FLOOR = 1e-3
MIN_INTERVAL = 0.2
WRONSKIAN_CONVENTION = "chi1' chi2 - chi1 chi2' = +1"


class ChiSystemError(ValueError):
    pass


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _march(spec: PotentialSpec, h: float, n: int):
    """RK4 march from t=0 with step h (signed); step doubling gives the error estimate.

    The state holds (chi_2, chi_2', chi_1, chi_1') for the two initial conditions.
    Stops early when |chi_2| falls below the floor or changes sign; a coarse
    step can jump over the floor band when chi_2 crosses zero steeply.
    """
    g2 = spec.g2

    def rhs(t, y):
        c = -2.0 * g2(t)
        return np.array([y[1], c * y[0], y[3], c * y[2]])

    y = np.array([1.0, 0.0, 0.0, 1.0])
    ts, ys, errs = [0.0], [y], [0.0]
    err = 0.0
    for k in range(n):
        t = k * h
        full = _rk4_step(rhs, t, y, h)
        half = _rk4_step(rhs, t + h / 2, _rk4_step(rhs, t, y, h / 2), h / 2)
        err += float(np.max(np.abs(half - full))) / 15.0
        if abs(half[0]) < CHI_FLOOR or half[0] <= 0:
            break
        y = half
        ts.append((k + 1) * h)
        ys.append(y)
        errs.append(err)
    return np.array(ts), np.array(ys), np.array(errs)


def _cumulative(values: np.ndarray, h: float, i0: int) -> np.ndarray:
    """int_0^t of sampled values on a uniform grid whose t=0 node is ``i0``."""
    if np.iscomplexobj(values):
        return _cumulative(values.real, h, i0) + 1j * _cumulative(values.imag, h, i0)
    if np.all(values == values[i0]):
        # constant integrand: exact
        return values[i0] * (np.arange(len(values)) - i0) * h
    out = np.zeros_like(values)
    fwd = values[i0:]
    if len(fwd) > 1:
        out[i0:] = cumulative_simpson(fwd, dx=h, initial=0)
    back = values[: i0 + 1][::-1]
    if len(back) > 1:
        out[: i0 + 1] = -cumulative_simpson(back, dx=h, initial=0)[::-1]
    return out


@dataclass
class ChiSystem:
    spec: PotentialSpec
    step: float
    grid: np.ndarray
    chi2: np.ndarray
    dchi2: np.ndarray
    chi1_ode: np.ndarray
    dchi1_ode: np.ndarray
    theta: np.ndarray  # int_0^t chi_2^-2
    C1: np.ndarray
    C2: np.ndarray
    K: np.ndarray  # int_0^t C_2 chi_2^-2
    G0: np.ndarray  # int_0^t g0
    Q: np.ndarray  # int_0^t C_2^2 chi_2^-2
    err_estimate: np.ndarray
    truncated: bool = False
    wronskian_convention: str = WRONSKIAN_CONVENTION
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        self._splines: Dict[str, CubicHermiteSpline] = {}

    # interpolation --------------------------------------------------------
    @property
    def t_min(self) -> float:
        return float(self.grid[0])

    @property
    def t_max(self) -> float:
        return float(self.grid[-1])

    def _derivative_of(self, name: str) -> np.ndarray:
        g = self.grid
        s = self.spec
        if name == "chi2":
            return self.dchi2
        if name == "dchi2":
            return -2 * s.g2(g) * self.chi2
        if name == "chi1_ode":
            return self.dchi1_ode
        if name == "dchi1_ode":
            return -2 * s.g2(g) * self.chi1_ode
        if name == "theta":
            return 1.0 / self.chi2**2
        if name == "C2":
            return self.chi2 * s.g1(g)
        if name == "C1":
            return self.chi2 * self.theta * s.g1(g)
        if name == "K":
            return self.C2 / self.chi2**2
        if name == "G0":
            return s.g0(g) * np.ones_like(g)
        if name == "Q":
            return self.C2**2 / self.chi2**2
        raise KeyError(name)

    def interp(self, name: str, t):
        """Hermite interpolation of a primary field, using its exact derivative."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < self.t_min - 1e-12) or np.any(t_arr > self.t_max + 1e-12):
            raise ChiSystemError(
                f"t outside the valid interval [{self.t_min:.6g}, {self.t_max:.6g}]"
            )
        sp = self._splines.get(name)
        if sp is None:
            sp = CubicHermiteSpline(self.grid, getattr(self, name), self._derivative_of(name))
            self._splines[name] = sp
        return sp(t_arr)

    # derived fields -------------------------------------------------------
    def fields_at(self, t) -> Dict[str, np.ndarray]:
        """All chi-system functions at t, assembled from the primaries."""
        s = self.spec
        c2 = self.interp("chi2", t)
        d2 = self.interp("dchi2", t)
        th = self.interp("theta", t)
        C1 = self.interp("C1", t)
        C2 = self.interp("C2", t)
        g2, g1, g0 = s.g2(t), s.g1(t), s.g0(t)
        c1 = c2 * th
        d1 = d2 * th + 1.0 / c2
        dd1, dd2 = -2 * g2 * c1, -2 * g2 * c2
        phi = {1: c1 * c1, 2: c2 * c2, 3: 2 * c1 * c2}
        dphi = {1: 2 * c1 * d1, 2: 2 * c2 * d2, 3: 2 * (d1 * c2 + c1 * d2)}
        ddphi = {
            1: 2 * d1 * d1 + 2 * c1 * dd1,
            2: 2 * d2 * d2 + 2 * c2 * dd2,
            3: 2 * (dd1 * c2 + 2 * d1 * d2 + c1 * dd2),
        }
        A = {1: -c1 * C1, 2: -c2 * C2, 3: -(c1 * C2 + c2 * C1)}
        dA = {
            1: -(d1 * C1 + c1 * c1 * g1),
            2: -(d2 * C2 + c2 * c2 * g1),
            3: -(d1 * C2 + c1 * c2 * g1 + d2 * C1 + c2 * c1 * g1),
        }
        D = {1: -0.5 * C1 * C1, 2: -0.5 * C2 * C2, 3: -C1 * C2}
        out = {"chi1": c1, "chi2": c2, "dchi1": d1, "dchi2": d2, "theta": th,
               "C1": C1, "C2": C2, "g0": g0, "g1": g1, "g2": g2}
        for j in (1, 2, 3):
            out[f"phi{j}"] = phi[j]
            out[f"dphi{j}"] = dphi[j]
            out[f"ddphi{j}"] = ddphi[j]
            out[f"A{j}"] = A[j]
            out[f"dA{j}"] = dA[j]
            out[f"D{j}"] = D[j]
            # B_j = b2 x^2 + b1 x + b0
            out[f"B{j}_x2"] = -0.25j * ddphi[j]
            out[f"B{j}_x1"] = -1j * dA[j]
            out[f"B{j}_x0"] = 0.25 * dphi[j] + 1j * g0 * phi[j] + 1j * D[j]
        return out

    def B(self, j: int, t, x):
        f = self.fields_at(t)
        return f[f"B{j}_x2"] * x * x + f[f"B{j}_x1"] * x + f[f"B{j}_x0"]

    @property
    def chi1(self) -> np.ndarray:
        return self.chi2 * self.theta

    @property
    def dchi1(self) -> np.ndarray:
        return self.dchi2 * self.theta + 1.0 / self.chi2

    def wronskian(self, which: str = "ode") -> np.ndarray:
        if which == "ode":
            return self.dchi1_ode * self.chi2 - self.chi1_ode * self.dchi2
        return self.dchi1 * self.chi2 - self.chi1 * self.dchi2


def solve_chi(spec: PotentialSpec, step: float = 1e-3) -> ChiSystem:
    """Integrate the chi-system on the largest valid part of [-T, T]."""
    if not step > 0:
        raise ChiSystemError("step must be positive")
    n = max(2, int(math.ceil(spec.T / step)))
    h = spec.T / n
    tf, yf, ef = _march(spec, h, n)
    tb, yb, eb = _march(spec, -h, n)
    grid = np.concatenate([tb[::-1], tf[1:]])
    Y = np.concatenate([yb[::-1], yf[1:]])
    err = np.concatenate([eb[::-1], ef[1:]])
    i0 = len(tb) - 1
    truncated = len(tf) < n + 1 or len(tb) < n + 1
    notes = []
    if truncated:
        msg = (f"chi_2 approaches zero: valid interval truncated to "
               f"[{grid[0]:.6g}, {grid[-1]:.6g}]")
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes.append(msg)
    if grid[-1] - grid[0] < MIN_INTERVAL:
        raise ChiSystemError(
            f"valid interval [{grid[0]:.4g}, {grid[-1]:.4g}] is shorter than {MIN_INTERVAL}"
        )
    chi2, dchi2, chi1o, dchi1o = Y[:, 0], Y[:, 1], Y[:, 2], Y[:, 3]
    g1 = spec.g1(grid) * np.ones_like(grid)
    g0 = spec.g0(grid) * np.ones_like(grid)
    theta = _cumulative(1.0 / chi2**2, h, i0)
    C2 = _cumulative(chi2 * g1, h, i0)
    C1 = _cumulative(chi2 * theta * g1, h, i0)
    K = _cumulative(C2 / chi2**2, h, i0)
    G0 = _cumulative(g0, h, i0)
    Q = _cumulative(C2**2 / chi2**2, h, i0)
    return ChiSystem(spec, h, grid, chi2, dchi2, chi1o, dchi1o, theta, C1, C2, K, G0, Q,
                     err, truncated, notes=notes)


@dataclass
class ChiIdentityResiduals:
    A_identity_printed: float  # A1 - (Theta^2 A2 - chi2 Theta K)
    A_identity_corrected: float  # A1 - (Theta^2 A2 + chi2 Theta K)
    phi_identity: float  # phi1' - (Theta^2 phi2' + 2 Theta)
    chi1_formula_vs_ode: float
    wronskian_drift: float


def chi_identities_residual(cs: ChiSystem) -> ChiIdentityResiduals:
    f = cs.fields_at(cs.grid)
    th, K = f["theta"], cs.K
    A1, A2 = f["A1"], f["A2"]
    resA_p = A1 - (th * th * A2 - f["chi2"] * th * K)
    resA_c = A1 - (th * th * A2 + f["chi2"] * th * K)
    resphi = f["dphi1"] - (th * th * f["dphi2"] + 2 * th)
    return ChiIdentityResiduals(
        float(np.max(np.abs(resA_p))),
        float(np.max(np.abs(resA_c))),
        float(np.max(np.abs(resphi))),
        float(np.max(np.abs(cs.chi1 - cs.chi1_ode))),
        float(np.max(np.abs(cs.wronskian("ode") - 1.0))),
    )


# sign patterns for L_j; (+, -, -) closes the stated brackets
L_SIGNS = {"derived": (1, -1, -1), "printed": (1, -1, 1)}


@dataclass
class LOperator:
    """``sign * (phi_j dt + (phi_j' x / 2 + A_j) dx + B_j)`` with coefficients from a ChiSystem."""

    cs: ChiSystem
    j: int
    sign: int

    def coefficients(self, t, x):
        """``(c_t, c_x, c_0)`` at (t, x)."""
        f = self.cs.fields_at(t)
        j = self.j
        ct = self.sign * f[f"phi{j}"]
        cx = self.sign * (0.5 * f[f"dphi{j}"] * x + f[f"A{j}"])
        c0 = self.sign * (f[f"B{j}_x2"] * x * x + f[f"B{j}_x1"] * x + f[f"B{j}_x0"])
        return ct, cx, c0

    def apply(self, func, delta: float):
        """Callable ``(t, x) -> (L func)(t, x)`` using central differences of step delta."""

        def out(t, x):
            ct, cx, c0 = self.coefficients(t, x)
            ft = (func(t + delta, x) - func(t - delta, x)) / (2 * delta)
            fx = (func(t, x + delta) - func(t, x - delta)) / (2 * delta)
            return ct * ft + cx * fx + c0 * func(t, x)

        return out


def generators_L(cs: ChiSystem, signs: str = "derived") -> Tuple[LOperator, LOperator, LOperator]:
    if signs not in L_SIGNS:
        raise ValueError(f"signs must be one of {sorted(L_SIGNS)}")
    return tuple(LOperator(cs, j, e) for j, e in zip((1, 2, 3), L_SIGNS[signs]))


def gaussian_probe(t, x):
    return np.exp(-(t * t + x * x)) + 0j


@dataclass
class BracketResidual:
    relations: Dict[str, float]  # extrapolated, relative to the scale
    coarse: Dict[str, float]
    scale: float
    delta: float
    signs: str

    @property
    def max_residual(self) -> float:
        return max(self.relations.values())


def default_probes(cs: ChiSystem, margin: float = 0.05):
    lo, hi = cs.t_min + margin, cs.t_max - margin
    ts = np.linspace(lo, hi, 5)
    xs = np.array([-1.0, -0.3, 0.4, 1.1])
    T, X = np.meshgrid(ts, xs, indexing="ij")
    return T.ravel(), X.ravel()


def bracket_residual_L(cs: ChiSystem, func=gaussian_probe, probes=None, delta: float = 4e-3,
                       signs: str = "derived") -> BracketResidual:
    """Residuals of [L3,L1]+2L1, [L3,L2]-2L2 and [L2,L1]-L3 applied to ``func``.

    Compositions use nested central differences at steps delta and delta/2;
    the two results are Richardson-combined.  Residuals are divided by
    max |L_j func| over the probes.
    """
    t, x = default_probes(cs) if probes is None else (np.asarray(p, float) for p in probes)
    L1, L2, L3 = generators_L(cs, signs)

    def rel(d):
        def bracket(A, B):
            return A.apply(B.apply(func, d), d)(t, x) - B.apply(A.apply(func, d), d)(t, x)

        l1, l2, l3 = (L.apply(func, d)(t, x) for L in (L1, L2, L3))
        res = {
            "[L3,L1]+2L1": bracket(L3, L1) + 2 * l1,
            "[L3,L2]-2L2": bracket(L3, L2) - 2 * l2,
            "[L2,L1]-L3": bracket(L2, L1) - l3,
        }
        scale = max(float(np.max(np.abs(v))) for v in (l1, l2, l3))
        return res, scale

    coarse, scale = rel(delta)
    fine, _ = rel(delta / 2)
    scale = scale if scale > 0 else 1.0
    ext = {k: float(np.max(np.abs((4 * fine[k] - coarse[k]) / 3))) / scale for k in coarse}
    raw = {k: float(np.max(np.abs(coarse[k]))) / scale for k in coarse}
    return BracketResidual(ext, raw, scale, delta, signs)


def gamma_map(cs: ChiSystem, t, x):
    """``(Theta(t), x / chi_2(t) + K(t))``."""
    x = np.asarray(x, dtype=float)
    return cs.interp("theta", t), x / cs.interp("chi2", t) + cs.interp("K", t)
