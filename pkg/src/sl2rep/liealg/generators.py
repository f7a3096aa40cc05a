"""Compact-picture generators applied to K-types through exact jets.

With r = -1/2 and s = i/2 the operators are

    kappa   = i d_theta
    eta+    = -1/2 e^{-2i theta} (y d_y + i d_theta - r + 2 i s y^2)
    eta-    = -1/2 e^{+2i theta} (y d_y - i d_theta - r - 2 i s y^2)
    E-      = -e^{+i theta} (d_y - 2 i s y)          (m -> m - 2)
    E+      = -e^{-i theta} (d_y + 2 i s y)          (m -> m + 2)
    omega'' = y^2 (4 s d_theta + 4 s^2 y^2 + d_y^2) - (1 + 2r) y d_y

The eta operators are the ones obtained by transporting
eta = (h +/- i(e+ + e-))/2 through the picture isomorphism; the variant
``eta_printed`` keeps ``1/2 e^{-/+2i theta}(y d_y -/+ i d_theta - (1/2 +/- 2 i s y^2))``
for comparison.  h and e+/- are recovered from kappa and eta+/-.
"""

from __future__ import annotations

import cmath
from enum import Enum

from ..hyperfun.jets import PsiJet, psi_jet
from ..ktypes.lattice import KTypeIndex
from ..ktypes.pictures import R_PHYS, S_PHYS


class GeneratorTag(str, Enum):
    kappa = "kappa"
    eta_plus = "eta_plus"
    eta_minus = "eta_minus"
    E_plus = "E_plus"
    E_minus = "E_minus"
    omega_dd = "omega_dd"
    h = "h"
    e_plus = "e_plus"
    e_minus = "e_minus"


def _tag(gen) -> GeneratorTag:
    return gen if isinstance(gen, GeneratorTag) else GeneratorTag(gen)


def apply_to_jet(gen, jet: PsiJet, r: complex = R_PHYS, s: complex = S_PHYS,
                 eta_form: str = "derived") -> complex:
    """Apply a generator to a function whose jet at (theta, y) is given."""
    g = _tag(gen)
    theta, y = jet.point
    F, Ft, Fy, Fyy = jet.value, jet.d_theta, jet.d_y, jet.d_yy
    if g is GeneratorTag.kappa:
        return 1j * Ft
    if g in (GeneratorTag.eta_plus, GeneratorTag.eta_minus):
        sign = 1 if g is GeneratorTag.eta_plus else -1
        if eta_form == "printed":
            return 0.5 * cmath.exp(-sign * 2j * theta) * (
                y * Fy - sign * 1j * Ft - (0.5 + sign * 2j * s * y * y) * F
            )
        if eta_form != "derived":
            raise ValueError(f"unknown eta form {eta_form!r}")
        return -0.5 * cmath.exp(-sign * 2j * theta) * (
            y * Fy + sign * 1j * Ft - r * F + sign * 2j * s * y * y * F
        )
    if g is GeneratorTag.E_minus:
        return -cmath.exp(1j * theta) * (Fy - 2j * s * y * F)
    if g is GeneratorTag.E_plus:
        return -cmath.exp(-1j * theta) * (Fy + 2j * s * y * F)
    if g is GeneratorTag.omega_dd:
        return y * y * (4 * s * Ft + 4 * s * s * y * y * F + Fyy) - (1 + 2 * r) * y * Fy
    # non-compact triple through kappa = i(e- - e+), eta+/- = (h +/- i(e+ + e-))/2
    k = apply_to_jet(GeneratorTag.kappa, jet, r, s)
    ep = apply_to_jet(GeneratorTag.eta_plus, jet, r, s)
    em = apply_to_jet(GeneratorTag.eta_minus, jet, r, s)
    if g is GeneratorTag.h:
        return ep + em
    total = -1j * (ep - em)  # e+ + e-
    diff = -1j * k  # e- - e+
    if g is GeneratorTag.e_plus:
        return 0.5 * (total - diff)
    return 0.5 * (total + diff)


def apply_compact(gen, index: KTypeIndex, theta: float, y: float, **kw) -> complex:
    """Generator applied to Psi_{index} at (theta, y), using exact jets."""
    if not isinstance(index, KTypeIndex):
        index = KTypeIndex(index.q, index.l, index.m)
    return apply_to_jet(gen, psi_jet(index, theta, y), **kw)
