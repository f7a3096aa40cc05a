"""Cross-picture consistency of the generators.

The non-compact triple (h, e+, e-) is applied by finite differences to the
transported K-type f = to_noncompact(Psi), the result is transported back,
and compared with the analytic compact-picture action.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from ..ktypes.lattice import KTypeIndex
from ..ktypes.pictures import R_PHYS, S_PHYS, ktype_function, to_noncompact
from ..weyl.identities import sl2_generators
from ..weyl.operator import WeylOperator
from .generators import GeneratorTag, _tag, apply_compact


def _fd(f, k: int, l: int, t: float, x: float, h: float) -> complex:
    """Central-difference d_t^k d_x^l f for k + l <= 2."""
    if (k, l) == (0, 0):
        return f(t, x)
    if (k, l) == (1, 0):
        return (f(t + h, x) - f(t - h, x)) / (2 * h)
    if (k, l) == (0, 1):
        return (f(t, x + h) - f(t, x - h)) / (2 * h)
    if (k, l) == (2, 0):
        return (f(t + h, x) - 2 * f(t, x) + f(t - h, x)) / (h * h)
    if (k, l) == (0, 2):
        return (f(t, x + h) - 2 * f(t, x) + f(t, x - h)) / (h * h)
    if (k, l) == (1, 1):
        return (f(t + h, x + h) - f(t + h, x - h) - f(t - h, x + h) + f(t - h, x - h)) / (4 * h * h)
    raise ValueError("finite differences implemented up to total order 2")


def apply_fd(op: WeylOperator, f, t: float, x: float, h: float = 1e-3, params=None) -> complex:
    """Apply a Weyl operator to a callable with Richardson-extrapolated central differences."""
    params = params or {"r": R_PHYS, "s": S_PHYS}

    def once(step):
        total = 0j
        for (i, j, k, l), c in op.terms.items():
            total += c.evaluate(params) * t**i * x**j * _fd(f, k, l, t, x, step)
        return total

    return (4 * once(h / 2) - once(h)) / 3


def noncompact_form(gen) -> WeylOperator:
    """kappa = i(e- - e+), eta+/- = (h +/- i(e+ + e-))/2 and the triple itself."""
    g = _tag(gen)
    h, ep, em = sl2_generators()
    i = WeylOperator.scalar(1j)
    half = Fraction(1, 2)
    table = {
        GeneratorTag.h: h,
        GeneratorTag.e_plus: ep,
        GeneratorTag.e_minus: em,
        GeneratorTag.kappa: i * (em - ep),
        GeneratorTag.eta_plus: half * (h + i * (ep + em)),
        GeneratorTag.eta_minus: half * (h - i * (ep + em)),
    }
    if g not in table:
        raise ValueError(f"{g.value} has no sl2 non-compact form")
    return table[g]


def cross_picture_deviation(gen, index: KTypeIndex, theta: float, y: float, h: float = 1e-3):
    """Return ``(compact value, transported non-compact value)`` at (theta, y)."""
    r, s = R_PHYS, S_PHYS
    f = to_noncompact(ktype_function(index))
    op = noncompact_form(gen)
    t, x = math.tan(theta), y / math.cos(theta)
    g_val = apply_fd(op, f, t, x, h)
    transported = math.cos(theta) ** r * cmath.exp(-s * y * y * math.tan(theta)) * g_val
    return apply_compact(gen, index, theta, y), transported
