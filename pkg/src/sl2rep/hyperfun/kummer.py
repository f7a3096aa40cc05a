"""Kummer's confluent hypergeometric function 1F1(a, b, z) for real arguments.

Direct power series with a running error budget.  When the series cancels
badly (condition estimate above 1e8) the same recurrence is re-summed in
extended precision with mpmath, with the working precision chosen from the
measured condition number.  Set ``SL2REP_PRECISION=double`` to turn that
fallback off and get :class:`PrecisionLossError` instead.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

EPS = 2.0**-53
MAX_TERMS = 10000
COND_LIMIT = 1e8


class KummerError(ValueError):
    pass


class InvalidParameterError(KummerError):
    """b is zero or a negative integer."""


class NonConvergenceError(KummerError):
    pass


class PrecisionLossError(KummerError):
    pass


@dataclass(frozen=True)
class KummerEval:
    value: complex
    abs_error_estimate: float
    terms_used: int
    condition_estimate: float
    tier: str = "double"
    term_mass: float = 0.0  # sum of |series terms|, the rounding scale of ``value``


def precision_mode() -> str:
    mode = os.environ.get("SL2REP_PRECISION", "dd").strip().lower()
    if mode not in ("double", "dd"):
        raise ValueError(f"SL2REP_PRECISION must be 'double' or 'dd', got {mode!r}")
    return mode


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def _check_b(b: float):
    if _is_nonpositive_integer(b):
        raise InvalidParameterError(f"b = {b} is zero or a negative integer")


def _series_double(a: float, b: float, z: float):
    term = 1.0
    terms = [1.0]
    partial = 1.0
    small = 0
    n = 0
    while True:
        if a + n == 0:
            # polynomial case: every later term vanishes
            return terms, n + 1, True, 0.0
        term = term * (a + n) * z / ((b + n) * (n + 1))
        n += 1
        terms.append(term)
        partial += term
        if abs(term) <= EPS * abs(partial):
            small += 1
            if small >= 3:
                ratio = abs((a + n) * z / ((b + n) * (n + 1)))
                return terms, n + 1, False, ratio
        else:
            small = 0
        if n >= MAX_TERMS:
            raise NonConvergenceError(f"1F1({a}, {b}, {z}) did not converge in {MAX_TERMS} terms")


def _tail_bound(last: float, ratio: float, a: float, b: float, z: float, n: int) -> float:
    """Geometric majorant for the discarded tail once ratios are below one."""
    if ratio == 0.0:
        return 0.0
    # the ratio (a+k)z/((b+k)(k+1)) is eventually decreasing in k; use the
    # current one when it is already below 1, otherwise fall back to a crude bound
    if ratio < 1.0:
        return abs(last) * ratio / (1.0 - ratio)
    return abs(last) * ratio * 2.0


def _series_extended(a: float, b: float, z: float, bits: int) -> float:
    with mpmath.workprec(bits):
        A, B, Z = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(z)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        tol = mpmath.mpf(2) ** (-bits)
        small = 0
        n = 0
        while True:
            if A + n == 0:
                break
            term = term * (A + n) * Z / ((B + n) * (n + 1))
            n += 1
            total += term
            if abs(term) <= tol * abs(total):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            if n >= MAX_TERMS:
                raise NonConvergenceError(f"1F1({a}, {b}, {z}) did not converge in {MAX_TERMS} terms")
        return float(total)


def kummer_m(a: float, b: float, z: float) -> KummerEval:
    """Evaluate 1F1(a, b, z) by its power series.

    Returns the value together with a tail-majorant error bound, the number
    of series terms and the condition estimate ``sum|terms| / |sum|``.
    """
    a, b, z = float(a), float(b), float(z)
    _check_b(b)
    terms, used, terminated, ratio = _series_double(a, b, z)
    total = math.fsum(terms)
    abs_sum = math.fsum(abs(t) for t in terms)
    cond = abs_sum / abs(total) if total != 0 else math.inf
    cond = max(cond, 1.0)
    tail = 0.0 if terminated else _tail_bound(terms[-1], ratio, a, b, z, used)
    if cond <= COND_LIMIT:
        err = tail + 2 * EPS * abs_sum
        return KummerEval(complex(total), err, used, cond, "double", abs_sum)
    if precision_mode() == "double":
        raise PrecisionLossError(
            f"1F1({a}, {b}, {z}): condition estimate {cond:.3g} exceeds {COND_LIMIT:.0e}"
        )
    if not math.isfinite(cond):
        bits = 53 + 64 + 16
    else:
        bits = 53 + int(math.ceil(math.log2(cond))) + 16
    value = _series_extended(a, b, z, bits)
    err = tail + EPS * abs(value) + abs_sum * 2.0**-bits
    return KummerEval(complex(value), err, used, cond, "extended", abs_sum)


def pochhammer_ratio(a, b, n: int) -> Fraction:
    """Exact ``(a)_n / (b)_n`` for rational (or binary-float) a, b."""
    a, b = Fraction(a), Fraction(b)
    out = Fraction(1)
    for k in range(n):
        if b + k == 0:
            raise InvalidParameterError(f"(b)_n vanishes for b = {b}")
        out *= (a + k) / (b + k)
    return out


def kummer_m_deriv(a, b, z, n: int = 0) -> KummerEval:
    """n-th z-derivative: ``(a)_n / (b)_n * 1F1(a+n, b+n, z)``."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    _check_b(float(b))
    _check_b(float(b) + n)
    ratio = pochhammer_ratio(a, b, n)
    if ratio == 0:
        return KummerEval(0j, 0.0, 0, 1.0, "double", 0.0)
    base = kummer_m(float(a) + n, float(b) + n, z)
    f = float(ratio)
    return KummerEval(base.value * f, base.abs_error_estimate * abs(f), base.terms_used,
                      base.condition_estimate, base.tier, base.term_mass * abs(f))


def _relation(relation: str, a: float, b: float, z: float):
    """Coefficients and evaluations ``[(c_k, M_k)]`` of a contiguous relation."""
    rel = relation.upper()
    if rel == "U1":
        spec = [(b, (a, b)), (-b, (a - 1, b)), (-z, (a, b + 1))]
    elif rel == "U2":
        spec = [(b * (1 - b + z), (a, b)), (b * (b - 1), (a - 1, b - 1)), (-a * z, (a + 1, b + 1))]
    elif rel == "U3":
        spec = [(a - 1 + z, (a, b)), (b - a, (a - 1, b)), (1 - b, (a, b - 1))]
    elif rel == "U4":
        spec = [(a - b + 1, (a, b)), (-a, (a + 1, b)), (b - 1, (a, b - 1))]
    else:
        raise ValueError(f"unknown relation {relation!r}; expected U1..U4")
    return [(c, kummer_m(pa, pb, z)) for c, (pa, pb) in spec]


def contiguous_terms(relation: str, a: float, b: float, z: float):
    """The individual summands of a contiguous relation (they sum to zero)."""
    return [c * ev.value.real for c, ev in _relation(relation, a, b, z)]


def contiguous_residual(relation: str, a: float, b: float, z: float, relative: bool = False) -> float:
    """Absolute value of the relation's left-hand side.

    With ``relative=True`` the result is divided by the largest of
    ``|c_k| * sum|series terms of M_k|``, the scale at which each summand
    carries rounding error.  Dividing by the summands themselves would be
    meaningless where M_k has a zero.
    """
    pairs = _relation(relation, a, b, z)
    res = abs(math.fsum(c * ev.value.real for c, ev in pairs))
    if relative:
        scale = max(max(abs(c) * ev.term_mass for c, ev in pairs), 1e-300)
        return res / scale
    return res


def kummer_ode_residual(a: float, b: float, z: float) -> float:
    """Relative residual of ``z F'' + (b - z) F' - a F``."""
    F = kummer_m_deriv(a, b, z, 0).value.real
    F1 = kummer_m_deriv(a, b, z, 1).value.real
    F2 = kummer_m_deriv(a, b, z, 2).value.real
    parts = [z * F2, (b - z) * F1, -a * F]
    scale = max(max(abs(p) for p in parts), 1e-300)
    return abs(math.fsum(parts)) / scale


def sample_grid(z_values=(0.5, 2.0, 5.0, 10.0, 17.0, 25.0)):
    """(a, b, z) triples: a quarter-integers in [-5, 5], b in {1/2, ..., 13/2}."""
    a_vals = [k / 4 for k in range(-20, 21)]
    b_vals = [k + 0.5 for k in range(7)]
    return [(a, b, z) for a in a_vals for b in b_vals for z in z_values]
