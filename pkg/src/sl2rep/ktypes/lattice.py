"""Admissible K-type indices and eigenvalue bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Set, Tuple, Union


class InadmissibleIndexError(ValueError):
    pass


def required_class(q: int, l: int) -> int:
    """The residue ``2l + q mod 4`` that m must have."""
    return (2 * l + q) % 4


def is_admissible(q: int, l: int, m: int) -> bool:
    return l >= 0 and (m - 2 * l - q) % 4 == 0


@dataclass(frozen=True, order=True)
class KTypeIndex:
    """Weight datum (q, l, m) with m = 2l + q (mod 4)."""

    q: int
    l: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "q", int(self.q) % 4)
        if self.l < 0:
            raise InadmissibleIndexError(f"l must be nonnegative, got {self.l}")
        if not is_admissible(self.q, self.l, self.m):
            raise InadmissibleIndexError(
                f"(q={self.q}, l={self.l}, m={self.m}) is inadmissible: "
                f"m must be congruent to 2l+q = {required_class(self.q, self.l)} mod 4"
            )

    def lambda_(self) -> Fraction:
        return Fraction(self.l * (self.l - 1), 2)

    # the spec's accessor name; ``lambda`` itself is reserved
    def lambda_value(self) -> Fraction:
        return self.lambda_()

    def kummer_a(self) -> Fraction:
        return Fraction(1 + 2 * self.l - self.m, 4)

    def kummer_b(self) -> Fraction:
        return Fraction(2 * self.l + 1, 2)

    def shifted(self, dm: int, dl: int) -> "KTypeIndex":
        return KTypeIndex(self.q, self.l + dl, self.m + dm)

    def as_dict(self) -> dict:
        return {"q": self.q, "l": self.l, "m": self.m}


def _exact_lambda(lam) -> Fraction:
    if isinstance(lam, float):
        if not math.isfinite(lam):
            raise ValueError("lambda must be finite")
        lam = Fraction(lam).limit_denominator(10**6)
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return lam


def _rational_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def indicial_roots(lam) -> Tuple[Union[Fraction, float], Union[Fraction, float]]:
    """Roots ``(1 -/+ sqrt(1 + 8 lam)) / 2``; exact when the root is rational."""
    lam = _exact_lambda(lam)
    disc = 1 + 8 * lam
    root = _rational_sqrt(disc)
    if root is not None:
        return (1 - root) / 2, (1 + root) / 2
    r = math.sqrt(float(disc))
    return (1 - r) / 2, (1 + r) / 2


def lambda_to_l(lam) -> Set[int]:
    """All l >= 0 with l(l-1)/2 = lam."""
    lam = _exact_lambda(lam)
    if lam == 0:
        return {0, 1}
    if lam.denominator != 1:
        return set()
    disc = 1 + 8 * lam.numerator
    root = math.isqrt(disc)
    if root * root != disc:
        return set()
    return {(1 + root) // 2}


def weights(q: int, l: int, m_window: Tuple[int, int]) -> List[int]:
    """Admissible m in ``[m_min, m_max]``, ascending."""
    lo, hi = m_window
    if lo > hi:
        raise ValueError("empty window: m_min > m_max")
    r = required_class(q, l)
    first = lo + ((r - lo) % 4)
    return list(range(first, hi + 1, 4))


def window_indices(q: int, l_max: int, m_bound: int) -> List[KTypeIndex]:
    """All admissible indices with l <= l_max and |m| <= m_bound, ordered by (l, m)."""
    out = []
    for l in range(l_max + 1):
        for m in weights(q, l, (-m_bound, m_bound)):
            out.append(KTypeIndex(q, l, m))
    return out
