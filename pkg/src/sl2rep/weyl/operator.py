"""Normal-ordered differential operators in (t, x).

A term ``c * t^i x^j dt^k dx^l`` is keyed by ``(i, j, k, l)`` with ``i, k, l >= 0``
and ``j`` any integer.  Coefficients are :class:`ParamPoly` values.
"""

from __future__ import annotations

from math import comb
from typing import Dict, Mapping, Tuple

from .coeffs import GaussianRational, ParamPoly

Key = Tuple[int, int, int, int]


def falling(q: int, b: int) -> int:
    """Falling factorial ``q (q-1) ... (q-b+1)``; valid for negative ``q``."""
    out = 1
    for k in range(b):
        out *= q - k
    return out


class WeylOperator:
    """Immutable operator in canonical (normal-ordered) form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, object] | None = None):
        clean: Dict[Key, ParamPoly] = {}
        if terms:
            for key, c in terms.items():
                i, j, k, l = key
                if i < 0 or k < 0 or l < 0:
                    raise ValueError(f"invalid monomial key {key}: only x may carry a negative power")
                c = ParamPoly.coerce(c)
                if not c.is_zero():
                    clean[(int(i), int(j), int(k), int(l))] = c
        self.terms = clean

    # constructors
    @classmethod
    def scalar(cls, value) -> "WeylOperator":
        return cls({(0, 0, 0, 0): ParamPoly.coerce(value)})

    @classmethod
    def monomial(cls, i=0, j=0, k=0, l=0, coeff=1) -> "WeylOperator":
        return cls({(i, j, k, l): ParamPoly.coerce(coeff)})

    @classmethod
    def param(cls, name: str) -> "WeylOperator":
        return cls.scalar(ParamPoly.param(name))

    @classmethod
    def coerce(cls, value) -> "WeylOperator":
        if isinstance(value, WeylOperator):
            return value
        return cls.scalar(value)

    def normalize(self) -> "WeylOperator":
        # already canonical by construction; kept for API symmetry
        return WeylOperator(self.terms)

    # arithmetic
    def __add__(self, other):
        o = WeylOperator.coerce(other)
        out = dict(self.terms)
        for key, c in o.terms.items():
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        return WeylOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-WeylOperator.coerce(other))

    def __rsub__(self, other):
        return WeylOperator.coerce(other) - self

    def __mul__(self, other):
        return op_mul(self, WeylOperator.coerce(other))

    def __rmul__(self, other):
        return op_mul(WeylOperator.coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("operators can only be raised to nonnegative powers")
        out = WeylOperator.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = WeylOperator.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def subs(self, values: Mapping[str, object]) -> "WeylOperator":
        """Specialize parameters to exact values."""
        out: Dict[Key, ParamPoly] = {}
        for key, c in self.terms.items():
            out[key] = c.subs(values)
        return WeylOperator(out)

    def free_params(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.free_params()
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        return f"WeylOperator({self})"

    def __str__(self):
        from .parser import format_operator

        return format_operator(self)


def op_mul(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    """Normal-ordered product ``A B``.

    Moving ``dt^k dx^l`` past ``t^p x^q`` uses the Leibniz expansion
    ``dx^l x^q = sum_b C(l,b) (q)_b x^(q-b) dx^(l-b)``, with the falling
    factorial covering negative ``q``.
    """
    out: Dict[Key, ParamPoly] = {}
    for (i, j, k, l), c1 in A.terms.items():
        for (p, q, m, n), c2 in B.terms.items():
            c = c1 * c2
            for a in range(min(k, p) + 1):
                ta = comb(k, a) * falling(p, a)
                if ta == 0:
                    continue
                for b in range(l + 1):
                    tb = comb(l, b) * falling(q, b)
                    if tb == 0:
                        continue
                    key = (i + p - a, j + q - b, k + m - a, l + n - b)
                    term = c * (ta * tb)
                    prev = out.get(key)
                    out[key] = term if prev is None else prev + term
    return WeylOperator(out)


def op_bracket(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    """Commutator ``AB - BA``."""
    return op_mul(A, B) - op_mul(B, A)


# handy atoms
T = WeylOperator.monomial(i=1)
X = WeylOperator.monomial(j=1)
DT = WeylOperator.monomial(k=1)
DX = WeylOperator.monomial(l=1)
I = WeylOperator.scalar(GaussianRational(0, 1))
ONE = WeylOperator.scalar(1)


def x_pow(n: int) -> WeylOperator:
    return WeylOperator.monomial(j=n)
