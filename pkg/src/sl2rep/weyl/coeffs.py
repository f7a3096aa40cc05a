"""Exact coefficient arithmetic: Gaussian rationals and parameter polynomials.

Every operator identity in this package is decided by comparing canonical
forms, so nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

PARAMS: Tuple[str, ...] = ("r", "s", "lam", "u", "v", "w")
PARAM_ALIASES = {"lambda": "lam", "λ": "lam"}

Exponents = Tuple[int, ...]
_ZERO_EXP: Exponents = (0,) * len(PARAMS)


class GaussianRational:
    """A number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value, 0)
        if isinstance(value, complex):
            re, im = Fraction(value.real), Fraction(value.imag)
            return cls(re, im)
        if isinstance(value, float):
            return cls(Fraction(value), 0)
        if isinstance(value, str):
            return cls(Fraction(value), 0)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den
        )

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Grammar-compatible text; parenthesised when both parts are nonzero."""
    if z.im == 0:
        return _fmt_fraction(z.re)
    if z.re == 0:
        if z.im == 1:
            return "i"
        if z.im == -1:
            return "-i"
        return f"{_fmt_fraction(z.im)}*i"
    im = z.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    imtxt = "i" if mag == 1 else f"{_fmt_fraction(mag)}*i"
    return f"({_fmt_fraction(z.re)} {sign} {imtxt})"


ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def canonical_param(name: str) -> str:
    name = PARAM_ALIASES.get(name, name)
    if name not in PARAMS:
        raise KeyError(name)
    return name


class ParamPoly:
    """Polynomial in the commuting parameters r, s, lam, u, v, w."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, GaussianRational] | None = None):
        clean: Dict[Exponents, GaussianRational] = {}
        if terms:
            for exp, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def const(cls, value) -> "ParamPoly":
        return cls({_ZERO_EXP: GaussianRational.coerce(value)})

    @classmethod
    def param(cls, name: str, power: int = 1) -> "ParamPoly":
        idx = PARAMS.index(canonical_param(name))
        exp = [0] * len(PARAMS)
        exp[idx] = power
        return cls({tuple(exp): ONE})

    @classmethod
    def coerce(cls, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        return cls.const(value)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == _ZERO_EXP for e in self.terms)

    def constant_value(self) -> GaussianRational:
        return self.terms.get(_ZERO_EXP, GaussianRational(0))

    def __add__(self, other):
        o = ParamPoly.coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        o = ParamPoly.coerce(other)
        out: Dict[Exponents, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                s = out.get(e)
                out[e] = prod if s is None else s + prod
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of parameter polynomials are not supported")
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def subs(self, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute exact values (numbers or ParamPolys) for named parameters."""
        vals = {PARAMS.index(canonical_param(k)): ParamPoly.coerce(v) for k, v in values.items()}
        out = ParamPoly()
        for e, c in self.terms.items():
            kept = list(e)
            term = ParamPoly.const(c)
            for idx, val in vals.items():
                if kept[idx]:
                    term = term * (val ** kept[idx])
                    kept[idx] = 0
            out = out + term * ParamPoly({tuple(kept): ONE})
        return out

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        lookup = {PARAMS.index(canonical_param(k)): complex(v) for k, v in values.items()}
        for e, c in self.terms.items():
            term = complex(c)
            for idx, p in enumerate(e):
                if p:
                    if idx not in lookup:
                        raise KeyError(f"no value for parameter {PARAMS[idx]}")
                    term *= lookup[idx] ** p
            total += term
        return total

    def free_params(self) -> set:
        out = set()
        for e in self.terms:
            out.update(PARAMS[i] for i, p in enumerate(e) if p)
        return out

    def sorted_terms(self) -> Iterable[Tuple[Exponents, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __repr__(self):
        return f"ParamPoly({self})"

    def __str__(self):
        return format_parampoly(self)


def _monomial_text(exp: Exponents) -> str:
    parts = []
    for name, p in zip(PARAMS, exp):
        if p == 1:
            parts.append(name)
        elif p:
            parts.append(f"{name}^{p}")
    return "*".join(parts)


def format_parampoly(p: ParamPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exp, c in p.sorted_terms():
        mono = _monomial_text(exp)
        if not mono:
            pieces.append(format_gaussian(c))
        elif c == 1:
            pieces.append(mono)
        elif c == -1:
            pieces.append(f"-{mono}")
        else:
            pieces.append(f"{format_gaussian(c)}*{mono}")
    text = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            text += f" - {piece[1:]}"
        else:
            text += f" + {piece}"
    return text


Scalar = Union[int, Fraction, GaussianRational, ParamPoly]
