"""Time-dependent potentials V(t, x) = g2(t) x^2 + g1(t) x + g0(t) + lam / x^2."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import numpy as np


class PotentialSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Poly:
    """Real polynomial in t, coefficients constant term first."""

    coeffs: Tuple[float, ...] = (0.0,)
    label: str = ""

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self):
        return self.label or ",".join(repr(float(c)) for c in self.coeffs)


ZERO = Poly((0.0,), "zero")
HARMONIC = Poly((0.5,), "harmonic")


def parse_poly(text: str) -> Poly:
    text = text.strip()
    if text in ("", "zero", "0"):
        return ZERO
    if text == "harmonic":
        return HARMONIC
    m = re.fullmatch(r"constant\(\s*([^)]+)\s*\)", text)
    if m:
        return Poly((float(Fraction(m.group(1))),), text)
    try:
        coeffs = tuple(float(Fraction(c.strip())) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise PotentialSpecError(f"cannot read polynomial {text!r}") from exc
    return Poly(coeffs, text)


@dataclass(frozen=True)
class PotentialSpec:
    g2: Poly = ZERO
    g1: Poly = ZERO
    g0: Poly = ZERO
    lam: Fraction = Fraction(0)
    T: float = 1.2
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.lam < 0:
            raise PotentialSpecError(f"lambda must be nonnegative, got {self.lam}")
        if self.lam != 0 and not self.g1.is_zero():
            raise PotentialSpecError(
                "lambda * g1 must vanish: an inverse-square term (lambda != 0) "
                "cannot be combined with a linear term g1"
            )
        if not self.T > 0:
            raise PotentialSpecError("T must be positive")

    @property
    def is_free(self) -> bool:
        """g2 and g1 vanish identically, so chi_2 = 1 and gamma is the identity."""
        return self.g2.is_zero() and self.g1.is_zero()

    def V(self, t, x):
        v = self.g2(t) * x * x + self.g1(t) * x + self.g0(t)
        if self.lam:
            v = v + float(self.lam) / (x * x)
        return v

    def canonical(self) -> str:
        return f"g2={self.g2}; g1={self.g1}; g0={self.g0}; lambda={self.lam}; T={self.T!r}"


PRESETS = {
    "zero": "g2=zero; g1=zero; g0=zero; lambda=0",
    "harmonic": "g2=harmonic; g1=zero; g0=zero; lambda=0",
    "linear": "g2=zero; g1=constant(1); g0=zero; lambda=0",
    "ramp": "g2=zero; g1=0,1; g0=zero; lambda=0",
}


def parse_potential(text: str) -> PotentialSpec:
    """Read ``g2=<poly>; g1=<poly>; g0=<poly>; lambda=<rational>; T=<real>``.

    Missing fields default to zero (T to 1.2).  A bare preset name from
    ``PRESETS`` is also accepted.
    """
    raw = text.strip()
    body = PRESETS.get(raw, raw)
    fields = {}
    for part in body.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise PotentialSpecError(f"expected key=value, got {part!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        k = {"λ": "lambda", "lam": "lambda"}.get(k, k)
        if k not in ("g2", "g1", "g0", "lambda", "T"):
            raise PotentialSpecError(f"unknown field {k!r}")
        fields[k] = v
    try:
        lam = Fraction(fields.get("lambda", "0"))
        T = float(fields.get("T", "1.2"))
    except (ValueError, ZeroDivisionError) as exc:
        raise PotentialSpecError(str(exc)) from exc
    return PotentialSpec(
        g2=parse_poly(fields.get("g2", "zero")),
        g1=parse_poly(fields.get("g1", "zero")),
        g0=parse_poly(fields.get("g0", "zero")),
        lam=lam,
        T=T,
        text=raw,
    )
