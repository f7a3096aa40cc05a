import pytest
import sympy as sp

from sl2rep.weyl.coeffs import PARAMS

t_sym, x_sym = sp.symbols("t x")
PARAM_SYMBOLS = {name: sp.Symbol(name) for name in PARAMS}
F_SYM = sp.Function("f")(t_sym, x_sym)


def parampoly_to_sympy(p):
    out = sp.Integer(0)
    for exp, c in p.terms.items():
        coef = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator
        )
        mono = sp.Integer(1)
        for name, k in zip(PARAMS, exp):
            mono *= PARAM_SYMBOLS[name] ** k
        out += coef * mono
    return out


def sympy_apply(op, f=F_SYM):
    """Apply a WeylOperator to a sympy expression in t, x."""
    out = sp.Integer(0)
    for (i, j, k, l), c in op.terms.items():
        g = f
        if k:
            g = sp.diff(g, t_sym, k)
        if l:
            g = sp.diff(g, x_sym, l)
        out += parampoly_to_sympy(c) * t_sym**i * x_sym**j * g
    return out


@pytest.fixture
def apply_sym():
    return sympy_apply
