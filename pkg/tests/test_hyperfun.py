import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2rep.hyperfun import (
    InvalidParameterError,
    PrecisionLossError,
    contiguous_residual,
    kummer_m,
    kummer_m_deriv,
    kummer_ode_residual,
    psi_jet,
    psi_value,
    sample_grid,
)
from sl2rep.ktypes import InadmissibleIndexError, KTypeIndex


def test_kummer_examples():
    assert kummer_m(0, 2.5, 7.3).value == 1.0
    assert kummer_m(1.5, 1.5, 1.0).value.real == pytest.approx(math.e, rel=1e-15)
    assert kummer_m(1, 2, 1).value.real == pytest.approx(math.e - 1, rel=1e-15)


def test_kummer_invalid_b():
    with pytest.raises(InvalidParameterError):
        kummer_m(1, -2, 0.5)
    with pytest.raises(InvalidParameterError):
        kummer_m(1, 0, 0.5)


def test_kummer_record_invariants():
    ev = kummer_m(-2.25, 1.5, 12.0)
    assert ev.condition_estimate >= 1
    assert ev.abs_error_estimate >= 0
    ref = float(mpmath.hyp1f1(-2.25, 1.5, 12.0))
    assert abs(ev.value.real - ref) <= max(ev.abs_error_estimate, 1e-15 * abs(ref)) * 10


@settings(max_examples=60, deadline=None)
@given(st.integers(-20, 20), st.integers(0, 6), st.floats(0.01, 25.0))
def test_kummer_matches_mpmath(a4, b, z):
    a, b = a4 / 4, b + 0.5
    ev = kummer_m(a, b, z)
    ref = float(mpmath.hyp1f1(a, b, z))
    assert abs(ev.value.real - ref) <= 1e-12 * max(1.0, ev.term_mass)


@settings(max_examples=30, deadline=None)
@given(st.integers(-5, 0), st.floats(0.5, 6.5), st.floats(0.0, 20.0))
def test_polynomial_termination(a, b, z):
    ev = kummer_m(a, b, z)
    assert ev.terms_used <= 1 - a


def test_derivative_examples():
    assert kummer_m_deriv(1, 2, 0, 1).value.real == 0.5
    for z in (0.0, 0.7, 3.0):
        assert kummer_m_deriv(-1, 1.5, z, 1).value.real == pytest.approx(-2 / 3, rel=1e-15)
    assert kummer_m_deriv(0.75, 2.5, 1.3, 0).value == kummer_m(0.75, 2.5, 1.3).value


def test_derivative_against_mpmath():
    for a, b, z, n in [(0.75, 2.5, 1.2, 2), (-3.25, 0.5, 7.0, 1), (2.0, 4.5, 20.0, 3)]:
        ref = float(mpmath.diff(lambda zz: mpmath.hyp1f1(a, b, zz), z, n))
        assert kummer_m_deriv(a, b, z, n).value.real == pytest.approx(ref, rel=1e-11)


def test_contiguous_examples():
    assert contiguous_residual("U1", 0.75, 2.5, 1.2, relative=True) <= 1e-12
    assert contiguous_residual("U2", 0.75, 2.5, 0.0) <= 1e-15
    assert contiguous_residual("U4", 1, 2, 1, relative=True) <= 1e-12
    with pytest.raises(ValueError):
        contiguous_residual("U5", 1, 2, 1)


def test_contiguous_at_function_zero():
    # M(b+1, b, z) = (1 + z/b) e^z, so M(1/2, -1/2, 1/2) = 0 exactly;
    # two coefficients of U3 vanish at this point as well
    assert abs(kummer_m(0.5, -0.5, 0.5).value) < 1e-30
    assert contiguous_residual("U3", 0.5, 0.5, 0.5, relative=True) <= 1e-10


def test_grid_residuals():
    grid = sample_grid()
    assert max(kummer_ode_residual(*p) for p in grid) <= 1e-10
    for rel in ("U1", "U2", "U3", "U4"):
        assert max(contiguous_residual(rel, *p, relative=True) for p in grid) <= 1e-10


def test_precision_modes(monkeypatch):
    # alternating series with heavy cancellation
    a, b, z = -40.25, 0.5, 30.0
    monkeypatch.setenv("SL2REP_PRECISION", "dd")
    ev = kummer_m(a, b, z)
    assert ev.tier == "extended"
    assert ev.value.real == pytest.approx(float(mpmath.hyp1f1(a, b, z)), rel=1e-10)
    monkeypatch.setenv("SL2REP_PRECISION", "double")
    with pytest.raises(PrecisionLossError):
        kummer_m(a, b, z)


# jets -----------------------------------------------------------------------

def test_psi_examples():
    assert psi_jet(KTypeIndex(1, 2, 5), 0, 1).value.real == pytest.approx(0.6065306597, abs=1e-10)
    assert psi_jet(KTypeIndex(3, 2, -5), 0, 1).value.real == pytest.approx(1.6487212707, abs=1e-10)
    assert psi_jet(KTypeIndex(1, 1, 7), 0, 1).value.real == pytest.approx(0.2021768866, abs=1e-10)


def test_psi_inadmissible():
    with pytest.raises(InadmissibleIndexError):
        psi_jet(KTypeIndex(0, 2, 5), 0, 1)


def test_psi_theta_derivative_is_phase():
    j = psi_jet(KTypeIndex(1, 2, 5), 0.4, 1.3)
    assert j.d_theta == -0.5j * 5 * j.value


@pytest.mark.parametrize("idx", [KTypeIndex(1, 2, 5), KTypeIndex(0, 3, -6), KTypeIndex(2, 0, 10)])
def test_psi_fd_consistency(idx):
    y, th = 0.9, 0.3
    j = psi_jet(idx, th, y)
    errs = []
    for h in (1e-2, 5e-3):
        fd = (psi_value(idx.l, idx.m, th, y + h) - psi_value(idx.l, idx.m, th, y - h)) / (2 * h)
        errs.append(abs(fd - j.d_y))
    assert 3.2 <= errs[0] / errs[1] <= 4.8


def test_psi_at_zero_finite():
    for l in range(4):
        idx = KTypeIndex(0, l, 2 * l % 4)
        j = psi_jet(idx, 0.0, 0.0)
        assert np.isfinite(j.value) and np.isfinite(j.d_y) and np.isfinite(j.d_yy)


def test_psi_odd_extension():
    idx = KTypeIndex(1, 3, 3)
    assert psi_value(3, 3, 0.2, -0.8) == pytest.approx(-psi_value(3, 3, 0.2, 0.8))
    assert psi_jet(idx, 0.2, -0.8).value == pytest.approx(-psi_jet(idx, 0.2, 0.8).value)
