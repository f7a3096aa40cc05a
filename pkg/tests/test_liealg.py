from fractions import Fraction

import pytest

from sl2rep.ktypes import KTypeIndex, ktype_function, to_noncompact
from sl2rep.liealg import (
    SUBGROUPS,
    ExpQuadraticProbe,
    apply_compact,
    cross_picture_deviation,
    derivative_check,
    extract_coefficients,
    group_action,
    ladder_terms,
    probe_grid,
    verify_ladder,
)

IDX = [KTypeIndex(1, 2, 5), KTypeIndex(0, 2, 4), KTypeIndex(3, 3, -3), KTypeIndex(2, 1, 0)]


def test_kappa_is_diagonal():
    for idx in IDX:
        rec = verify_ladder("kappa", idx)
        assert rec.deviation <= 1e-10


@pytest.mark.parametrize("gen", ["eta_plus", "eta_minus"])
@pytest.mark.parametrize("idx", IDX)
def test_eta_ladder(gen, idx):
    rec = verify_ladder(gen, idx)
    assert rec.deviation <= 1e-10
    assert rec.fitted_sign == 1


def test_eta_annihilates_extremal():
    # lowest weight m = 2l+1 for q = 1, highest weight for q = 3
    assert ladder_terms("eta_minus", KTypeIndex(1, 2, 5)) == []
    assert ladder_terms("eta_plus", KTypeIndex(3, 2, -5)) == []
    assert verify_ladder("eta_minus", KTypeIndex(1, 2, 5)).deviation <= 1e-10
    assert verify_ladder("eta_plus", KTypeIndex(3, 2, -5)).deviation <= 1e-10


def test_eta_coefficient_exact():
    (term,) = ladder_terms("eta_plus", KTypeIndex(1, 2, 5))
    assert term.coefficient == Fraction(-10, 4)
    assert term.target == KTypeIndex(1, 2, 9)


@pytest.mark.parametrize("gen", ["E_plus", "E_minus"])
@pytest.mark.parametrize("idx", IDX)
def test_E_derived_coefficients(gen, idx):
    rec = verify_ladder(gen, idx, source="derived")
    assert rec.deviation <= 1e-9
    assert rec.fit_residual <= 1e-9


def test_E_decomposition_closes():
    pts, _ = probe_grid()
    for gen in ("E_plus", "E_minus"):
        _, resid = extract_coefficients(gen, KTypeIndex(1, 3, 3), pts)
        assert resid <= 1e-9


def test_E_stated_coefficients_disagree():
    # the stated E+ magnitude and the stated E- sign are not reproduced
    assert verify_ladder("E_plus", KTypeIndex(1, 2, 5)).deviation > 1e-3
    assert verify_ladder("E_minus", KTypeIndex(1, 2, 1)).deviation > 1e-3


def test_probe_grid_too_small():
    with pytest.raises(ValueError):
        verify_ladder("eta_plus", KTypeIndex(1, 2, 5), points=[(0.1, 0.5)] * 4)


def test_ladder_rejects_non_ladder_generator():
    with pytest.raises(ValueError):
        ladder_terms("kappa", KTypeIndex(1, 2, 5))


@pytest.mark.parametrize("sub", SUBGROUPS)
def test_group_derivative_derived(sub):
    assert derivative_check(sub).relative <= 1e-6


@pytest.mark.parametrize("sub", ["A", "Nbar", "K", "Heis"])
def test_group_derivative_printed_differs(sub):
    assert derivative_check(sub, convention="printed").relative > 1e-3


def test_group_identity_at_zero():
    p = ExpQuadraticProbe({(0, 2): -0.5, (1, 0): 0.2})
    for sub in SUBGROUPS:
        assert group_action(sub, 0.0, p, 0.3, 0.7) == pytest.approx(p(0.3, 0.7), rel=1e-15)


@pytest.mark.parametrize("gen", ["kappa", "eta_plus", "eta_minus"])
def test_cross_picture(gen):
    a, b = cross_picture_deviation(gen, KTypeIndex(1, 2, 5), 0.35, 0.9)
    assert abs(a - b) <= 1e-7 * max(1.0, abs(a))


def test_compact_action_on_value():
    idx = KTypeIndex(1, 2, 5)
    F = ktype_function(idx)
    assert apply_compact("kappa", idx, 0.2, 0.6) == pytest.approx(2.5 * F(0.2, 0.6), rel=1e-12)
    assert to_noncompact(F)(0.0, 0.6) == pytest.approx(F(0.0, 0.6))
