import pytest

from sl2rep.structure import (
    Window,
    WindowError,
    build_truncated,
    chain_for,
    commutator_check,
    composition_series,
    detect_extremal,
    verify_invariance,
)


@pytest.mark.parametrize("q", range(4))
def test_series_verified(q):
    rep = composition_series(q)
    assert rep.passed
    assert rep.boundary_caveats
    assert [c.name for c in rep.chain] == [name for name, _, _ in chain_for(q)]


def test_chain_lengths():
    assert len(chain_for(0)) == 2
    assert len(chain_for(1)) == 4
    assert chain_for(3)[0][0] == "H_0^-+H_1^-"


@pytest.mark.parametrize("q", [1, 3])
def test_opposite_labeling_not_invariant(q):
    alt = composition_series(q).alternative_labeling
    assert alt is not None and not alt["invariant"]
    assert alt["violation_count"] > 0


def test_window_errors():
    with pytest.raises(WindowError, match="window too small"):
        Window(1, 1, 29)
    with pytest.raises(WindowError):
        Window(1, 6, 16)
    Window(1, 6, 17)


def test_detect_extremal():
    assert detect_extremal(1, 2) == ("lowest", 5)
    assert detect_extremal(3, 2) == ("highest", -5)
    assert detect_extremal(1, 0) == ("lowest", 1)
    for q in (0, 2):
        for l in range(10):
            assert detect_extremal(q, l) == ("none", None)
    with pytest.raises(ValueError):
        detect_extremal(1, -1)


@pytest.mark.parametrize("q", range(4))
def test_kappa_eta_commutators_exact(q):
    res = commutator_check(build_truncated(Window(q)))
    assert res["eta_plus"] == 0 and res["eta_minus"] == 0


def test_matrices_exact_rational():
    mod = build_truncated(Window(1))
    assert all(c.denominator >= 1 for c in mod.exact("E_plus").values())
    assert mod.dense("kappa").shape == (len(mod.basis), len(mod.basis))


def test_whole_window_invariant_and_empty_checked():
    mod = build_truncated(Window(2))
    assert verify_invariance(mod, lambda idx: True).invariant


def test_report_json():
    rep = composition_series(1, 4, 13)
    assert '"q": 1' in rep.to_json()
