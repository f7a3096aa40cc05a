"""Acceptance criteria, one test and one printed PASS/FAIL line per criterion.

Tolerances and runtime limits are pinned; a criterion passes only when its
metric is within tolerance and it finishes inside the runtime limit.
"""

import time

import numpy as np
import pytest

from sl2rep.cli.suites import (
    cond_D_sweep,
    ladder_sweep,
    round_trip_worst,
    schrodinger_sweep,
)
from sl2rep.hyperfun import contiguous_residual, kummer_ode_residual, sample_grid
from sl2rep.liealg import SUBGROUPS, derivative_check
from sl2rep.structure import composition_series, detect_extremal
from sl2rep.tdreduce import (
    bracket_residual_L,
    chi_identities_residual,
    free_gaussian,
    parse_potential,
    solve_chi,
    td_residual,
    transform_solution,
)
from sl2rep.weyl import (
    T,
    casimir,
    casimir_closed_form,
    casimir_kernel_identity,
    heis_commutator_identity,
    op_bracket,
    sl2_generators,
    x_pow,
)
from sl2rep.weyl.operator import WeylOperator


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, runtime, limit, lines):
        ok = ok and runtime < limit
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:02d} {name}: {'PASS' if ok else 'FAIL'} "
                  f"(runtime {runtime:.2f}s, limit {limit:g}s)")
            for line in lines:
                print(f"    {line}")
        return ok

    return emit


def _line(label, metric, tol):
    verdict = "ok" if metric <= tol else "over"
    return f"{label}: {metric:.3e} (tol {tol:.0e}) {verdict}"


def _nterms(op: WeylOperator) -> int:
    return len(op.terms)


def test_01_casimir_symbolic(report):
    t0 = time.perf_counter()
    omega, _ = casimir()
    n = _nterms(omega - casimir_closed_form())
    dt = time.perf_counter() - t0
    assert report(1, "casimir_symbolic", n == 0, dt, 1.0, [f"difference terms: {n}"])


def test_02_kernel_factorization(report):
    t0 = time.perf_counter()
    n = _nterms(casimir_kernel_identity())
    dt = time.perf_counter() - t0
    assert report(2, "kernel_factorization", n == 0, dt, 1.0, [f"difference terms: {n}"])


def test_03_heisenberg_commutator(report):
    t0 = time.perf_counter()
    lam, u, v = (WeylOperator.param(p) for p in ("lam", "u", "v"))
    computed = heis_commutator_identity()
    stated = 4 * lam * (T * v - u) * x_pow(-3)
    n = _nterms(computed - stated)
    dt = time.perf_counter() - t0
    lines = [f"stated form +4 lam (t v - u) x^-3, difference terms: {n}",
             f"computed commutator: {computed}"]
    assert report(3, "heisenberg_commutator", n == 0, dt, 1.0, lines)


def test_04_sl2_brackets_and_centrality(report):
    t0 = time.perf_counter()
    h, ep, em = sl2_generators()
    omega, _ = casimir()
    diffs = [op_bracket(h, ep) - 2 * ep, op_bracket(h, em) + 2 * em, op_bracket(ep, em) - h]
    diffs += [op_bracket(omega, g) for g in (h, ep, em)]
    counts = [_nterms(d) for d in diffs]
    dt = time.perf_counter() - t0
    assert report(4, "sl2_brackets_centrality", not any(counts), dt, 1.0,
                  [f"difference terms per identity: {counts}"])


def test_05_ktype_annihilation(report):
    t0 = time.perf_counter()
    worst, arg = cond_D_sweep()
    dt = time.perf_counter() - t0
    assert report(5, "ktype_annihilation", worst <= 1e-10, dt, 30.0,
                  [_line("max relative D-residual", worst, 1e-10), f"at {arg}"])


def test_06_eta_ladders(report):
    t0 = time.perf_counter()
    lines, ok = [], True
    for gen, sign in (("eta_plus", -1), ("eta_minus", 1)):
        recs = ladder_sweep(gen)
        worst = max(r.deviation for r in recs)
        ext = max(r.deviation for r in recs if r.index["m"] == sign * (2 * r.index["l"] + 1))
        signs = sorted({r.fitted_sign for r in recs})
        ok &= worst <= 1e-10 and ext <= 1e-10 and signs == [1]
        lines += [_line(f"{gen} deviation", worst, 1e-10),
                  _line(f"{gen} on extremal weights", ext, 1e-10),
                  f"{gen} fitted signs {signs}"]
    dt = time.perf_counter() - t0
    assert report(6, "eta_ladders", ok, dt, 30.0, lines)


def test_07_E_ladders(report):
    t0 = time.perf_counter()
    lines, ok = [], True
    for gen in ("E_plus", "E_minus"):
        recs = ladder_sweep(gen)
        fit = max(r.fit_residual for r in recs)
        mag_rec = max(recs, key=lambda r: r.magnitude_mismatch)
        signs = sorted({r.fitted_sign for r in recs})
        ok &= fit <= 1e-9 and mag_rec.magnitude_mismatch <= 1e-9
        lines += [_line(f"{gen} decomposition residual", fit, 1e-9),
                  _line(f"{gen} magnitude mismatch", mag_rec.magnitude_mismatch, 1e-9),
                  f"{gen} fitted global signs {signs}"]
        if mag_rec.magnitude_mismatch > 1e-9:
            lines.append(f"DISCREPANCY {gen} at {mag_rec.index}: predicted {mag_rec.predicted}, "
                         f"measured {mag_rec.measured}")
    dt = time.perf_counter() - t0
    assert report(7, "E_ladders", ok, dt, 30.0, lines)


def test_08_pictures_and_schrodinger(report):
    t0 = time.perf_counter()
    rt, _ = round_trip_worst()
    worst, arg, (rlo, rhi) = schrodinger_sweep()
    dt = time.perf_counter() - t0
    ok = rt <= 1e-12 and worst <= 1e-6 and 3.2 <= rlo and rhi <= 4.8
    lines = [_line("round trip (50 probes)", rt, 1e-12),
             _line("Schrodinger residual / scale", worst, 1e-6),
             f"order ratios in [{rlo:.3f}, {rhi:.3f}] (accepted [3.2, 4.8])"]
    assert report(8, "pictures_schrodinger", ok, dt, 60.0, lines)


def test_09_group_actions(report):
    t0 = time.perf_counter()
    res = {sub: derivative_check(sub).relative for sub in SUBGROUPS}
    dt = time.perf_counter() - t0
    ok = all(v <= 1e-6 for v in res.values())
    assert report(9, "group_actions", ok, dt, 30.0, [_line(k, v, 1e-6) for k, v in res.items()])


def test_10_structure(report):
    t0 = time.perf_counter()
    lines, ok = [], True
    for q in range(4):
        rep = composition_series(q, 6, 29)
        bad = [c.name for c in rep.chain if not c.invariant]
        bad += [s.name for s in rep.subquotients if not s.irreducible_interior]
        ok &= not bad
        lines.append(f"q={q}: chain {[c.name for c in rep.chain]}, failed {bad}")
    ext = [(q, l) for q in (0, 2) for l in range(7) if detect_extremal(q, l)[0] != "none"]
    ok &= not ext
    lines.append(f"extremal weights in q=0,2 windows: {ext}")
    dt = time.perf_counter() - t0
    assert report(10, "structure", ok, dt, 30.0, lines)


TD_T = np.linspace(-0.5, 0.5, 101)
TD_X = np.linspace(-1.5, 1.5, 151)


def test_11_tdreduce(report):
    t0 = time.perf_counter()
    lines, ok = [], True
    for name in ("zero", "harmonic", "linear"):
        cs = solve_chi(parse_potential(name))
        if name == "harmonic":
            mask = np.abs(cs.grid) <= 1.2
            err = float(np.max(np.abs(cs.chi2[mask] - np.cos(cs.grid[mask]))))
            ok &= err <= 1e-8
            lines.append(_line("harmonic chi_2 vs cos t", err, 1e-8))
        ids = chi_identities_residual(cs)
        br = bracket_residual_L(cs).max_residual
        ok &= ids.wronskian_drift <= 1e-8
        ok &= ids.A_identity_printed <= 1e-7 and ids.phi_identity <= 1e-7
        ok &= br <= 1e-5
        lines += [_line(f"{name} Wronskian drift", ids.wronskian_drift, 1e-8),
                  _line(f"{name} A-identity", ids.A_identity_printed, 1e-7),
                  _line(f"{name} phi'-identity", ids.phi_identity, 1e-7),
                  _line(f"{name} L_j brackets", br, 1e-5)]
        if ids.A_identity_printed > 1e-7:
            lines.append(f"{name} A-identity with +chi_2 Theta K sign: "
                         f"{ids.A_identity_corrected:.3e}")
        if name == "zero":
            gf = transform_solution(cs, free_gaussian, TD_T, TD_X)
            direct = np.array([[free_gaussian(float(a), float(b)) for b in TD_X] for a in TD_T])
            diff = float(np.max(np.abs(gf.samples - direct)))
            ok &= diff == 0.0
            lines.append(f"zero preset transform vs input: {diff:.3e} (must be exactly 0)")
        else:
            gf = transform_solution(cs, free_gaussian, TD_T, TD_X, "verbatim")
            rep = td_residual(gf, cs.spec, multiplier="verbatim")
            ok &= rep.verdict in ("PASS", "MULTIPLIER-DISCREPANCY")
            lines.append(f"{name} transform residual {rep.max_residual:.3e}: verdict {rep.verdict}")
    dt = time.perf_counter() - t0
    assert report(11, "tdreduce", ok, dt, 60.0, lines)


def test_12_special_functions(report):
    t0 = time.perf_counter()
    grid = sample_grid()
    res = {"ODE": max(kummer_ode_residual(*p) for p in grid)}
    for rel in ("U1", "U2", "U3", "U4"):
        res[rel] = max(contiguous_residual(rel, *p, relative=True) for p in grid)
    dt = time.perf_counter() - t0
    ok = all(v <= 1e-10 for v in res.values())
    lines = [f"grid points: {len(grid)}"] + [_line(k, v, 1e-10) for k, v in res.items()]
    assert report(12, "special_functions", ok, dt, 10.0, lines)
