"""Verification suites behind ``sl2rep verify``.

Each suite returns a list of :class:`Check` records in a fixed order.
Checks of published formulas that the computation contradicts are marked
``finding=True`` and end up as DISCREPANCY rather than FAIL.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, List

import numpy as np

from ..hyperfun import (
    contiguous_residual,
    kummer_m,
    kummer_m_deriv,
    kummer_ode_residual,
    psi_jet,
    sample_grid,
)
from ..ktypes import (
    KTypeIndex,
    cond_D_residual,
    ktype_function,
    parity_residual,
    schrodinger_residual,
    to_compact,
    to_noncompact,
    window_indices,
)
from ..liealg import SUBGROUPS, cross_picture_deviation, derivative_check, verify_ladder
from ..structure import Window, build_truncated, commutator_check, composition_series, detect_extremal
from ..tdreduce import (
    bracket_residual_L,
    chi_identities_residual,
    free_gaussian,
    parse_potential,
    solve_chi,
    td_residual,
    transform_solution,
)
from ..weyl import (
    T,
    casimir,
    casimir_closed_form,
    casimir_kernel_identity,
    heis_commutator_identity,
    heis_commutator_stated,
    heisenberg_generator,
    op_bracket,
    sl2_generators,
    x_pow,
)
from ..weyl.operator import WeylOperator
from .report import Check, Tolerances, judge

# index set of the K-type, ladder and annihilation sweeps
L_MAX, M_BOUND = 6, 21
TD_PRESETS = ("zero", "harmonic", "linear")


def index_set(l_max: int = L_MAX, m_bound: int = M_BOUND) -> List[KTypeIndex]:
    return [idx for q in range(4) for idx in window_indices(q, l_max, m_bound)]


# symbolic ------------------------------------------------------------------

def _exact(name: str, diff: WeylOperator, tol: Tolerances, finding=False, **details) -> Check:
    n = len(diff.terms)
    details = dict(details)
    if n:
        details["difference"] = str(diff)
    return judge(name, float(n), tol.get(name, 0.0), {"symbolic": True}, details, finding)


def suite_symbolic(tol: Tolerances) -> List[Check]:
    h, ep, em = sl2_generators()
    omega, _ = casimir()
    lam, u, v = (WeylOperator.param(p) for p in ("lam", "u", "v"))
    computed = heis_commutator_identity()
    brackets = (op_bracket(h, ep) - 2 * ep) + (op_bracket(h, em) + 2 * em) + (op_bracket(ep, em) - h)
    central = [op_bracket(omega, g) for g in (h, ep, em)]
    return [
        _exact("casimir_closed_form", omega - casimir_closed_form(), tol),
        _exact("casimir_kernel_factorization", casimir_kernel_identity(), tol),
        _exact("heis_commutator_stated", computed - heis_commutator_stated(), tol, finding=True,
               computed=str(computed), stated=str(heis_commutator_stated())),
        _exact("heis_commutator_computed", computed - (-4 * lam * (T * v - u) * x_pow(-3)), tol,
               form="-4 lam (t v - u) x^-3"),
        _exact("sl2_brackets", brackets, tol, relations="[h,e+]=2e+, [h,e-]=-2e-, [e+,e-]=h"),
        _exact("casimir_central", central[0] + central[1] + central[2], tol,
               per_generator=[len(c.terms) for c in central]),
        _exact("heisenberg_bracket",
               op_bracket(heisenberg_generator(1, 0, 0), heisenberg_generator(0, 1, 0))
               - 2 * WeylOperator.param("s"), tol, form="[X(1,0,0), X(0,1,0)] = 2s"),
    ]


# special functions ---------------------------------------------------------

def suite_special(tol: Tolerances) -> List[Check]:
    out = []
    examples = [
        ("kummer_a0", (0, 2.5, 7.3), 1.0),
        ("kummer_a_eq_b", (1.5, 1.5, 1.0), math.e),
        ("kummer_1_2_1", (1, 2, 1), math.e - 1),
    ]
    for name, args, ref in examples:
        val = kummer_m(*args).value
        out.append(judge(name, abs(val - ref) / abs(ref), tol.get(name, 1e-14),
                         {"abc": list(args)}, {"value": val, "reference": ref}))
    d = kummer_m_deriv(-1, 1.5, 0.8, 1).value
    out.append(judge("kummer_deriv_linear", abs(d + 2 / 3), tol.get("kummer_deriv_linear", 1e-14),
                     {"abzn": [-1, 1.5, 0.8, 1]}, {"value": d}))
    grid = sample_grid()
    worst, arg = max((kummer_ode_residual(*p), p) for p in grid)
    out.append(judge("kummer_ode", worst, tol.get("kummer_ode", 1e-10), {"worst_abz": list(arg)},
                     {"grid_points": len(grid)}))
    for rel in ("U1", "U2", "U3", "U4"):
        worst, arg = max((contiguous_residual(rel, *p, relative=True), p) for p in grid)
        name = f"contiguous_{rel}"
        out.append(judge(name, worst, tol.get(name, 1e-10), {"worst_abz": list(arg)},
                         {"grid_points": len(grid)}))
    # psi_jet examples
    for name, idx, ref in (
        ("psi_lowest", KTypeIndex(1, 2, 5), math.exp(-0.5)),
        ("psi_highest", KTypeIndex(3, 2, -5), math.exp(0.5)),
        ("psi_terminating", KTypeIndex(1, 1, 7), math.exp(-0.5) / 3),
    ):
        val = psi_jet(idx, 0.0, 1.0).value
        out.append(judge(name, abs(val - ref) / ref, tol.get(name, 1e-12), idx.as_dict(),
                         {"value": val, "reference": ref}))
    return out


# K-types -------------------------------------------------------------------

def _round_trip_probes(n: int = 50, seed: int = 20261019):
    rng = np.random.default_rng(seed)
    idx = index_set(4, 13)
    picks = rng.integers(0, len(idx), n)
    thetas = rng.uniform(-1.3, 1.3, n)
    ys = rng.uniform(-2.0, 2.0, n)
    return [(idx[int(k)], float(t), float(y)) for k, t, y in zip(picks, thetas, ys)]


def round_trip_worst():
    worst, arg = 0.0, None
    for idx, th, y in _round_trip_probes():
        F = ktype_function(idx)
        G = to_compact(to_noncompact(F))
        a, b = F(th, y), G(th, y)
        rel = abs(a - b) / max(1.0, abs(a))
        if rel >= worst:
            worst, arg = rel, {**idx.as_dict(), "theta": th, "y": y}
    return worst, arg


SCHRODINGER_PROBES = [(t, x) for t in (-0.7, 0.4) for x in (-1.3, 0.6, 1.9)]


def schrodinger_sweep(indices=None, probes=SCHRODINGER_PROBES, ratio_floor: float = 1e-7):
    """Worst relative residual and the range of h/(h/2) ratios over the sweep.

    Ratios are only meaningful where the coarse residual is above rounding;
    points with coarse residual below ``ratio_floor * scale`` are skipped.
    """
    worst, arg, ratios = 0.0, None, []
    for idx in indices if indices is not None else index_set():
        f = to_noncompact(ktype_function(idx))
        lam = idx.lambda_()
        for t, x in probes:
            r = schrodinger_residual(f, lam, t, x)
            if r.relative >= worst:
                worst, arg = r.relative, {**idx.as_dict(), "t": t, "x": x}
            if abs(r.coarse) / r.scale > ratio_floor:
                ratios.append(r.order_ratio)
    return worst, arg, (min(ratios), max(ratios)) if ratios else (float("nan"), float("nan"))


def cond_D_sweep(indices=None):
    ys = [0.05 * k for k in range(1, 61)]
    worst, arg = 0.0, None
    for idx in indices if indices is not None else index_set():
        for y in ys:
            r = cond_D_residual(idx, y).relative
            if r >= worst:
                worst, arg = r, {**idx.as_dict(), "y": y}
    return worst, arg


def suite_ktypes(tol: Tolerances) -> List[Check]:
    out = []
    worst, arg = cond_D_sweep()
    out.append(judge("cond_D", worst, tol.get("cond_D", 1e-10), arg,
                     {"l_max": L_MAX, "m_bound": M_BOUND, "y": "0.05..3.00"}))
    worst, arg = round_trip_worst()
    out.append(judge("round_trip", worst, tol.get("round_trip", 1e-12), arg, {"probes": 50}))
    worst, arg, (rlo, rhi) = schrodinger_sweep()
    out.append(judge("schrodinger_residual", worst, tol.get("schrodinger_residual", 1e-6), arg,
                     {"probes": SCHRODINGER_PROBES, "h": 1e-3}))
    dev = max(abs(rlo - 4.0), abs(rhi - 4.0))
    out.append(judge("schrodinger_order", dev, tol.get("schrodinger_order", 0.8), {},
                     {"ratio_min": rlo, "ratio_max": rhi, "accepted": [3.2, 4.8]}))
    return out


# ladder --------------------------------------------------------------------

def ladder_sweep(gen: str, source: str = "paper", indices=None):
    return [verify_ladder(gen, idx, source=source) for idx in (indices or index_set())]


def _worst(records, key: Callable):
    rec = max(records, key=key)
    return key(rec), rec


def suite_ladder(tol: Tolerances) -> List[Check]:
    out = []
    for gen in ("eta_plus", "eta_minus"):
        recs = ladder_sweep(gen)
        w, rec = _worst(recs, lambda r: r.deviation)
        signs = sorted({r.fitted_sign for r in recs})
        out.append(judge(f"{gen}_ladder", w, tol.get(f"{gen}_ladder", 1e-10), rec.index,
                         {"fitted_signs": signs, "indices": len(recs)}))
        sign = 1 if gen == "eta_minus" else -1
        extremal = [r for r in recs if r.index["m"] == sign * (2 * r.index["l"] + 1)]
        w, rec = _worst(extremal, lambda r: r.deviation)
        out.append(judge(f"{gen}_annihilates_extremal", w, tol.get(f"{gen}_annihilates_extremal", 1e-10),
                         rec.index, {"count": len(extremal)}))
    for gen in ("E_plus", "E_minus"):
        recs = ladder_sweep(gen)
        w, rec = _worst(recs, lambda r: r.fit_residual)
        out.append(judge(f"{gen}_decomposition", w, tol.get(f"{gen}_decomposition", 1e-9), rec.index,
                         {"meaning": "residual after fitting all reachable (m+/-2, l+/-1) targets"}))
        w, rec = _worst(recs, lambda r: r.magnitude_mismatch)
        out.append(judge(f"{gen}_magnitudes", w, tol.get(f"{gen}_magnitudes", 1e-9), rec.index,
                         {"predicted": rec.predicted, "measured": rec.measured}, finding=True))
        w, rec = _worst(recs, lambda r: r.deviation)
        signs = sorted({r.fitted_sign for r in recs})
        out.append(judge(f"{gen}_global_sign", w, tol.get(f"{gen}_global_sign", 1e-9), rec.index,
                         {"fitted_signs": signs, "fitted_sign_at_worst": rec.fitted_sign,
                          "predicted": rec.predicted, "measured": rec.measured}, finding=True))
        drecs = ladder_sweep(gen, "derived")
        w, rec = _worst(drecs, lambda r: r.deviation)
        out.append(judge(f"{gen}_derived_coefficients", w, tol.get(f"{gen}_derived_coefficients", 1e-9),
                         rec.index, {"fitted_signs": sorted({r.fitted_sign for r in drecs})}))
    return out


# group actions ---------------------------------------------------------------

def suite_group(tol: Tolerances) -> List[Check]:
    out = []
    for sub in SUBGROUPS:
        c = derivative_check(sub)
        out.append(judge(f"group_{sub}", c.relative, tol.get(f"group_{sub}", 1e-6),
                         {"subgroup": sub, "t": c.point[0], "x": c.point[1]},
                         {"derivative": c.derivative, "operator": c.operator_value}))
    for sub in SUBGROUPS:
        c = derivative_check(sub, convention="printed")
        out.append(judge(f"group_{sub}_printed", c.relative, tol.get(f"group_{sub}_printed", 1e-6),
                         {"subgroup": sub, "t": c.point[0], "x": c.point[1]},
                         {"derivative": c.derivative, "operator": c.operator_value}, finding=True))
    return out


# pictures ------------------------------------------------------------------

def suite_pictures(tol: Tolerances) -> List[Check]:
    out = []
    worst, arg = round_trip_worst()
    out.append(judge("round_trip", worst, tol.get("round_trip", 1e-12), arg, {"probes": 50}))
    worst, arg = 0.0, None
    for idx, th, y in _round_trip_probes(20):
        F = ktype_function(idx)
        for j in (1, 2, 3):
            r = abs(parity_residual(F, th, y, j)) / max(1.0, abs(F(th, y)))
            if r >= worst:
                worst, arg = r, {**idx.as_dict(), "theta": th, "y": y, "j": j}
    out.append(judge("parity", worst, tol.get("parity", 1e-12), arg))
    worst, arg = 0.0, None
    for idx in index_set(3, 9):
        for gen in ("kappa", "eta_plus", "eta_minus"):
            a, b = cross_picture_deviation(gen, idx, 0.35, 0.9)
            r = abs(a - b) / max(1.0, abs(a))
            if r >= worst:
                worst, arg = r, {**idx.as_dict(), "generator": gen, "theta": 0.35, "y": 0.9}
    out.append(judge("cross_picture", worst, tol.get("cross_picture", 1e-7), arg))
    return out


# structure -----------------------------------------------------------------

def suite_structure(tol: Tolerances) -> List[Check]:
    out = []
    for q in range(4):
        rep = composition_series(q)
        bad = [c.name for c in rep.chain if not c.invariant] + [
            s.name for s in rep.subquotients if not s.irreducible_interior
        ]
        out.append(judge(f"series_q{q}", float(len(bad)), tol.get(f"series_q{q}", 0.0),
                         {"q": q, **rep.window},
                         {"chain": [c.name for c in rep.chain], "failed": bad}))
    ext = [(q, l) for q in (0, 2) for l in range(7) if detect_extremal(q, l)[0] != "none"]
    out.append(judge("no_extremal_q02", float(len(ext)), tol.get("no_extremal_q02", 0.0), {},
                     {"found": ext}))
    worst = 0.0
    for q in range(4):
        worst = max(worst, *commutator_check(build_truncated(Window(q))).values())
    out.append(judge("kappa_eta_commutators", worst, tol.get("kappa_eta_commutators", 0.0), {}))
    out.append(Check("truncation", "CAVEAT", None, None, {},
                     {"note": "invariance verified on window interiors only"}))
    return out


# time-dependent reduction ----------------------------------------------------

TD_GRID = (np.linspace(-0.5, 0.5, 101), np.linspace(-1.5, 1.5, 151))


def suite_tdreduce(tol: Tolerances, presets=TD_PRESETS) -> List[Check]:
    out = []
    for name in presets:
        spec = parse_potential(name)
        cs = solve_chi(spec)
        inp = {"preset": name, "spec": spec.canonical()}
        if name == "harmonic":
            mask = np.abs(cs.grid) <= 1.2
            err = float(np.max(np.abs(cs.chi2[mask] - np.cos(cs.grid[mask]))))
            out.append(judge("chi2_cos", err, tol.get("chi2_cos", 1e-8), inp))
        ids = chi_identities_residual(cs)
        out.append(judge(f"wronskian_{name}", ids.wronskian_drift, tol.get("wronskian", 1e-8), inp))
        out.append(judge(f"chi_A_identity_stated_{name}", ids.A_identity_printed,
                         tol.get("chi_identity", 1e-7), inp, finding=True))
        out.append(judge(f"chi_A_identity_corrected_{name}", ids.A_identity_corrected,
                         tol.get("chi_identity", 1e-7), inp))
        out.append(judge(f"chi_phi_identity_{name}", ids.phi_identity, tol.get("chi_identity", 1e-7), inp))
        br = bracket_residual_L(cs)
        out.append(judge(f"L_brackets_{name}", br.max_residual, tol.get("L_brackets", 1e-5), inp,
                         {"relations": br.relations, "signs": "(+,-,-)"}))
        brp = bracket_residual_L(cs, signs="printed")
        out.append(judge(f"L_brackets_stated_signs_{name}", brp.max_residual, tol.get("L_brackets", 1e-5),
                         inp, {"relations": brp.relations, "signs": "(-1)^(j+1)"}, finding=True))
        t, x = TD_GRID
        if name == "zero":
            gf = transform_solution(cs, free_gaussian, t, x)
            direct = np.array([[free_gaussian(float(a), float(b)) for b in x] for a in t])
            diff = float(np.max(np.abs(gf.samples - direct)))
            out.append(judge("transform_identity_zero", diff, tol.get("transform_identity", 0.0), inp))
        for mult in ("verbatim", "corrected"):
            gf = transform_solution(cs, free_gaussian, t, x, mult)
            rep = td_residual(gf, spec, multiplier=mult)
            worst = max(rep.profile, key=lambda p: p["residual"])
            out.append(judge(f"td_residual_{mult}_{name}", rep.max_residual, tol.get("td_residual", 1e-5),
                             {**inp, "multiplier": mult, "worst_point": worst},
                             {"verdict": rep.verdict}, finding=(mult == "verbatim")))
    return out


SUITES: Dict[str, Callable[[Tolerances], List[Check]]] = {
    "symbolic": suite_symbolic,
    "special": suite_special,
    "ktypes": suite_ktypes,
    "ladder": suite_ladder,
    "group": suite_group,
    "pictures": suite_pictures,
    "structure": suite_structure,
    "tdreduce": suite_tdreduce,
}
