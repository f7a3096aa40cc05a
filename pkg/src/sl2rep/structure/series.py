"""Composition-series reports verified on a truncated window.

Subspace labels follow the definition block: for q = 1 the span
H_k^+ = {Psi_{m,k} : m >= 2k+1} (lowest-weight ladders), for q = 3 the span
H_k^- = {Psi_{m,k} : m <= -(2k+1)} (highest-weight ladders).  The report
also evaluates the opposite labeling, which is not invariant.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Tuple

from ..ktypes.lattice import KTypeIndex
from .truncated import (
    TruncatedModule,
    Window,
    build_truncated,
    detect_extremal,
    verify_invariance,
    verify_irreducible_quotient,
)

Predicate = Callable[[KTypeIndex], bool]


def _none(idx):
    return False


def _low(idx):
    return idx.l in (0, 1)


def _all(idx):
    return True


def _half(sign: int, ks=None) -> Predicate:
    """Extremal-ladder half: m >= 2k+1 (sign=+1) or m <= -(2k+1) (sign=-1)."""

    def pred(idx: KTypeIndex) -> bool:
        if ks is not None and idx.l not in ks:
            return False
        return sign * idx.m >= 2 * idx.l + 1

    return pred


def _or(*preds: Predicate) -> Predicate:
    return lambda idx: any(p(idx) for p in preds)


@dataclass
class ChainMember:
    name: str
    description: str
    dim_in_window: int
    invariant: bool
    violations: List[dict] = field(default_factory=list)


@dataclass
class Subquotient:
    name: str
    irreducible_interior: bool
    interior_vertices: int = 0
    unreachable_pairs: List[Tuple[dict, dict]] = field(default_factory=list)


@dataclass
class SeriesReport:
    q: int
    window: dict
    chain: List[ChainMember]
    subquotients: List[Subquotient]
    extremal: List[dict] = field(default_factory=list)
    boundary_caveats: List[str] = field(default_factory=list)
    alternative_labeling: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(c.invariant for c in self.chain) and all(
            s.irreducible_interior for s in self.subquotients
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def chain_for(q: int):
    """Named chain members ``(name, description, predicate)``, smallest first (excluding 0)."""
    q %= 4
    if q in (0, 2):
        return [
            ("H_0+H_1", "K-types with l in {0, 1}", _low),
            ("H", "whole window", _all),
        ]
    sign = 1 if q == 1 else -1
    sym = "+" if q == 1 else "-"
    ladder = "lowest-weight ladders from m=2k+1" if q == 1 else "highest-weight ladders from m=-(2k+1)"
    half01 = _half(sign, ks=(0, 1))
    half_all = _half(sign)
    return [
        (f"H_0^{sym}+H_1^{sym}", f"l in {{0, 1}}, {ladder}", half01),
        ("H_0+H_1", "K-types with l in {0, 1}", _low),
        (f"H_0+H_1+H^{sym}", f"l in {{0, 1}} plus, for l >= 2, {ladder}", _or(_low, half_all)),
        ("H", "whole window", _all),
    ]


def _evaluate_chain(module: TruncatedModule, members):
    chain, subs = [], []
    prev_name, prev_pred = "0", _none
    for name, desc, pred in members:
        inv = verify_invariance(module, pred)
        dim = sum(1 for b in module.basis if pred(b))
        chain.append(ChainMember(name, desc, dim, inv.invariant, inv.violations))
        irr = verify_irreducible_quotient(module, pred, prev_pred)
        label = name if prev_name == "0" else f"({name})/({prev_name})"
        subs.append(Subquotient(label, irr.irreducible_interior, irr.interior_vertices,
                                irr.unreachable_pairs))
        prev_name, prev_pred = name, pred
    return chain, subs


def composition_series(q: int, l_max: int = 6, m_bound: int = 29, source: str = "paper") -> SeriesReport:
    window = Window(q, l_max, m_bound)
    module = build_truncated(window, source)
    chain, subs = _evaluate_chain(module, chain_for(window.q))
    extremal = []
    for l in range(l_max + 1):
        kind, m = detect_extremal(window.q, l)
        if kind != "none":
            extremal.append({"l": l, "kind": kind, "m": m})
    caveats = [
        f"verified on interior vectors only (l <= {l_max - 1}, |m| <= {m_bound - 4}); "
        "boundary vectors are excluded from invariance checks",
        "finite truncation: infinite-dimensional statements are not proven",
    ]
    alt = None
    if window.q in (1, 3):
        sign = -1 if window.q == 1 else 1
        sym = "-" if window.q == 1 else "+"
        inv = verify_invariance(module, _half(sign, ks=(0, 1)))
        alt = {
            "name": f"H_0^{sym}+H_1^{sym} (opposite labeling)",
            "invariant": inv.invariant,
            "violation_count": len(inv.violations),
        }
    return SeriesReport(window.q, window.as_dict(), chain, subs, extremal, caveats, alt)
