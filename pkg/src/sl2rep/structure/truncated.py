"""Exact generator matrices on a finite window of the weight lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..ktypes.lattice import KTypeIndex, window_indices
from ..liealg.ladder import ladder_terms

MATRIX_GENERATORS = ("kappa", "eta_plus", "eta_minus", "E_plus", "E_minus")


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    q: int
    l_max: int = 6
    m_bound: int = 29

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % 4)
        if self.l_max < 2:
            raise WindowError(f"window too small for extremal weights: l_max={self.l_max} < 2")
        if self.m_bound < 2 * self.l_max + 5:
            raise WindowError(
                f"window too small for extremal weights: m_bound={self.m_bound} < 2*l_max+5"
                f" = {2 * self.l_max + 5}"
            )

    def contains(self, idx: KTypeIndex) -> bool:
        return idx.l <= self.l_max and abs(idx.m) <= self.m_bound

    def is_interior(self, idx: KTypeIndex) -> bool:
        """Every generator image of ``idx`` stays inside the window."""
        return idx.l + 1 <= self.l_max and abs(idx.m) + 4 <= self.m_bound

    def as_dict(self) -> dict:
        return {"q": self.q, "l_max": self.l_max, "m_bound": self.m_bound}


# column -> list of (target, coefficient); coefficients exact
SparseColumns = Dict[KTypeIndex, List[Tuple[KTypeIndex, Fraction]]]


@dataclass
class TruncatedModule:
    window: Window
    basis: List[KTypeIndex]
    matrices: Dict[str, SparseColumns]
    boundary_mask: Dict[KTypeIndex, bool] = field(default_factory=dict)
    source: str = "paper"

    def position(self) -> Dict[KTypeIndex, int]:
        return {b: i for i, b in enumerate(self.basis)}

    def interior(self) -> List[KTypeIndex]:
        return [b for b in self.basis if not self.boundary_mask[b]]

    def entries(self, gen: str):
        """Yield ``(target, source, coefficient)`` with both ends in the window."""
        for src, col in self.matrices[gen].items():
            for tgt, c in col:
                if self.window.contains(tgt):
                    yield tgt, src, c

    def dense(self, gen: str) -> np.ndarray:
        """Float matrix, rows and columns ordered as ``basis``."""
        pos = self.position()
        out = np.zeros((len(self.basis), len(self.basis)))
        for tgt, src, c in self.entries(gen):
            out[pos[tgt], pos[src]] = float(c)
        return out

    def exact(self, gen: str) -> Dict[Tuple[int, int], Fraction]:
        pos = self.position()
        return {(pos[t], pos[s]): c for t, s, c in self.entries(gen)}


def build_truncated(window: Window, source: str = "paper") -> TruncatedModule:
    basis = window_indices(window.q, window.l_max, window.m_bound)
    mats: Dict[str, SparseColumns] = {g: {} for g in MATRIX_GENERATORS}
    mask = {}
    for b in basis:
        mats["kappa"][b] = [(b, Fraction(b.m, 2))] if b.m else []
        for g in MATRIX_GENERATORS[1:]:
            mats[g][b] = [(t.target, t.coefficient) for t in ladder_terms(g, b, source)]
        mask[b] = not window.is_interior(b)
    return TruncatedModule(window, basis, mats, mask, source)


def detect_extremal(q: int, l: int):
    """('lowest', 2l+1), ('highest', -(2l+1)) or ('none', None)."""
    q %= 4
    if l < 0:
        raise ValueError("l must be nonnegative")
    if (2 * l + 1 - 2 * l - q) % 4 == 0:
        return "lowest", 2 * l + 1
    if (-(2 * l + 1) - 2 * l - q) % 4 == 0:
        return "highest", -(2 * l + 1)
    return "none", None


Predicate = Callable[[KTypeIndex], bool]


@dataclass
class InvarianceReport:
    invariant: bool
    checked: int
    violations: List[dict]


def verify_invariance(module: TruncatedModule, subspace: Predicate,
                      generators=MATRIX_GENERATORS) -> InvarianceReport:
    """Check that interior vectors of the subspace are mapped into it."""
    violations = []
    checked = 0
    for b in module.basis:
        if module.boundary_mask[b] or not subspace(b):
            continue
        checked += 1
        for g in generators:
            for tgt, c in module.matrices[g][b]:
                if c != 0 and not subspace(tgt):
                    violations.append(
                        {
                            "generator": g,
                            "source": b.as_dict(),
                            "target": tgt.as_dict(),
                            "coefficient": str(c),
                        }
                    )
    return InvarianceReport(not violations, checked, violations)


@dataclass
class IrreducibilityReport:
    irreducible_interior: bool
    vertices: int
    interior_vertices: int
    components: int
    unreachable_pairs: List[Tuple[dict, dict]]


def verify_irreducible_quotient(module: TruncatedModule, larger: Predicate, smaller: Predicate,
                                generators=MATRIX_GENERATORS, max_pairs: int = 20
                                ) -> IrreducibilityReport:
    """Strong connectivity of the quotient graph ``larger / smaller``.

    Vertices are window basis vectors in ``larger`` but not ``smaller``; edges
    are nonzero matrix entries between them.  Paths may pass through boundary
    vertices, but only interior vertices must be mutually reachable.
    """
    verts = [b for b in module.basis if larger(b) and not smaller(b)]
    pos = {v: i for i, v in enumerate(verts)}
    rows, cols = [], []
    for g in generators:
        for v in verts:
            for tgt, c in module.matrices[g][v]:
                if c != 0 and tgt in pos and tgt != v:
                    rows.append(pos[v])
                    cols.append(pos[tgt])
    n = len(verts)
    interior = [v for v in verts if not module.boundary_mask[v]]
    if n == 0:
        return IrreducibilityReport(True, 0, 0, 0, [])
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, labels = connected_components(graph, directed=True, connection="strong")
    comp_of_interior = {labels[pos[v]] for v in interior}
    unreachable = []
    if len(comp_of_interior) > 1:
        first = {}
        for v in interior:
            first.setdefault(labels[pos[v]], v)
        reps = list(first.values())
        for a in reps:
            for b in reps:
                if a != b and len(unreachable) < max_pairs:
                    unreachable.append((a.as_dict(), b.as_dict()))
    return IrreducibilityReport(len(comp_of_interior) <= 1, n, len(interior),
                                len(comp_of_interior), unreachable)


def commutator_check(module: TruncatedModule) -> Dict[str, float]:
    """Max |[kappa, eta+/-] -/+ 2 eta+/-| on interior columns whose images stay interior."""
    K = module.dense("kappa")
    pos = module.position()
    cols = [pos[b] for b in module.basis
            if not module.boundary_mask[b]
            and all(not module.boundary_mask.get(t, True) for t, _ in module.matrices["eta_plus"][b])
            and all(not module.boundary_mask.get(t, True) for t, _ in module.matrices["eta_minus"][b])]
    out = {}
    for g, sign in (("eta_plus", 2), ("eta_minus", -2)):
        E = module.dense(g)
        C = K @ E - E @ K - sign * E
        out[g] = float(np.max(np.abs(C[:, cols]))) if cols else 0.0
    return out
