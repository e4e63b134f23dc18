"""E-sequences and the distances ``d``, ``d_l``, ``d_r`` between idempotents.

An E-sequence of length ``n`` is ``e_0, ..., e_n`` with consecutive members
L- or R-related; a step may repeat an element.  ``0`` encodes "no sequence"
and ``d(e, e) = 1``.  Distances are computed for all sources at once by
layered expansion of the reachable sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .biorder import BiorderedSet
from .bitrel import BitRelation
from .report import VerificationReport, make_report

DISTANCE_CAP = 255


@dataclass
class ESequenceGraph:
    B: BiorderedSet
    L: BitRelation
    R: BitRelation

    @classmethod
    def from_biorder(cls, B: BiorderedSet) -> ESequenceGraph:
        return cls(B, B.omega_l & B.omega_l.transpose(), B.omega_r & B.omega_r.transpose())

    def check_equivalences(self) -> VerificationReport:
        failures = []
        for name, rel in (("L", self.L), ("R", self.R)):
            for law, ok in (("reflexive", rel.is_reflexive()),
                            ("symmetric", rel.is_symmetric()),
                            ("transitive", rel.is_transitive())):
                if not ok:
                    failures.append({"relation": name, "law": law})
        return make_report("LR-equivalences", "L and R are equivalences", failures)


def _step(reach, rel):
    return (reach.astype(np.float32) @ rel.astype(np.float32)) > 0


def layered_distances(start, steps) -> np.ndarray:
    """Rows: sources.  ``start`` is the one-step reach; ``steps(n)`` gives the
    relation allowed for step ``n + 1``."""
    dist = np.where(start, 1, 0).astype(np.uint8)
    reach = start.copy()
    n = 1
    while True:
        nxt = reach | _step(reach, steps(n))
        new = nxt & ~reach
        if not new.any():
            return dist
        n += 1
        if n > DISTANCE_CAP:
            raise OverflowError(f"E-sequence distances exceed {DISTANCE_CAP}")
        dist[new] = n
        reach = nxt


class DistanceTable:
    """``d``, ``d_l``, ``d_r`` for every ordered pair, indexed by position."""

    def __init__(self, B: BiorderedSet):
        self.B = B
        self.graph = ESequenceGraph.from_biorder(B)
        L, R = self.graph.L.dense, self.graph.R.dense
        both = L | R
        self.d = layered_distances(both, lambda n: both)
        self.d_l = layered_distances(L, lambda n: both)
        self.d_r = layered_distances(R, lambda n: both)
        np.fill_diagonal(self.d, 1)

    def get(self, e: int, f: int, which: str = "d") -> int:
        table = {"d": self.d, "l": self.d_l, "r": self.d_r}[which]
        return int(table[self.B.pos(e), self.B.pos(f)])

    @cached_property
    def alternating(self) -> tuple[np.ndarray, np.ndarray]:
        """``d_l``, ``d_r`` restricted to sequences that strictly alternate L and R."""
        L, R = self.graph.L.dense, self.graph.R.dense
        dl = layered_distances(L, lambda n: R if n % 2 else L)
        dr = layered_distances(R, lambda n: L if n % 2 else R)
        return dl, dr

    def check(self) -> VerificationReport:
        """Consistency: symmetry of ``d``, ``d = min`` of the nonzero sided
        distances, the triangle inequality, and agreement with strictly
        alternating sequences."""
        B = self.B
        failures = []
        for i, j in np.argwhere(self.d != self.d.T)[:10]:
            failures.append({"law": "symmetric", "e": B.element(i), "f": B.element(j)})
        sided = np.where(self.d_l == 0, 255, self.d_l).astype(np.int64)
        sided = np.minimum(sided, np.where(self.d_r == 0, 255, self.d_r))
        sided = np.where(sided == 255, 0, sided)
        for i, j in np.argwhere(sided != self.d)[:10]:
            failures.append({"law": "min-of-sided", "e": B.element(i), "f": B.element(j)})
        d = self.d.astype(np.int64)
        nz = d > 0
        for f in range(B.k):
            via = np.where(nz[:, f, None] & nz[None, f, :], d[:, f, None] + d[None, f, :], 1 << 20)
            bad = nz & (d > via)
            if bad.any():
                i, j = np.argwhere(bad)[0]
                failures.append({"law": "triangle", "e": B.element(i), "f": B.element(f),
                                 "g": B.element(j)})
                break
        dl, dr = self.alternating
        alternation_agrees = np.array_equal(dl, self.d_l) and np.array_equal(dr, self.d_r)
        if not alternation_agrees:
            failures.append({"law": "alternation"})
        return make_report("distance-consistency", "length of the shortest E-sequence",
                           failures, details={"alternation_agrees": alternation_agrees,
                                              "max_d": int(self.d.max())})


def distance_table(B: BiorderedSet) -> DistanceTable:
    cached = getattr(B, "_distance_table", None)
    if cached is None:
        cached = DistanceTable(B)
        B._distance_table = cached
    return cached


def distance(B: BiorderedSet, e: int, f: int) -> int:
    return distance_table(B).get(e, f, "d")


def distance_sided(B: BiorderedSet, e: int, f: int, first: str = "L") -> int:
    """Shortest E-sequence length whose first step is ``first`` (``"L"`` or ``"R"``)."""
    if first not in ("L", "R"):
        raise ValueError(f"first must be 'L' or 'R', got {first!r}")
    return distance_table(B).get(e, f, first.lower())


def verify_idpersp(B: BiorderedSet, L, table: DistanceTable | None = None) -> VerificationReport:
    """``L(e)`` and ``L(f)`` are perspective iff ``1 <= d_l(e, f) <= 3``, over all pairs."""
    from .lattice import perspectivity_matrix

    if L.side != "left":
        raise ValueError("perspectivity is checked in the lattice of L-classes")
    table = table or distance_table(B)
    cls = L.class_of_pos
    persp = perspectivity_matrix(L)[np.ix_(cls, cls)]
    near = (table.d_l >= 1) & (table.d_l <= 3)
    forward = near & ~persp
    backward = persp & ~near
    failures = [{"e": B.element(i), "f": B.element(j), "d_l": int(table.d_l[i, j]),
                 "perspective": bool(persp[i, j])} for i, j in np.argwhere(forward | backward)]
    return make_report(
        "idpersp", "perspective iff 1 <= d_l(e,f) <= 3", failures,
        details={"pairs": B.k * B.k, "perspective_pairs": int(persp.sum()),
                 "near_implies_perspective_failures": int(forward.sum()),
                 "perspective_implies_near_failures": int(backward.sum())})
