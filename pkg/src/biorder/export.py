"""JSON and DOT renderings of biorders, quotient lattices and E-sequence graphs.

All output is sorted by index so equal inputs give byte-identical text.
"""

from __future__ import annotations

import json

import numpy as np

from .biorder import BiorderedSet
from .lattice import QuotientLattice
from .report import plain
from .sequences import DistanceTable


def dumps(obj) -> str:
    return json.dumps(plain(obj), indent=2, sort_keys=True) + "\n"


def _pairs(B, dense):
    return [[B.element(i), B.element(j)] for i, j in np.argwhere(dense)]


def biorder_json(B: BiorderedSet, c=None) -> dict:
    ii, jj = np.nonzero(B.basic >= 0)
    out = {
        "subject": B.semigroup.name,
        "idempotents": list(B.elements(np.arange(B.k))),
        "omega_l": _pairs(B, B.OL),
        "omega_r": _pairs(B, B.OR),
        "basic_products": [[B.element(i), B.element(j), B.element(B.basic[i, j])]
                           for i, j in zip(ii, jj)],
    }
    if c is not None:
        out["complement"] = [[e, ce] for e, ce in sorted(c.as_dict().items())]
    return out


def lattice_json(L: QuotientLattice) -> dict:
    return {
        "side": L.side,
        "classes": [{"id": i, "representative": L.label(i), "members": list(cl)}
                    for i, cl in enumerate(L.classes)],
        "order_pairs": [[int(a), int(b)] for a, b in np.argwhere(L.leq)],
        "join": L.join.tolist(),
        "meet": L.meet.tolist(),
        "bottom": L.bottom,
        "top": L.top,
        "is_lattice": L.is_lattice,
    }


def distances_json(T: DistanceTable) -> dict:
    return {
        "idempotents": list(T.B.elements(np.arange(T.B.k))),
        "d": T.d.tolist(),
        "d_l": T.d_l.tolist(),
        "d_r": T.d_r.tolist(),
    }


def _dot(name, nodes, edges, directed=True) -> str:
    kind, arrow = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{kind} {name} {{", "  rankdir=BT;" if directed else "  layout=neato;"]
    lines += [f'  n{n} [label="{label}"];' for n, label in nodes]
    for a, b, *attr in edges:
        extra = f' [label="{attr[0]}"]' if attr else ""
        lines.append(f"  n{a} {arrow} n{b}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def omega_hasse_dot(B: BiorderedSet) -> str:
    """Hasse diagram of the partial order omega (edges point upward)."""
    lt = B.OM & ~np.eye(B.k, dtype=bool)
    f = lt.astype(np.float32)
    cover = lt & ~((f @ f) > 0)
    nodes = [(e, e) for e in B.elements(np.arange(B.k))]
    edges = [(B.element(i), B.element(j)) for i, j in np.argwhere(cover)]
    return _dot("omega", nodes, edges)


def lattice_hasse_dot(L: QuotientLattice) -> str:
    nodes = [(i, f"{L.label(i)} ({len(cl)})") for i, cl in enumerate(L.classes)]
    return _dot(f"lattice_{L.side}", nodes, L.hasse_edges())


def lr_graph_dot(T: DistanceTable) -> str:
    """The L/R multigraph on ``E`` without loops; edge labels ``l`` and ``r``."""
    B = T.B
    nodes = [(e, e) for e in B.elements(np.arange(B.k))]
    edges = []
    for label, rel in (("l", T.graph.L.dense), ("r", T.graph.R.dense)):
        upper = np.triu(rel, k=1)
        edges += [(B.element(i), B.element(j), label) for i, j in np.argwhere(upper)]
    edges.sort()
    return _dot("lr", nodes, edges, directed=False)
