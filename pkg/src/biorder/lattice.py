"""Quotient lattices ``E/L`` and ``E/R`` and lattice-level checks.

Classes are numbered in order of their representative, the least idempotent
index in the class.  Join and meet are derived from the order by searching
for unique least upper (greatest lower) bounds; when one is missing the
quotient is reported as "not a lattice" rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .biorder import BiorderedSet
from .bitrel import BitRelation
from .complement import ComplementMap, e3_intersection, oplus_chain, orthogonal_pairs
from .report import VerificationReport, make_report
from .rings import MatrixRing, gaussian_binomial
from .sequences import distance_table

PRINCIPAL_IDEAL_LIMIT = 4096


def _bounds(leq: np.ndarray, upper: bool) -> np.ndarray:
    """``out[a, b]`` = the least common upper bound (or greatest common lower
    bound) of ``a`` and ``b``, ``-1`` when there is none."""
    rel = leq if upper else leq.T
    c = len(rel)
    not_le = (~rel).astype(np.float32)
    out = np.full((c, c), -1, dtype=np.int64)
    for a in range(c):
        common = rel[a][None, :] & rel  # common[b, x]: x bounds a and b
        # x is least iff no common bound y lies outside x's up-set
        bad = common.astype(np.float32) @ not_le.T
        least = common & (bad == 0)
        hit = least.sum(axis=1) == 1
        out[a, hit] = least[hit].argmax(axis=1)
    return out


class QuotientLattice:
    """A finite poset on class ids ``0..size-1`` with derived join/meet tables.

    ``labels[i]`` is how class ``i`` is named in reports: the representative
    idempotent for a quotient of ``E``, the raw label for a raw order.
    """

    def __init__(self, leq, side, classes, labels, class_of_pos=None, B=None):
        self.leq = np.asarray(leq, dtype=bool)
        self.leq.flags.writeable = False
        self.order = BitRelation.from_dense(self.leq)
        self.side = side
        self.classes = [tuple(cl) for cl in classes]
        self.labels = list(labels)
        self.class_of_pos = class_of_pos
        self.B = B
        self.size = len(self.leq)
        self.join = _bounds(self.leq, upper=True)
        self.meet = _bounds(self.leq, upper=False)
        bot = np.flatnonzero(self.leq.all(axis=1))
        top = np.flatnonzero(self.leq.all(axis=0))
        self.bottom = int(bot[0]) if len(bot) == 1 else None
        self.top = int(top[0]) if len(top) == 1 else None

    def __repr__(self) -> str:
        return f"QuotientLattice(side={self.side}, size={self.size})"

    @classmethod
    def from_order(cls, n: int, pairs, labels=None) -> QuotientLattice:
        """A raw order on ``0..n-1`` generated by ``pairs`` (reflexive-transitive
        closure).  Raises ValueError when the closure is not antisymmetric."""
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            leq[a, b] = True
        for m in range(n):
            leq |= leq[:, m:m + 1] & leq[m:m + 1, :]
        if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
            raise ValueError("the generated relation is not antisymmetric")
        labels = list(range(n)) if labels is None else list(labels)
        return cls(leq, "raw", [(i,) for i in range(n)], labels)

    @cached_property
    def diagnosis(self) -> list[dict]:
        """Structured reasons the poset fails to be a lattice (empty if it is one)."""
        out = []
        if not self.order.is_antisymmetric() or not self.order.is_transitive():
            out.append({"reason": "not a partial order"})
        for name, table in (("join", self.join), ("meet", self.meet)):
            missing = np.argwhere(table < 0)
            if len(missing):
                a, b = missing[0]
                out.append({"reason": f"no {name}", "a": self.label(a), "b": self.label(b),
                            "pairs": int(len(missing))})
        return out

    @property
    def is_lattice(self) -> bool:
        return not self.diagnosis

    def label(self, i) -> int:
        return self.labels[int(i)]

    def class_of(self, e: int) -> int:
        if self.B is None:
            return int(e)
        return int(self.class_of_pos[self.B.pos(e)])

    def join_all(self, classes) -> int:
        acc = self.bottom
        for a in classes:
            acc = int(self.join[acc, a])
        return acc

    @cached_property
    def complements(self) -> np.ndarray:
        """``complements[a, x]``: ``x`` is a complement of ``a``."""
        return (self.meet == self.bottom) & (self.join == self.top)

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs ``(a, b)``: ``a < b`` with nothing strictly between."""
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        through = (lt.astype(np.float32) @ lt.astype(np.float32)) > 0
        return [tuple(map(int, p)) for p in np.argwhere(lt & ~through)]


def quotient_lattice(B: BiorderedSet, side: str = "left") -> QuotientLattice:
    """``E/L`` (``side="left"``) or ``E/R`` with the induced order."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    rel = B.OL if side == "left" else B.OR
    equiv = rel & rel.T
    first = equiv.argmax(axis=1)  # least position in each class
    reps = np.unique(first)
    class_of_pos = np.searchsorted(reps, first)
    classes = [B.elements(np.flatnonzero(class_of_pos == i)) for i in range(len(reps))]
    leq = rel[np.ix_(reps, reps)]
    return QuotientLattice(leq, side, classes, B.elements(reps), class_of_pos, B)


def _require_lattice(L, check):
    if L.is_lattice:
        return None
    return make_report(check, "lattice condition", L.diagnosis,
                       details={"size": L.size, "not_a_lattice": True})


def check_modular(L: QuotientLattice) -> VerificationReport:
    """``a <= c`` implies ``a v (b ^ c) = (a v b) ^ c`` over all triples."""
    early = _require_lattice(L, "modular")
    if early:
        return early
    J, M, leq = L.join, L.meet, L.leq
    failures = []
    count = 0
    for a in range(L.size):
        cs = np.flatnonzero(leq[a])
        lhs = J[a, M[:, cs]]  # [b, c]
        rhs = M[J[a, :][:, None], cs[None, :]]
        bad = np.argwhere(lhs != rhs)
        count += len(bad)
        if len(bad) and not failures:
            b, ci = bad[0]
            failures.append({"a": L.label(a), "b": L.label(b), "c": L.label(cs[ci])})
    return make_report("modular", "complemented modular lattice", failures,
                       details={"size": L.size}, total=count)


def check_complemented(L: QuotientLattice, c: ComplementMap | None = None) -> VerificationReport:
    """Every class has a complement; with ``c``, ``class(c(e))`` complements ``class(e)``."""
    early = _require_lattice(L, "complemented")
    if early:
        return early
    comp = L.complements
    failures = [{"class": L.label(a)} for a in np.flatnonzero(~comp.any(axis=1))]
    witnesses = [{"class": L.label(a), "complement": L.label(comp[a].argmax())}
                 for a in range(L.size) if comp[a].any()]
    if c is not None:
        if L.B is not c.B or L.side != "left":
            raise ValueError("complement map must belong to the biorder of this left quotient")
        a = L.class_of_pos
        b = L.class_of_pos[c.c]
        for i in np.flatnonzero(~comp[a, b]):
            failures.append({"e": c.B.element(i), "c(e)": c.B.element(c.c[i]),
                             "reason": "class(c(e)) is not a complement of class(e)"})
    return make_report("complemented", "complements of each other", failures,
                       witnesses=witnesses[:50], details={"size": L.size})


def dual_isomorphism_check(L_left: QuotientLattice, L_right: QuotientLattice,
                           c: ComplementMap) -> VerificationReport:
    """``class_L(e) -> class_R(c(e))`` is well defined, bijective and order-reversing."""
    B = c.B
    if L_left.B is not B or L_right.B is not B:
        raise ValueError("both quotients must come from the complement map's biorder")
    src = L_left.class_of_pos
    dst = L_right.class_of_pos[c.c]
    failures = []
    phi = np.full(L_left.size, -1, dtype=np.int64)
    for i in range(B.k):
        a, b = src[i], dst[i]
        if phi[a] < 0:
            phi[a] = b
        elif phi[a] != b:
            failures.append({"reason": "not well defined", "class": L_left.label(a),
                             "e": B.element(i)})
    bijective = L_left.size == L_right.size and len(np.unique(phi)) == L_right.size
    if not bijective:
        failures.append({"reason": "not bijective", "left": L_left.size,
                         "right": L_right.size})
    else:
        reversed_ok = L_left.leq == L_right.leq[np.ix_(phi, phi)].T
        for a, b in np.argwhere(~reversed_ok)[:10]:
            failures.append({"reason": "not order-reversing", "a": L_left.label(a),
                             "b": L_left.label(b)})
    return make_report("dual-isomorphism", "dually isomorphic", failures,
                       details={"left_classes": L_left.size, "right_classes": L_right.size})


def independent(L: QuotientLattice, classes) -> bool:
    """Each ``a_i`` meets the join of the others at bottom (empty join is bottom)."""
    classes = [int(a) for a in classes]
    if not classes:
        raise ValueError("need at least one class")
    for i, a in enumerate(classes):
        rest = L.join_all(classes[:i] + classes[i + 1:])
        if L.meet[a, rest] != L.bottom:
            return False
    return True


def perspective(L: QuotientLattice, a: int, b: int):
    """Least class complementing both ``a`` and ``b``, or None."""
    both = np.flatnonzero(L.complements[a] & L.complements[b])
    return int(both[0]) if len(both) else None


def perspectivity_matrix(L: QuotientLattice) -> np.ndarray:
    comp = L.complements.astype(np.float32)
    return (comp @ comp.T) > 0


@dataclass
class BasisCertificate:
    elements: tuple[int, ...]
    classes: tuple[int, ...]
    conditions: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    first_failure: str | None = None
    join_class: int | None = None
    perspectivity_witnesses: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def meets_size_hypothesis(self) -> bool:
        return self.n >= 4

    @property
    def valid(self) -> bool:
        return self.first_failure is None

    def to_report(self) -> VerificationReport:
        details = {"n": self.n, "conditions": dict(self.conditions),
                   "first_failure": self.first_failure,
                   "n_at_least_4": self.meets_size_hypothesis,
                   "join_class": self.join_class}
        witnesses = [{"elements": list(self.elements), "classes": list(self.classes),
                      "perspectivity": [{"i": i, "j": j, "common_complement": x}
                                        for (i, j), x in sorted(self.perspectivity_witnesses.items())]}]
        return make_report("homogeneous-basis", "homogeneous basis", self.failures,
                           witnesses=witnesses if self.valid else [], details=details)


def homogeneous_basis_check(L: QuotientLattice, B: BiorderedSet, c: ComplementMap,
                            es) -> BasisCertificate:
    """Check the basis conditions on ``es`` in order, stopping at the first
    failed one.  A family of fewer than four members is flagged through
    ``meets_size_hypothesis`` but still checked."""
    es = tuple(int(e) for e in es)
    pos = B.positions(es)
    cert = BasisCertificate(es, tuple(int(L.class_of_pos[p]) for p in pos))
    n = len(es)
    pairs = [(a, b) for a, b in itertools.permutations(range(n), 2)]

    def fail(name, items):
        cert.conditions[name] = not items
        if items:
            cert.failures.extend(dict(condition=name, **x) for x in items)
            cert.first_failure = name
        return bool(items)

    bad = [{"e": es[a], "f": es[b]} for a, b in pairs if not B.m_is_zero[pos[a], pos[b]]]
    if fail("E4-i", bad):
        return cert
    top = int(c.c[B.bottom]) if B.bottom is not None else B.top
    above = np.flatnonzero(B.OM[pos].all(axis=0))
    bad = [] if top is not None and above.tolist() == [top] else [
        {"upper_bounds": list(B.elements(above))}]
    if fail("E4-ii", bad):
        return cert
    dl = distance_table(B).d_l
    bad = [{"e": es[a], "f": es[b], "d_l": int(dl[pos[a], pos[b]])}
           for a, b in pairs if dl[pos[a], pos[b]] != 3]
    if fail("E4-iii", bad):
        return cert
    if fail("independent", [] if independent(L, cert.classes) else [{"classes": list(cert.classes)}]):
        return cert
    cert.join_class = L.join_all(cert.classes)
    if fail("join-is-top", [] if cert.join_class == L.top else
            [{"join": L.label(cert.join_class), "top": L.label(L.top)}]):
        return cert
    bad = []
    for a, b in itertools.combinations(range(n), 2):
        x = perspective(L, cert.classes[a], cert.classes[b])
        if x is None:
            bad.append({"e": es[a], "f": es[b]})
        else:
            cert.perspectivity_witnesses[(es[a], es[b])] = L.label(x)
    fail("pairwise-perspective", bad)
    return cert


def check_sum_lattice(B: BiorderedSet, c: ComplementMap, L: QuotientLattice) -> VerificationReport:
    """For every ``f omega c(e)``: ``L(e) v L(f) = L(e (+) f)`` and ``L(e) ^ L(f)`` is bottom."""
    if L.B is not B or L.side != "left":
        raise ValueError("expected the left quotient of B")
    cls = L.class_of_pos
    failures = []
    pairs = orthogonal_pairs(B, c)
    for i, j in pairs:
        inter = e3_intersection(B, c, i, j)
        e, f = B.element(i), B.element(j)
        if len(inter) != 1:
            failures.append({"e": e, "f": f, "reason": "no unique sum"})
            continue
        h = int(c.c[inter[0]])
        if L.join[cls[i], cls[j]] != cls[h]:
            failures.append({"e": e, "f": f, "sum": B.element(h), "reason": "join"})
        if L.meet[cls[i], cls[j]] != L.bottom:
            failures.append({"e": e, "f": f, "reason": "meet"})
    return make_report("sum-lattice", "L(e) v L(f) = L(e (+) f)", failures,
                       details={"pairs": int(len(pairs))})


def random_orthogonal_family(B: BiorderedSet, rng, size: int) -> list[int]:
    """Greedy seeded family with ``M(e_i, e_j) = {0}`` for ``i != j``; may come
    out shorter than ``size`` if the greedy scan runs dry."""
    chosen = []
    for p in rng.permutation(B.k):
        if all(B.m_is_zero[p, q] and B.m_is_zero[q, p] for q in chosen):
            chosen.append(int(p))
            if len(chosen) == size:
                break
    return list(B.elements(chosen))


def check_independent_families(B: BiorderedSet, c: ComplementMap, L: QuotientLattice,
                               families) -> VerificationReport:
    """Pairwise-orthogonal families have independent classes joining to ``L(e_1 (+) ... )``."""
    failures = []
    for es in families:
        classes = [L.class_of(e) for e in es]
        total = oplus_chain(B, c, es)
        if not independent(L, classes):
            failures.append({"family": list(es), "reason": "not independent"})
        elif L.join_all(classes) != L.class_of(total):
            failures.append({"family": list(es), "reason": "join != class of sum",
                             "sum": total})
    return make_report("independent-families", "independent elements", failures,
                       details={"families": len(families)})


def check_principal_ideal_order(L: QuotientLattice,
                                limit: int = PRINCIPAL_IDEAL_LIMIT) -> VerificationReport:
    """``class(e) <= class(f)`` iff the principal one-sided ideal of ``e`` lies in that of ``f``."""
    B = L.B
    S = B.semigroup
    if S.order > limit:
        raise ValueError(f"order {S.order} is over the principal-ideal scan limit {limit}")
    prods = S.products_with_all(B.E, L.side)
    ideal = np.zeros(prods.shape, dtype=bool)
    np.put_along_axis(ideal, prods, True, axis=1)
    outside = (ideal.astype(np.float32) @ (~ideal).astype(np.float32).T) == 0
    expected = L.leq[np.ix_(L.class_of_pos, L.class_of_pos)]
    failures = [{"e": B.element(i), "f": B.element(j)}
                for i, j in np.argwhere(outside != expected)]
    return make_report("principal-ideal-order", "principal one-sided ideals", failures,
                       details={"pairs": B.k * B.k})


def _rref(m: np.ndarray, q: int) -> np.ndarray:
    m = m.copy() % q
    rows, cols = m.shape
    r = 0
    for col in range(cols):
        piv = np.flatnonzero(m[r:, col])
        if not len(piv):
            continue
        p = r + piv[0]
        m[[r, p]] = m[[p, r]]
        m[r] = (m[r] * pow(int(m[r, col]), q - 2, q)) % q
        others = np.arange(rows) != r
        m[others] = (m[others] - np.outer(m[others, col], m[r])) % q
        r += 1
        if r == rows:
            break
    return m


def row_space_key(ring: MatrixRing, x: int) -> bytes:
    return _rref(ring.decode(x), ring.q).astype(np.int8).tobytes()


def check_subspace_lattice(L: QuotientLattice) -> VerificationReport:
    """For ``M_n(GF(q))``: L-classes are exactly the row spaces of idempotents,
    their count is the number of subspaces of ``GF(q)^n``, and the class order
    is inclusion of row spaces."""
    B = L.B
    ring = B.semigroup.ring
    if not isinstance(ring, MatrixRing) or L.side != "left":
        raise ValueError("expected the left quotient of a matrix ring")
    n, q = ring.n, ring.q
    keys = [row_space_key(ring, int(e)) for e in B.E]
    failures = []
    expected = sum(gaussian_binomial(n, r, q) for r in range(n + 1))
    if L.size != expected:
        failures.append({"reason": "class count", "classes": L.size, "subspaces": expected})
    by_key = {}
    for i, key in enumerate(keys):
        by_key.setdefault(key, set()).add(int(L.class_of_pos[i]))
    if len(by_key) != L.size or any(len(v) != 1 for v in by_key.values()):
        failures.append({"reason": "classes differ from row spaces"})
    reps = [B.pos(x) for x in L.labels]
    mats = [ring.decode(int(B.E[p])) for p in reps]
    ranks = [int(np.count_nonzero(_rref(m, q).any(axis=1))) for m in mats]
    for a, b in itertools.product(range(L.size), repeat=2):
        stacked = np.vstack([mats[b], mats[a]])
        contained = np.count_nonzero(_rref(stacked, q).any(axis=1)) == ranks[b]
        if contained != L.leq[a, b]:
            failures.append({"reason": "order", "a": L.label(a), "b": L.label(b)})
            break
    return make_report("subspace-lattice", "lattice of subspaces", failures,
                       details={"classes": L.size, "subspaces": expected})
