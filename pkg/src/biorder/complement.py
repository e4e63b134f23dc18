"""Complement involutions on a biordered set and the orthogonal sum ``e (+) f``."""

from __future__ import annotations

import itertools
import multiprocessing as mp
from dataclasses import dataclass

import numpy as np

from .biorder import BiorderedSet, RouteDisagreementError
from .report import VerificationReport, make_report
from .rings import RingTable, complement_of


class PreconditionError(ValueError):
    """An operation was called outside its hypothesis."""


class ComplementMap:
    """An involution candidate ``e -> e'`` on the idempotents of ``B``.

    Stored by position: ``c[i]`` is the position of the image of ``B.E[i]``.
    """

    def __init__(self, B: BiorderedSet, c):
        c = np.asarray(c, dtype=np.int64)
        if c.shape != (B.k,) or c.min() < 0 or c.max() >= B.k:
            raise ValueError("complement map must send E into E")
        self.B = B
        self.c = c
        self._sandwich_cache = {}

    @classmethod
    def from_ring(cls, B: BiorderedSet, ring: RingTable | None = None) -> ComplementMap:
        """``e -> 1 - e`` computed in the ring."""
        ring = ring if ring is not None else B.semigroup.ring
        if ring is None:
            raise ValueError("no ring attached; pass a complement mapping explicitly")
        return cls(B, B.positions([complement_of(ring, int(e)) for e in B.E]))

    @classmethod
    def from_mapping(cls, B: BiorderedSet, mapping: dict) -> ComplementMap:
        return cls(B, B.positions([mapping[int(e)] for e in B.E]))

    @classmethod
    def identity(cls, B: BiorderedSet) -> ComplementMap:
        return cls(B, np.arange(B.k))

    def __call__(self, e: int) -> int:
        return self.B.element(self.c[self.B.pos(e)])

    def as_dict(self) -> dict[int, int]:
        return {self.B.element(i): self.B.element(j) for i, j in enumerate(self.c)}

    def sandwich(self, i: int, j: int) -> np.ndarray:
        key = (i, j)
        if key not in self._sandwich_cache:
            self._sandwich_cache[key] = self.B.sandwich_positions(i, j, "abstract")
        return self._sandwich_cache[key]


@dataclass(frozen=True)
class OplusResult:
    e: int
    f: int
    h: int
    sandwich_witness: int
    characterized: bool
    ring_sum_ok: bool | None = None


def _pair_failures(B, bad, names=("f", "e")):
    return [{names[0]: B.element(i), names[1]: B.element(j)} for i, j in np.argwhere(bad)]


def verify_E1(B: BiorderedSet) -> VerificationReport:
    """A unique idempotent below every idempotent in ``omega``."""
    below_all = np.flatnonzero(B.OM.all(axis=1))
    failures = []
    details = {}
    if len(below_all) != 1:
        failures.append({"reason": "no omega-least idempotent", "candidates": B.elements(below_all)})
    else:
        e0 = B.element(below_all[0])
        details["zero"] = e0
        zero = B.semigroup.zero
        if zero is not None and zero != e0:
            failures.append({"reason": "least idempotent differs from semigroup zero",
                             "least": e0, "zero": zero})
    return make_report("E1", "exists 0 with 0 omega e for each e", failures,
                       witnesses=[details] if details else [], details=details)


def verify_E2(B: BiorderedSet, c: ComplementMap) -> VerificationReport:
    """(i) involution; (ii) f wl e iff c(e) wr c(f); (iii) f wl c(e) iff M(f,e) = {0}.

    Counterexample pairs are reported as ``{"f": f, "e": e}``.
    """
    cc = c.c
    failures = []
    bad_i = np.flatnonzero(cc[cc] != np.arange(B.k))
    failures += [{"condition": "i", "e": B.element(i)} for i in bad_i]
    # ii: lhs[f, e] = f wl e ; rhs[f, e] = c(e) wr c(f)
    rhs = B.OR[np.ix_(cc, cc)].T
    bad_ii = B.OL != rhs
    failures += [dict(condition="ii", **p) for p in _pair_failures(B, bad_ii)]
    # iii: lhs[f, e] = f wl c(e) ; rhs[f, e] = M(f, e) = {0}
    bad_iii = B.OL[:, cc] != B.m_is_zero
    failures += [dict(condition="iii", **p) for p in _pair_failures(B, bad_iii)]
    counts = {"i": int(len(bad_i)), "ii": int(bad_ii.sum()), "iii": int(bad_iii.sum())}
    return make_report("E2", "complement map satisfying (i)-(iii)", failures,
                       details={"pairs": B.k * B.k, "failures_by_condition": counts})


def verify_duals(B: BiorderedSet, c: ComplementMap) -> VerificationReport:
    """(i) ``1 = c(0)`` is the top; (ii) f wr e iff c(e) wl c(f); (iii) f wr c(e) iff M(e,f) = {0}."""
    cc = c.c
    failures = []
    details = {}
    if B.bottom is None:
        failures.append({"condition": "i", "reason": "no least idempotent"})
    else:
        one = int(cc[B.bottom])
        details["one"] = B.element(one)
        below = np.flatnonzero(~B.OM[:, one])
        failures += [{"condition": "i", "e": B.element(i)} for i in below]
    bad_ii = B.OR != B.OL[np.ix_(cc, cc)].T
    failures += [dict(condition="ii", **p) for p in _pair_failures(B, bad_ii)]
    bad_iii = B.OR[:, cc] != B.m_is_zero.T
    failures += [dict(condition="iii", **p) for p in _pair_failures(B, bad_iii)]
    return make_report("E2-dual", "duals of (E1), (E2)", failures,
                       witnesses=[details] if details else [], details=details)


def orthogonal_pairs(B: BiorderedSet, c: ComplementMap) -> np.ndarray:
    """Position pairs ``(e, f)`` with ``f omega c(e)``."""
    return np.argwhere(B.OM[:, c.c].T)


def e3_intersection(B: BiorderedSet, c: ComplementMap, i: int, j: int) -> np.ndarray:
    """``S(c(e), c(f)) & S(c(f), c(e))`` by positions."""
    a, b = int(c.c[i]), int(c.c[j])
    return np.intersect1d(c.sandwich(a, b), c.sandwich(b, a))


_E3_STATE = {}


def _e3_scan(bounds):
    B, c, pairs = _E3_STATE["args"]
    failures, sample = [], []
    for i, j in pairs[bounds[0]:bounds[1]]:
        inter = e3_intersection(B, c, i, j)
        e, f = B.element(i), B.element(j)
        if len(inter) != 1:
            failures.append({"e": e, "f": f, "intersection": B.elements(inter)})
            continue
        w = B.element(inter[0])
        expected = int(B.products[c.c[i], c.c[j]])
        if w != expected:
            failures.append({"e": e, "f": f, "witness": w, "product": expected})
        elif len(sample) < 50:
            sample.append({"e": e, "f": f, "witness": w})
    return failures, sample


def verify_E3(B: BiorderedSet, c: ComplementMap, workers: int = 1) -> VerificationReport:
    """For every ``f omega c(e)`` the two sandwich sets meet in exactly one point,
    and that point is the product ``c(e) c(f)``.  ``workers > 1`` splits the
    pair scan over forked processes."""
    pairs = orthogonal_pairs(B, c)
    _E3_STATE["args"] = (B, c, pairs)
    cuts = np.linspace(0, len(pairs), max(1, workers) * 4 + 1).astype(int)
    chunks = list(zip(cuts[:-1], cuts[1:]))
    try:
        if workers > 1 and "fork" in mp.get_all_start_methods():
            with mp.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_e3_scan, chunks)
        else:
            parts = [_e3_scan(ch) for ch in chunks]
    finally:
        _E3_STATE.clear()
    failures = [x for part in parts for x in part[0]]
    sample = [x for part in parts for x in part[1]][:50]
    return make_report("E3", "S(e',f') & S(f',e') nonempty (and a singleton)", failures,
                       witnesses=sample, details={"pairs": int(len(pairs))})


def oplus(B: BiorderedSet, c: ComplementMap, e: int, f: int, ring=None) -> OplusResult:
    """``e (+) f = c(w)`` where ``w`` is the unique point of ``S(c(e),c(f)) & S(c(f),c(e))``."""
    i, j = B.pos(e), B.pos(f)
    if not B.OM[j, c.c[i]]:
        raise PreconditionError(f"{f} is not omega-below c({e}) = {c(e)}")
    a, b = int(c.c[i]), int(c.c[j])
    for x, y in ((a, b), (b, a)):
        abstract = c.sandwich(x, y)
        semi = B.sandwich_positions(x, y, "semigroup")
        if not np.array_equal(abstract, semi):
            raise RouteDisagreementError(
                f"S({B.element(x)}, {B.element(y)}): abstract {B.elements(abstract)} "
                f"!= semigroup {B.elements(semi)}")
    inter = e3_intersection(B, c, i, j)
    if len(inter) != 1:
        raise PreconditionError(
            f"E3 fails at ({e}, {f}): intersection {B.elements(inter)} is not a singleton")
    w = int(inter[0])
    h = int(c.c[w])
    ring = ring if ring is not None else B.semigroup.ring
    ring_ok = None if ring is None else ring.add(e, f) == B.element(h)
    return OplusResult(int(e), int(f), B.element(h), B.element(w),
                       _characterizes(B, i, j, h), ring_ok)


def _characterizes(B, i, j, h) -> bool:
    """``h`` is the only idempotent above ``e`` and ``f`` in omega that lies
    wl-below every common wl-upper bound and wr-below every common wr-upper bound."""
    OL, OR, OM = B.OL, B.OR, B.OM
    up_l = OL[i] & OL[j]
    up_r = OR[i] & OR[j]
    cand = OM[i] & OM[j]
    cand &= OL[:, up_l].all(axis=1)
    cand &= OR[:, up_r].all(axis=1)
    return np.array_equal(np.flatnonzero(cand), [h])


def check_oplus(B: BiorderedSet, c: ComplementMap, ring=None) -> VerificationReport:
    """Over every ``f omega c(e)``: the characterization of ``e (+) f`` and,
    with a ring, ``e (+) f = e + f``.  Pairs with ``ef = fe = 0`` in the
    ring must be exactly the pairs scanned."""
    ring = ring if ring is not None else B.semigroup.ring
    failures = []
    pairs = orthogonal_pairs(B, c)
    sums = 0
    for i, j in pairs:
        e, f = B.element(i), B.element(j)
        try:
            res = oplus(B, c, e, f, ring)
        except (PreconditionError, RouteDisagreementError) as exc:
            failures.append({"e": e, "f": f, "reason": str(exc)})
            continue
        if not res.characterized:
            failures.append({"e": e, "f": f, "h": res.h, "reason": "not characterized"})
        if res.ring_sum_ok is False:
            failures.append({"e": e, "f": f, "h": res.h, "reason": "h != e + f"})
        sums += res.ring_sum_ok is True
    details = {"pairs": int(len(pairs)), "ring_sums_checked": int(sums)}
    if ring is not None:
        zero = ring.zero_index
        orth = (B.products == zero) & (B.products.T == zero)
        scanned = np.zeros_like(orth)
        scanned[pairs[:, 0], pairs[:, 1]] = True
        for i, j in np.argwhere(orth != scanned):
            failures.append({"e": B.element(i), "f": B.element(j),
                             "reason": "ef = fe = 0 disagrees with f omega c(e)"})
        details["orthogonal_pairs"] = int(orth.sum())
    return make_report("oplus", "e (+) f; equals e + f in a ring", failures, details=details)


def oplus_chain(B: BiorderedSet, c: ComplementMap, es, *, seed: int = 0) -> int:
    """Fold ``(+)`` over pairwise-orthogonal idempotents, checking order and
    bracketing independence (all orders for up to 4 terms, 24 seeded orders
    beyond; left and right folds for each)."""
    es = [int(e) for e in es]
    if not es:
        raise PreconditionError("empty family")
    pos = B.positions(es)
    for a, b in itertools.permutations(range(len(es)), 2):
        if not B.m_is_zero[pos[a], pos[b]]:
            raise PreconditionError(f"M({es[a]}, {es[b]}) != {{0}}")
    if len(es) <= 4:
        orders = list(itertools.permutations(es))
    else:
        rng = np.random.default_rng(seed)
        orders = [tuple(es)] + [tuple(rng.permutation(es).tolist()) for _ in range(23)]
    values = set()
    for order in orders:
        left = order[0]
        for x in order[1:]:
            left = oplus(B, c, left, x).h
        right = order[-1]
        for x in reversed(order[:-1]):
            right = oplus(B, c, x, right).h
        values.update((left, right))
    if len(values) != 1:
        raise RuntimeError(f"(+) over {es} is ambiguous: {sorted(values)}")
    return values.pop()


def verify_annid(B: BiorderedSet, ring: RingTable | None = None) -> VerificationReport:
    """In a ring: f wl e iff (1-f)(1-e) = 1-e, and f wl (1-e) iff fe = 0,
    with both right-hand sides evaluated by ring arithmetic."""
    ring = ring if ring is not None else B.semigroup.ring
    if ring is None:
        raise ValueError("ring arithmetic required")
    E = B.E
    ce = ring.sub(ring.one_index, E)
    # rhs_i[f, e] = (1-f)(1-e) == 1-e
    rhs_i = ring.mul(ce[:, None], ce[None, :]) == ce[None, :]
    # lhs_ii[f, e] = f (1-e) == f ; rhs_ii[f, e] = f e == 0
    lhs_ii = ring.mul(E[:, None], ce[None, :]) == E[:, None]
    rhs_ii = ring.mul(E[:, None], E[None, :]) == ring.zero_index
    failures = [dict(condition="i", **p) for p in _pair_failures(B, B.OL != rhs_i)]
    failures += [dict(condition="ii", **p) for p in _pair_failures(B, lhs_ii != rhs_ii)]
    return make_report("annid", "ring complement e -> 1 - e versus the biorder", failures,
                       details={"pairs": B.k * B.k})
