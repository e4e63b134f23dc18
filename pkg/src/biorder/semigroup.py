"""Finite semigroups: idempotents, regularity, annihilators, principal ideals.

Sets of elements (ideals, annihilators) are returned as sorted lists of
indices.  Internally they are boolean masks of length ``order``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .report import MAX_LISTED, VerificationReport, make_report
from .rings import TABULATE_LIMIT, ModularRing, RingTable

EXHAUSTIVE_ASSOC_LIMIT = 512
_CELL_BUDGET = 1 << 22


class FiniteSemigroup:
    """A semigroup on ``range(order)``.

    ``product`` is either an ``order x order`` table or a vectorised callable
    ``(a, b) -> array``.  ``zero`` and ``identity`` are detected from a table
    when not given.
    """

    def __init__(self, order, product, *, zero=None, identity=None, name="S",
                 ring=None, associative=False):
        self.order = int(order)
        self.name = name
        self.ring = ring
        self.associative_by_construction = associative
        if callable(product):
            self._fn = product
            self.table = None
        else:
            table = np.asarray(product, dtype=np.int64)
            if table.shape != (self.order, self.order):
                raise ValueError(f"product table must be {order}x{order}, got {table.shape}")
            if table.min() < 0 or table.max() >= self.order:
                raise ValueError("product table has entries outside the carrier")
            self.table = table
            self._fn = None
            if zero is None:
                zero = _find_zero(table)
            if identity is None:
                identity = _find_identity(table)
        self.zero = zero
        self.identity = identity

    @classmethod
    def from_table(cls, table, name="S") -> FiniteSemigroup:
        table = np.asarray(table, dtype=np.int64)
        return cls(table.shape[0], table, name=name)

    @classmethod
    def from_ring(cls, ring: RingTable) -> FiniteSemigroup:
        """The multiplicative semigroup of ``ring``."""
        product = ring.mul_table if ring.tabulated else ring.mul
        return cls(ring.order, product, zero=ring.zero_index, identity=ring.one_index,
                   name=ring.describe(), ring=ring,
                   associative=ring.kind in ("gfmatrix", "zmod"))

    def product(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.table[a, b] if self.table is not None else np.asarray(self._fn(a, b))
        if a.ndim == 0 and b.ndim == 0:
            return int(out)
        return out

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def products_with_all(self, xs, side: str) -> np.ndarray:
        """``out[i, y] = y xs[i]`` (left) or ``xs[i] y`` (right)."""
        xs = np.asarray(xs, dtype=np.int64)
        if self.ring is not None:
            return self.ring.products_with_all(xs, side)
        y = self.elements()
        if side == "left":
            return self.product(y[None, :], xs[:, None])
        return self.product(xs[:, None], y[None, :])

    def sandwich_with_all(self, xs) -> np.ndarray:
        """``out[i, y] = xs[i] y xs[i]``."""
        xs = np.asarray(xs, dtype=np.int64)
        if self.ring is not None:
            return self.ring.sandwich_with_all(xs)
        return self.product(self.products_with_all(xs, "right"), xs[:, None])

    @cached_property
    def idempotents(self) -> np.ndarray:
        x = self.elements()
        e = np.flatnonzero(self.product(x, x) == x).astype(np.int64)
        e.flags.writeable = False
        return e

    @property
    def regular_expected(self):
        """``True``/``False`` when the source ring says so, else ``None``."""
        if isinstance(self.ring, ModularRing):
            return self.ring.squarefree
        if self.ring is not None and self.ring.kind == "gfmatrix":
            return True
        return None

    def __repr__(self) -> str:
        return f"FiniteSemigroup({self.name}, order={self.order})"


def _find_zero(table):
    n = table.shape[0]
    for z in range(n):
        if np.all(table[z] == z) and np.all(table[:, z] == z):
            return z
    return None


def _find_identity(table):
    idx = np.arange(table.shape[0])
    for u in idx:
        if np.array_equal(table[u], idx) and np.array_equal(table[:, u], idx):
            return int(u)
    return None


def adjoin_zero_and_identity(table) -> np.ndarray:
    """Table of ``S`` with a new zero (index 0) and identity (index 1) adjoined."""
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    out = np.zeros((n + 2, n + 2), dtype=np.int64)
    out[2:, 2:] = table + 2
    idx = np.arange(n + 2)
    out[1, :] = idx
    out[:, 1] = idx
    out[0, :] = 0
    out[:, 0] = 0
    return out


def idempotents(S: FiniteSemigroup) -> list[int]:
    return S.idempotents.tolist()


def check_associativity(S: FiniteSemigroup, *, seed: int = 0,
                        samples: int = 100_000) -> VerificationReport:
    """Exhaustive for ``order <= 512``, seeded random triples above."""
    anchor = "associative binary operation"
    if S.associative_by_construction:
        return make_report("associativity", anchor, [], details={"mode": "by construction"})
    n = S.order
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        mode = "exhaustive"
        x = S.elements()
        failures = []
        for a in range(n):
            ab = S.product(a, x)
            left = S.product(ab[:, None], x[None, :])
            right = S.product(a, S.product(x[:, None], x[None, :]))
            bad = np.argwhere(left != right)
            failures.extend((a, int(b), int(c)) for b, c in bad[: MAX_LISTED])
            if len(failures) >= MAX_LISTED:
                break
        checked = n ** 3
    else:
        mode = "sampled"
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        left = S.product(S.product(a, b), c)
        right = S.product(a, S.product(b, c))
        bad = np.flatnonzero(left != right)
        failures = [(int(a[i]), int(b[i]), int(c[i])) for i in bad]
        checked = samples
    return make_report("associativity", anchor, failures,
                       details={"mode": mode, "triples": checked, "seed": seed})


@dataclass
class RegularityWitness:
    """``inverses[x] = x''`` with ``x x'' x = x`` and ``x'' x x'' = x''``.

    ``failures`` lists, ascending, the checked elements that have no ``x'``
    with ``x x' x = x``.
    """

    inverses: dict[int, int] = field(default_factory=dict)
    failures: list[int] = field(default_factory=list)

    @property
    def regular(self) -> bool:
        return not self.failures

    @property
    def counterexample(self):
        return self.failures[0] if self.failures else None


def regularity_witnesses(S: FiniteSemigroup, elements=None) -> RegularityWitness:
    """Least-index ``x'`` with ``x x' x = x`` for each ``x``; returns ``x'' = x' x x'``."""
    xs = S.elements() if elements is None else np.unique(np.asarray(elements, dtype=np.int64))
    witness = RegularityWitness()
    found_x, found_first = [], []
    for block in _blocks(xs, S.order):
        hit = S.sandwich_with_all(block) == block[:, None]
        found = hit.any(axis=1)
        found_x.append(block[found])
        found_first.append(np.argmax(hit[found], axis=1))
        witness.failures.extend(block[~found].tolist())
    if found_x:
        x = np.concatenate(found_x)
        xp = np.concatenate(found_first).astype(np.int64)
        xpp = S.product(S.product(xp, x), xp)
        witness.inverses = dict(zip(x.tolist(), np.atleast_1d(xpp).tolist()))
    return witness


def regularity_report(S: FiniteSemigroup, witness: RegularityWitness,
                      mode: str = "full") -> VerificationReport:
    x = np.fromiter(witness.inverses.keys(), dtype=np.int64)
    xi = np.fromiter(witness.inverses.values(), dtype=np.int64)
    bad = []
    if len(x):
        ok1 = S.product(S.product(x, xi), x) == x
        ok2 = S.product(S.product(xi, x), xi) == xi
        bad = x[~(ok1 & ok2)].tolist()
    failures = [{"x": f, "reason": "no x' with x x' x = x"} for f in witness.failures]
    failures += [{"x": f, "reason": "witness fails generalized-inverse equations"} for f in bad]
    sample = sorted(witness.inverses.items())[:MAX_LISTED]
    return make_report(
        "semigroup-regularity", "every element x has x' with x x' x = x", failures,
        witnesses=[{"x": a, "inverse": b} for a, b in sample],
        details={"mode": mode, "checked": len(x) + len(witness.failures)},
    )


def _side_products(S, x, side):
    return S.products_with_all([x], side)[0]


def _require_zero(S):
    if S.zero is None:
        raise ValueError(f"{S.name} has no zero element")


def _check_side(side):
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def annihilator(S: FiniteSemigroup, x: int, side: str = "left") -> list[int]:
    """Left: ``{y : y x = 0}``; right: ``{y : x y = 0}``."""
    _check_side(side)
    _require_zero(S)
    return np.flatnonzero(_side_products(S, x, side) == S.zero).tolist()


def principal_ideal(S: FiniteSemigroup, x: int, side: str = "left") -> list[int]:
    """Left: ``S x = {s x}``; right: ``x S``."""
    _check_side(side)
    return np.unique(_side_products(S, x, side)).tolist()


def _masks(S, xs, side):
    """Annihilator and principal-ideal masks for each ``x`` in ``xs``."""
    prods = S.products_with_all(xs, side)
    ann = prods == S.zero
    ideal = np.zeros(ann.size, dtype=bool)
    ideal[(prods + np.arange(0, ann.size, S.order)[:, None]).ravel()] = True
    return ann, ideal.reshape(ann.shape)


def _keys(masks):
    return [row.tobytes() for row in np.packbits(masks, axis=1)]


def _blocks(xs, width):
    step = max(1, _CELL_BUDGET // max(width, 1))
    for i in range(0, len(xs), step):
        yield xs[i:i + step]


def baer_check(S: FiniteSemigroup, mode: str = "full", *, samples: int = 10_000,
               seed: int = 0) -> VerificationReport:
    """Left (right) annihilators coincide with principal left (right) ideals.

    ``full`` compares the two families over every element.  ``sampled``
    checks every idempotent plus ``samples`` seeded-random elements: each
    annihilator must equal ``S g`` for an idempotent ``g`` and each principal
    ideal must equal the annihilator of an idempotent, with an exhaustive
    search over all generators as fallback before a failure is reported.
    """
    _require_zero(S)
    if mode not in ("full", "sampled"):
        raise ValueError(f"mode must be 'full' or 'sampled', got {mode!r}")
    n = S.order
    E = S.idempotents
    if mode == "full":
        domain = S.elements()
        drawn = n
    else:
        rng = np.random.default_rng(seed)
        drawn = samples
        domain = np.union1d(E, rng.integers(0, n, size=samples))
    failures = []
    witnesses = []
    for side in ("left", "right"):
        ann_e, ideal_e = _masks(S, E, side)
        ideal_gen = dict(zip(_keys(ideal_e)[::-1], E[::-1].tolist()))
        ann_gen = dict(zip(_keys(ann_e)[::-1], E[::-1].tolist()))
        all_ann = all_ideal = None
        if mode == "full":
            all_ann, all_ideal = {}, {}
        for xs in _blocks(domain, n):
            ann, ideal = _masks(S, xs, side)
            for x, ka, ki in zip(xs.tolist(), _keys(ann), _keys(ideal)):
                if all_ann is not None:
                    all_ann.setdefault(ka, x)
                    all_ideal.setdefault(ki, x)
                g, z = ideal_gen.get(ka), ann_gen.get(ki)
                if g is None:
                    g = _search_generator(S, ka, side, "ideal")
                if z is None:
                    z = _search_generator(S, ki, side, "annihilator")
                if g is None:
                    failures.append({"side": side, "x": x,
                                     "reason": "annihilator of x is not a principal ideal"})
                if z is None:
                    failures.append({"side": side, "x": x,
                                     "reason": "principal ideal of x is not an annihilator"})
                if g is not None and z is not None and len(witnesses) < 2 * TABULATE_LIMIT:
                    witnesses.append({"side": side, "x": x, "ann_generator": g,
                                      "ideal_annihilated_by": z})
        if all_ann is not None and not failures:
            # the searches above already certify both inclusions; record the sizes
            witnesses.append({"side": side, "distinct_annihilators": len(all_ann),
                              "distinct_principal_ideals": len(all_ideal)})
    failures.sort(key=lambda f: (f["side"], f["x"], f["reason"]))
    return make_report(
        "baer", "left/right annihilators equal principal left/right ideals", failures,
        witnesses=witnesses[:MAX_LISTED],
        details={"mode": mode, "seed": seed if mode == "sampled" else None,
                 "drawn": drawn, "distinct_checked": len(domain),
                 "certificate_entries": len(witnesses)},
    )


def _search_generator(S, key, side, want):
    """Exhaustive search for ``y`` whose ideal (annihilator) has the given key."""
    for ys in _blocks(S.elements(), S.order):
        ann, ideal = _masks(S, ys, side)
        masks = ideal if want == "ideal" else ann
        for y, k in zip(ys.tolist(), _keys(masks)):
            if k == key:
                return y
    return None


def check_annihilator_generators(S: FiniteSemigroup, complement, elements
                                 ) -> VerificationReport:
    """``lann(e) = S c(e)`` and ``rann(e) = c(e) S`` for the given idempotents."""
    _require_zero(S)
    failures = []
    elements = [int(e) for e in elements]
    for e in elements:
        ce = complement(e)
        if annihilator(S, e, "left") != principal_ideal(S, ce, "left"):
            failures.append({"e": e, "side": "left"})
        if annihilator(S, e, "right") != principal_ideal(S, ce, "right"):
            failures.append({"e": e, "side": "right"})
    return make_report("annihilator-generators",
                       "lann(e) = S e' and rann(e) = e' S", failures,
                       details={"checked": len(elements)})


def check_annihilator_reduction(S: FiniteSemigroup, witness: RegularityWitness
                                ) -> VerificationReport:
    """``lann(x) = lann(x x'')`` for every ``x`` carrying a witness."""
    _require_zero(S)
    xs = np.fromiter(witness.inverses.keys(), dtype=np.int64)
    xi = np.fromiter(witness.inverses.values(), dtype=np.int64)
    failures = []
    for bx, bi in zip(_blocks(xs, S.order), _blocks(xi, S.order)):
        e = S.product(bx, bi)
        ann_x, _ = _masks(S, bx, "left")
        ann_e, _ = _masks(S, e, "left")
        bad = np.flatnonzero(np.any(ann_x != ann_e, axis=1))
        failures.extend({"x": int(bx[i]), "e": int(e[i])} for i in bad)
    return make_report("annihilator-reduction", "lann(x) = lann(e) with e = x x'",
                       failures, details={"checked": len(xs)})
