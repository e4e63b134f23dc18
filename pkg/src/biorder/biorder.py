"""The biordered set of idempotents of a finite semigroup.

Public functions take and return semigroup element indices.  Internally an
idempotent is addressed by its *position* in the sorted idempotent list
``B.E``; relation matrices and the basic-product table are indexed by
position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bitrel import BitRelation
from .report import VerificationReport, make_report
from .semigroup import FiniteSemigroup

ROUTES = ("abstract", "semigroup")


class RouteDisagreementError(RuntimeError):
    """The abstract and semigroup sandwich-set routes gave different answers."""


@dataclass(frozen=True)
class MSet:
    e: int
    f: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class SandwichSet:
    e: int
    f: int
    members: tuple[int, ...]
    route: str


class BiorderedSet:
    """Idempotents ``E`` of ``semigroup`` with the quasi-orders ``omega_l``, ``omega_r``.

    ``(i, j) in omega_l`` iff ``E[i] E[j] = E[i]``; ``(i, j) in omega_r`` iff
    ``E[j] E[i] = E[i]``.  ``products[i, j]`` is the semigroup product
    ``E[i] E[j]`` (any element); ``basic[i, j]`` is the position of that
    product on the domain of the partial operation and ``-1`` elsewhere.
    """

    def __init__(self, semigroup: FiniteSemigroup, E, products, omega_l: BitRelation,
                 omega_r: BitRelation, basic, closure_failures=()):
        self.semigroup = semigroup
        self.E = E
        self.k = len(E)
        self.products = products
        self.omega_l = omega_l
        self.omega_r = omega_r
        self.omega = omega_l & omega_r
        self.basic = basic
        self.closure_failures = list(closure_failures)
        self._pos = {int(e): i for i, e in enumerate(E)}

    def __repr__(self) -> str:
        return f"BiorderedSet({self.semigroup.name}, |E|={self.k})"

    def pos(self, e: int) -> int:
        try:
            return self._pos[int(e)]
        except KeyError:
            raise ValueError(f"{e} is not an idempotent of {self.semigroup.name}") from None

    def positions(self, es) -> np.ndarray:
        return np.array([self.pos(e) for e in es], dtype=np.int64)

    def element(self, i: int) -> int:
        return int(self.E[i])

    def elements(self, idx) -> tuple[int, ...]:
        return tuple(int(x) for x in self.E[np.asarray(idx, dtype=np.int64)])

    @property
    def OL(self) -> np.ndarray:
        return self.omega_l.dense

    @property
    def OR(self) -> np.ndarray:
        return self.omega_r.dense

    @property
    def OM(self) -> np.ndarray:
        return self.omega.dense

    def leq_l(self, e, f) -> bool:
        return (self.pos(e), self.pos(f)) in self.omega_l

    def leq_r(self, e, f) -> bool:
        return (self.pos(e), self.pos(f)) in self.omega_r

    def leq(self, e, f) -> bool:
        return (self.pos(e), self.pos(f)) in self.omega

    def basic_product(self, e, f) -> int:
        i, j = self.pos(e), self.pos(f)
        if self.basic[i, j] < 0:
            raise ValueError(f"({e}, {f}) is outside the domain of the partial product")
        return self.element(self.basic[i, j])

    @cached_property
    def bottom(self):
        """Position of the ``omega``-least idempotent, or None."""
        hits = np.flatnonzero(self.OM.all(axis=1))
        return int(hits[0]) if len(hits) == 1 else None

    @cached_property
    def top(self):
        """Position of the ``omega``-greatest idempotent, or None."""
        hits = np.flatnonzero(self.OM.all(axis=0))
        return int(hits[0]) if len(hits) == 1 else None

    @cached_property
    def m_counts(self) -> np.ndarray:
        """``m_counts[i, j] = |M(E[i], E[j])|`` for every ordered pair."""
        ol = self.OL.astype(np.float32)
        orr = self.OR.astype(np.float32)
        return np.rint(ol.T @ orr).astype(np.int64)

    @cached_property
    def m_is_zero(self) -> np.ndarray:
        """``m_is_zero[i, j]`` iff ``M(E[i], E[j]) = {0}`` with 0 the least idempotent."""
        if self.bottom is None:
            return np.zeros((self.k, self.k), dtype=bool)
        z = self.bottom
        has_zero = np.outer(self.OL[z], self.OR[z])
        return (self.m_counts == 1) & has_zero

    def m_positions(self, i: int, j: int) -> np.ndarray:
        return np.flatnonzero(self.OL[:, i] & self.OR[:, j])

    def sandwich_positions(self, i: int, j: int, route: str = "abstract") -> np.ndarray:
        if route == "abstract":
            return self._sandwich_abstract(i, j)
        if route == "semigroup":
            return self._sandwich_semigroup(i, j)
        raise ValueError(f"route must be one of {ROUTES}, got {route!r}")

    def _sandwich_abstract(self, i, j):
        m = self.m_positions(i, j)
        if not len(m):
            return m
        eg = self.basic[i, m]
        gf = self.basic[m, j]
        if np.any(eg < 0) or np.any(gf < 0):
            raise RuntimeError(f"basic products missing for M-set of ({i}, {j})")
        # pre[g, h]: g precedes h
        pre = self.OR[eg[:, None], eg[None, :]] & self.OL[gf[:, None], gf[None, :]]
        return m[pre.all(axis=0)]

    def _sandwich_semigroup(self, i, j):
        S = self.semigroup
        e, f = self.E[i], self.E[j]
        fhe = S.product(self.products[j, :], e)
        ehf = S.product(self.products[i, :], f)
        return np.flatnonzero((fhe == self.E) & (ehf == self.products[i, j]))


def build_biorder(S: FiniteSemigroup) -> BiorderedSet:
    E = S.idempotents
    if not len(E):
        raise ValueError(f"{S.name} has no idempotents")
    k = len(E)
    products = S.product(E[:, None], E[None, :])
    products = np.asarray(products, dtype=np.int64).reshape(k, k)
    ol = products == E[:, None]
    orr = products.T == E[:, None]
    domain = ol | orr | ol.T | orr.T
    lookup = {int(e): i for i, e in enumerate(E)}
    basic = np.full((k, k), -1, dtype=np.int64)
    failures = []
    for i, j in np.argwhere(domain):
        p = lookup.get(int(products[i, j]))
        if p is None:
            failures.append((int(E[i]), int(E[j])))
        else:
            basic[i, j] = p
    basic.flags.writeable = False
    products.flags.writeable = False
    return BiorderedSet(S, E, products, BitRelation.from_dense(ol),
                        BitRelation.from_dense(orr), basic, failures)


def m_set(B: BiorderedSet, e: int, f: int) -> MSet:
    """``M(e, f) = {g in E : g e = g and f g = g}``."""
    members = B.m_positions(B.pos(e), B.pos(f))
    return MSet(int(e), int(f), B.elements(members))


def sandwich_set(B: BiorderedSet, e: int, f: int, route: str = "abstract") -> SandwichSet:
    """``S(e, f)`` by the preorder on ``M(e, f)`` or by ``{h : f h e = h, e h f = e f}``."""
    members = B.sandwich_positions(B.pos(e), B.pos(f), route)
    return SandwichSet(int(e), int(f), B.elements(members), route)


def _pairs(B, pairs):
    if pairs is None:
        ii, jj = np.meshgrid(np.arange(B.k), np.arange(B.k), indexing="ij")
        return zip(ii.ravel().tolist(), jj.ravel().tolist())
    return ((B.pos(e), B.pos(f)) for e, f in pairs)


def check_regularity(B: BiorderedSet, pairs=None) -> VerificationReport:
    """``S(e, f)`` is non-empty for every ordered pair (or every requested pair)."""
    failures = []
    n = 0
    for i, j in _pairs(B, pairs):
        n += 1
        if not len(B._sandwich_abstract(i, j)):
            failures.append({"e": B.element(i), "f": B.element(j)})
    return make_report("biorder-regularity", "S(e,f) nonempty for all e, f", failures,
                       details={"pairs": n})


def check_route_agreement(B: BiorderedSet, pairs=None) -> VerificationReport:
    """Both sandwich-set routes return the same set on every requested pair."""
    failures = []
    n = 0
    for i, j in _pairs(B, pairs):
        n += 1
        a = B._sandwich_abstract(i, j)
        s = B._sandwich_semigroup(i, j)
        if not np.array_equal(a, s):
            failures.append({"e": B.element(i), "f": B.element(j),
                             "abstract": B.elements(a), "semigroup": B.elements(s)})
    return make_report("sandwich-route-agreement",
                       "S(e,f) = {h : fhe = h, ehf = ef} in a regular semigroup",
                       failures, details={"pairs": n})


def check_quasi_orders(B: BiorderedSet) -> VerificationReport:
    """Reflexivity/transitivity of both quasi-orders, antisymmetry of omega,
    closure of basic products, and agreement with the parent product."""
    failures = []
    for name, rel in (("omega_l", B.omega_l), ("omega_r", B.omega_r)):
        if not rel.is_reflexive():
            i = int(np.flatnonzero(~np.diagonal(rel.dense))[0])
            failures.append({"relation": name, "law": "reflexive", "e": B.element(i)})
        bad = rel.first_intransitive()
        if bad is not None:
            failures.append({"relation": name, "law": "transitive",
                             "triple": B.elements(bad)})
    if not B.omega.is_antisymmetric():
        both = B.OM & B.OM.T & ~np.eye(B.k, dtype=bool)
        i, j = np.argwhere(both)[0]
        failures.append({"relation": "omega", "law": "antisymmetric",
                         "pair": B.elements([i, j])})
    for e, f in B.closure_failures:
        failures.append({"relation": "basic-product", "law": "idempotent", "pair": [e, f]})
    ii, jj = np.nonzero(B.basic >= 0)
    mismatch = B.E[B.basic[ii, jj]] != B.products[ii, jj]
    for i, j in zip(ii[mismatch], jj[mismatch]):
        failures.append({"relation": "basic-product", "law": "agrees-with-parent",
                         "pair": B.elements([i, j])})
    return make_report("quasi-orders", "these relations are quasi-orders", failures,
                       details={"k": B.k, "omega_l_pairs": B.omega_l.count(),
                                "omega_r_pairs": B.omega_r.count()})


def check_zero_product_lemma(B: BiorderedSet) -> VerificationReport:
    """``e f = 0`` iff ``M(e, f) = {0}`` over all ordered idempotent pairs."""
    S = B.semigroup
    if S.zero is None:
        raise ValueError(f"{S.name} has no zero element")
    is_zero = B.products == S.zero
    bad = np.argwhere(is_zero != B.m_is_zero)
    failures = [{"e": B.element(i), "f": B.element(j),
                 "ef_is_zero": bool(is_zero[i, j]),
                 "m_set": B.elements(B.m_positions(i, j))} for i, j in bad]
    return make_report("zero-product-lemma", "ef = 0 iff M(e,f) = {0}", failures,
                       details={"pairs": B.k * B.k})
