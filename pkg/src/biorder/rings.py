"""Finite rings with unity: matrix rings over prime fields, ``Z/mZ`` and raw tables.

Every ring element is an integer index in ``range(order)``.  Matrices over
``GF(q)`` are encoded row-major as base-``q`` digits, most significant digit
first, so that for ``q == 2`` the index is the concatenation of the ``n``
row words of the matrix.

All arithmetic methods accept integers or integer arrays and broadcast like
numpy ufuncs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

TABULATE_LIMIT = 4096
DEFAULT_MAX_ORDER = 1 << 20
ROW_TABLE_LIMIT = 1 << 24


class ResourceBudgetError(RuntimeError):
    """A construction would exceed the configured size budget."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def is_squarefree(m: int) -> bool:
    return all(m % (p * p) for p in range(2, math.isqrt(m) + 1))


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of ``r``-dimensional subspaces of ``GF(q)^n``."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def matrix_idempotent_count(n: int, q: int) -> int:
    """Idempotents of ``M_n(GF(q))``: one per pair of complementary subspaces."""
    return sum(gaussian_binomial(n, r, q) * q ** (r * (n - r)) for r in range(n + 1))


def _result(value, *args):
    if all(np.ndim(a) == 0 for a in args):
        return int(value)
    return value


class RingTable:
    """Base class: a finite ring with unity on ``range(order)``.

    Subclasses provide vectorised ``_mul`` / ``_add`` / ``_neg``.  Rings of
    order at most :data:`TABULATE_LIMIT` get a full multiplication table at
    construction; larger rings multiply on demand.
    """

    kind = "abstract"

    def __init__(self, order: int, zero_index: int, one_index: int):
        self.order = order
        self.zero_index = zero_index
        self.one_index = one_index
        self.mul_table = None
        if order <= TABULATE_LIMIT:
            idx = np.arange(order, dtype=np.int64)
            table = self._mul(idx[:, None], idx[None, :]).astype(np.int32)
            table.flags.writeable = False
            self.mul_table = table

    @property
    def tabulated(self) -> bool:
        return self.mul_table is not None

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.mul_table is not None:
            out = self.mul_table[a, b].astype(np.int64)
        else:
            out = self._mul(a, b)
        return _result(out, a, b)

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return _result(self._add(a, b), a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        return _result(self._neg(a), a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def describe(self) -> str:
        return f"{self.kind}(order={self.order})"

    def products_with_all(self, xs, side: str):
        """``out[i, y] = y * xs[i]`` (left) or ``xs[i] * y`` (right) for every ``y``."""
        xs = np.asarray(xs, dtype=np.int64)
        y = self.elements()
        if side == "left":
            return self.mul(y[None, :], xs[:, None])
        return self.mul(xs[:, None], y[None, :])

    def sandwich_with_all(self, xs):
        """``out[i, y] = xs[i] * y * xs[i]`` for every ``y``."""
        xs = np.asarray(xs, dtype=np.int64)
        return self.mul(self.products_with_all(xs, "right"), xs[:, None])

    def _mul(self, a, b):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError


class MatrixRing(RingTable):
    """``M_n(GF(q))`` for prime ``q``."""

    kind = "gfmatrix"

    def __init__(self, n: int, q: int, max_order: int = DEFAULT_MAX_ORDER):
        if n < 1:
            raise ValueError(f"matrix dimension must be >= 1, got {n}")
        if not is_prime(q):
            raise ValueError(f"q must be prime, got {q}")
        order = q ** (n * n)
        if order > max_order:
            raise ResourceBudgetError(
                f"M_{n}(GF({q})) has {q}^{n * n} = {order} elements, "
                f"over the budget of {max_order} elements"
            )
        self.n = n
        self.q = q
        self._weights = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        self._row_table = None
        if q == 2:
            self._rowmask = (1 << n) - 1
            self._shifts = [n * (n - 1 - i) for i in range(n)]
            if order << n <= ROW_TABLE_LIMIT:
                self._row_table = self._build_row_table(order)
        one = self.encode(np.eye(n, dtype=np.int64))
        super().__init__(order, 0, one)

    def describe(self) -> str:
        return f"M_{self.n}(GF({self.q}))"

    def encode(self, entries) -> int:
        entries = np.asarray(entries, dtype=np.int64)
        if entries.shape[-2:] != (self.n, self.n):
            raise ValueError(f"expected {self.n}x{self.n} entries, got {entries.shape}")
        if np.any((entries < 0) | (entries >= self.q)):
            raise ValueError(f"entries must lie in [0, {self.q})")
        flat = entries.reshape(entries.shape[:-2] + (self.n * self.n,))
        return _result(flat @ self._weights, entries[..., 0, 0])

    def decode(self, index) -> np.ndarray:
        """Entries of ``index`` as an ``(..., n, n)`` array."""
        index = np.asarray(index, dtype=np.int64)
        digits = (index[..., None] // self._weights) % self.q
        return digits.reshape(index.shape + (self.n, self.n))

    def _span(self, images):
        # the maps are GF(2)-linear in y and index bit b is the matrix 1 << b,
        # so the image of y is the XOR of the images of its set bits
        out = np.zeros((images.shape[0], self.order), dtype=np.int64)
        width = 1
        for b in range(self.n * self.n):
            out[:, width:2 * width] = out[:, :width] ^ images[:, b:b + 1]
            width *= 2
        return out

    def products_with_all(self, xs, side: str):
        if self.q != 2:
            return super().products_with_all(xs, side)
        xs = np.asarray(xs, dtype=np.int64)
        basis = np.int64(1) << np.arange(self.n * self.n, dtype=np.int64)
        if side == "left":
            images = self.mul(basis[None, :], xs[:, None])
        else:
            images = self.mul(xs[:, None], basis[None, :])
        return self._span(images)

    def sandwich_with_all(self, xs):
        if self.q != 2:
            return super().sandwich_with_all(xs)
        xs = np.asarray(xs, dtype=np.int64)
        basis = np.int64(1) << np.arange(self.n * self.n, dtype=np.int64)
        images = self.mul(self.mul(xs[:, None], basis[None, :]), xs[:, None])
        return self._span(images)

    def row_words(self, index):
        """The ``n`` packed rows of a ``GF(2)`` matrix, first row first."""
        if self.q != 2:
            raise ValueError("row words are only defined for q = 2")
        index = np.asarray(index, dtype=np.int64)
        return [(index >> s) & self._rowmask for s in self._shifts]

    def _rowvec_times(self, r, b):
        # r . B = XOR of the rows of B selected by the bits of r
        acc = np.zeros(np.broadcast(r, b).shape, dtype=np.int64)
        for j, s in enumerate(self._shifts):
            bit = (r >> (self.n - 1 - j)) & 1
            acc ^= -bit & ((b >> s) & self._rowmask)
        return acc

    def _build_row_table(self, order):
        # flat[(b << n) | r] = r . B
        b = np.arange(order, dtype=np.int64)[:, None]
        r = np.arange(1 << self.n, dtype=np.int64)[None, :]
        return self._rowvec_times(r, b).astype(np.uint32).ravel()

    def _mul_gf2(self, a, b):
        shape = np.broadcast(a, b).shape
        if self._row_table is None:
            out = np.zeros(shape, dtype=np.int64)
            for s in self._shifts:
                out |= self._rowvec_times((a >> s) & self._rowmask, b) << s
            return out
        a = a.astype(np.uint32)
        base = b.astype(np.uint32) << np.uint32(self.n)
        mask = np.uint32(self._rowmask)
        out = np.zeros(shape, dtype=np.uint32)
        for s in self._shifts:
            s = np.uint32(s)
            out |= self._row_table[base | ((a >> s) & mask)] << s
        return out.astype(np.int64)

    def _mul(self, a, b):
        if self.q == 2:
            return self._mul_gf2(a, b)
        prod = np.einsum("...ij,...jk->...ik", self.decode(a), self.decode(b)) % self.q
        return self.encode(prod) if prod.ndim > 2 else np.int64(self.encode(prod))

    def _add(self, a, b):
        if self.q == 2:
            return a ^ b
        total = (self.decode(a) + self.decode(b)) % self.q
        return self.encode(total) if total.ndim > 2 else np.int64(self.encode(total))

    def _neg(self, a):
        if self.q == 2:
            return a
        neg = (-self.decode(a)) % self.q
        return self.encode(neg) if neg.ndim > 2 else np.int64(self.encode(neg))


class ModularRing(RingTable):
    """``Z/mZ``; regular exactly when ``m`` is squarefree."""

    kind = "zmod"

    def __init__(self, m: int):
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        self.m = m
        self.squarefree = is_squarefree(m)
        super().__init__(m, 0, 1)

    def describe(self) -> str:
        return f"Z/{self.m}Z"

    def _mul(self, a, b):
        return (a * b) % self.m

    def _add(self, a, b):
        return (a + b) % self.m

    def _neg(self, a):
        return (-a) % self.m


class TableRing(RingTable):
    """A ring given by explicit multiplication and addition tables."""

    kind = "table"

    def __init__(self, mul_table, add_table):
        mul_table = np.asarray(mul_table, dtype=np.int64)
        add_table = np.asarray(add_table, dtype=np.int64)
        order = mul_table.shape[0]
        for name, t in (("multiplication", mul_table), ("addition", add_table)):
            if t.shape != (order, order):
                raise ValueError(f"{name} table must be {order}x{order}, got {t.shape}")
            if t.min() < 0 or t.max() >= order:
                raise ValueError(f"{name} table has entries outside range({order})")
        self._mtab = mul_table
        self._atab = add_table
        zero = _identity_of(add_table)
        one = _identity_of(mul_table)
        if zero is None:
            raise ValueError("addition table has no neutral element")
        if one is None:
            raise ValueError("multiplication table has no identity")
        self._negs = np.argmax(add_table == zero, axis=1)
        if np.any(add_table[np.arange(order), self._negs] != zero):
            raise ValueError("addition table lacks additive inverses")
        super().__init__(order, zero, one)

    def _mul(self, a, b):
        return self._mtab[a, b]

    def _add(self, a, b):
        return self._atab[a, b]

    def _neg(self, a):
        return self._negs[a]


def _identity_of(table: np.ndarray):
    idx = np.arange(table.shape[0])
    for e in idx:
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return int(e)
    return None


def build_matrix_ring(n: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> MatrixRing:
    return MatrixRing(n, q, max_order=max_order)


def build_modular_ring(m: int) -> ModularRing:
    return ModularRing(m)


def read_table_file(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Parse a CSV table file.

    Layout: a line holding the order ``N``, then ``N`` rows of ``N``
    comma-separated indices (the multiplication table), optionally followed
    by ``N`` more rows for addition (a repeated ``N`` line before them is
    accepted).
    """
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty table file")
    try:
        rows = [[int(tok) for tok in ln.split(",") if tok.strip()] for ln in lines]
    except ValueError as exc:
        raise ValueError(f"{path}: non-integer entry ({exc})") from None
    if len(rows[0]) != 1:
        raise ValueError(f"{path}: first line must hold the order")
    order = rows[0][0]
    body = rows[1:]
    if len(body) < order or any(len(r) != order for r in body[:order]):
        raise ValueError(f"{path}: multiplication table must be {order}x{order}")
    mul = np.array(body[:order], dtype=np.int64)
    rest = body[order:]
    if rest and rest[0] == [order] and len(rest) == order + 1:
        rest = rest[1:]
    add = None
    if rest:
        if len(rest) != order or any(len(r) != order for r in rest):
            raise ValueError(f"{path}: addition table must be {order}x{order}")
        add = np.array(rest, dtype=np.int64)
    return mul, add


def write_table_file(path, mul, add=None) -> None:
    mul = np.asarray(mul)
    out = [str(mul.shape[0])]
    out += [",".join(map(str, row)) for row in mul]
    if add is not None:
        out += [",".join(map(str, row)) for row in np.asarray(add)]
    Path(path).write_text("\n".join(out) + "\n")


def matrix_unit_idempotents(ring: RingTable) -> list[int]:
    """Indices of the diagonal matrix units ``E_11, ..., E_nn``."""
    if not isinstance(ring, MatrixRing):
        raise TypeError(f"matrix units need a matrix ring, got {ring.describe()}")
    units = []
    for i in range(ring.n):
        m = np.zeros((ring.n, ring.n), dtype=np.int64)
        m[i, i] = 1
        units.append(ring.encode(m))
    return units


def complement_of(ring: RingTable, e: int) -> int:
    """``1 - e`` for an idempotent ``e``."""
    if ring.mul(e, e) != e:
        raise ValueError(f"element {e} is not idempotent in {ring.describe()}")
    return ring.sub(ring.one_index, e)
