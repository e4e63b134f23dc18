"""Binary relations on ``range(k)`` packed into 64-bit words.

Row ``i`` of a :class:`BitRelation` holds the set ``{j : (i, j) in R}`` as
``ceil(k / 64)`` little-endian ``uint64`` words.
"""

from __future__ import annotations

import numpy as np

WORD = 64


def _pack(dense: np.ndarray) -> np.ndarray:
    k = dense.shape[1]
    words = -(-k // WORD) if k else 0
    padded = np.zeros((dense.shape[0], words * WORD), dtype=bool)
    padded[:, :k] = dense
    bits = np.packbits(padded, axis=1, bitorder="little")
    return bits.view("<u8").reshape(dense.shape[0], words).copy()


def _unpack(words: np.ndarray, k: int) -> np.ndarray:
    if words.shape[1] == 0:
        return np.zeros((words.shape[0], 0), dtype=bool)
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :k].astype(bool)


class BitRelation:
    """A relation on ``k`` points stored as packed bit rows."""

    __slots__ = ("k", "words", "_dense")

    def __init__(self, k: int, words: np.ndarray):
        self.k = k
        self.words = words
        self._dense = None

    @classmethod
    def from_dense(cls, dense) -> BitRelation:
        dense = np.asarray(dense, dtype=bool)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError(f"relation matrix must be square, got {dense.shape}")
        rel = cls(dense.shape[0], _pack(dense))
        rel._dense = dense.copy()
        rel._dense.flags.writeable = False
        return rel

    @classmethod
    def identity(cls, k: int) -> BitRelation:
        return cls.from_dense(np.eye(k, dtype=bool))

    @property
    def dense(self) -> np.ndarray:
        """Read-only boolean ``k x k`` view."""
        if self._dense is None:
            self._dense = _unpack(self.words, self.k)
            self._dense.flags.writeable = False
        return self._dense

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool((int(self.words[i, j // WORD]) >> (j % WORD)) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitRelation):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.words, other.words)

    def __and__(self, other: BitRelation) -> BitRelation:
        return BitRelation(self.k, self.words & other.words)

    def __or__(self, other: BitRelation) -> BitRelation:
        return BitRelation(self.k, self.words | other.words)

    def __le__(self, other: BitRelation) -> bool:
        return not np.any(self.words & ~other.words)

    def __repr__(self) -> str:
        return f"BitRelation(k={self.k}, pairs={self.count()})"

    def row(self, i: int) -> np.ndarray:
        """Members of ``{j : i R j}`` in ascending order."""
        return np.flatnonzero(self.dense[i])

    def column(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.dense[:, j])

    def count(self) -> int:
        return int(np.unpackbits(self.words.view(np.uint8)).sum())

    def transpose(self) -> BitRelation:
        return BitRelation.from_dense(self.dense.T)

    def compose(self, other: BitRelation) -> BitRelation:
        """``{(i, k) : i R j and j S k for some j}``, by OR-ing rows of ``S``."""
        out = np.zeros_like(self.words)
        dense = self.dense
        for i in range(self.k):
            js = np.flatnonzero(dense[i])
            if len(js):
                out[i] = np.bitwise_or.reduce(other.words[js], axis=0)
        return BitRelation(self.k, out)

    def is_reflexive(self) -> bool:
        return bool(np.all(np.diagonal(self.dense)))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.dense, self.dense.T))

    def is_antisymmetric(self) -> bool:
        both = self.dense & self.dense.T
        return not np.any(both & ~np.eye(self.k, dtype=bool))

    def is_transitive(self) -> bool:
        return self.compose(self) <= self

    def first_intransitive(self):
        """Least ``(i, j, l)`` with ``i R j``, ``j R l`` but not ``i R l``, or None."""
        dense = self.dense
        for i in range(self.k):
            js = np.flatnonzero(dense[i])
            if not len(js):
                continue
            reach = dense[js].any(axis=0) & ~dense[i]
            if reach.any():
                l = int(np.flatnonzero(reach)[0])
                j = int(js[np.flatnonzero(dense[js, l])[0]])
                return i, j, l
        return None
