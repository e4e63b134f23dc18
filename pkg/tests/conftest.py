from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import pytest

from biorder import (ComplementMap, FiniteSemigroup, build_biorder, build_matrix_ring,
                     build_modular_ring, quotient_lattice)


@dataclass
class Fixture:
    ring: object

    @cached_property
    def S(self):
        return FiniteSemigroup.from_ring(self.ring)

    @cached_property
    def B(self):
        return build_biorder(self.S)

    @cached_property
    def c(self):
        return ComplementMap.from_ring(self.B, self.ring)

    @cached_property
    def left(self):
        return quotient_lattice(self.B, "left")

    @cached_property
    def right(self):
        return quotient_lattice(self.B, "right")


_BUILDERS = {
    "Z6": lambda: build_modular_ring(6),
    "Z4": lambda: build_modular_ring(4),
    "M22": lambda: build_matrix_ring(2, 2),
    "M23": lambda: build_matrix_ring(2, 3),
    "M32": lambda: build_matrix_ring(3, 2),
    "M42": lambda: build_matrix_ring(4, 2),
}
_CACHE: dict[str, Fixture] = {}


def subject(name: str) -> Fixture:
    if name not in _CACHE:
        _CACHE[name] = Fixture(_BUILDERS[name]())
    return _CACHE[name]


def fresh(name: str) -> Fixture:
    """An uncached subject, so timed code pays for its own construction."""
    return Fixture(_BUILDERS[name]())


@pytest.fixture
def get():
    return subject


def unit(ring, i: int, j: int) -> int:
    """Index of the matrix unit with a single 1 at (i, j), zero-based."""
    import numpy as np

    m = np.zeros((ring.n, ring.n), dtype=np.int64)
    m[i, j] = 1
    return ring.encode(m)
