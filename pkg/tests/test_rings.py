import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biorder import (MatrixRing, ResourceBudgetError, TableRing, build_matrix_ring,
                     build_modular_ring, complement_of, matrix_unit_idempotents,
                     read_table_file)
from biorder.rings import gaussian_binomial, is_squarefree, matrix_idempotent_count, write_table_file
from conftest import unit
from oracles import all_matrices, encode, matrix_idempotents, matrix_table, modular_table


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2), (1, 5), (2, 5)])
def test_products_match_oracle_table(n, q):
    ring = build_matrix_ring(n, q)
    x = np.arange(ring.order)
    got = ring.mul(x[:, None], x[None, :])
    assert np.array_equal(got, matrix_table(n, q))


def test_lazy_gf2_product_matches_einsum_on_samples():
    ring = build_matrix_ring(4, 2)
    assert not ring.tabulated
    rng = np.random.default_rng(1)
    a, b = rng.integers(0, ring.order, size=(2, 5000))
    A, B = ring.decode(a), ring.decode(b)
    want = [encode(m, 2) for m in np.einsum("kij,kjl->kil", A, B) % 2]
    assert ring.mul(a, b).tolist() == want


def test_products_with_all_and_sandwich_agree_with_mul():
    ring = build_matrix_ring(3, 2)
    xs = np.array([0, 5, 77, 300, 511])
    y = np.arange(ring.order)
    assert np.array_equal(ring.products_with_all(xs, "left"), ring.mul(y[None, :], xs[:, None]))
    assert np.array_equal(ring.products_with_all(xs, "right"), ring.mul(xs[:, None], y[None, :]))
    want = ring.mul(ring.mul(xs[:, None], y[None, :]), xs[:, None])
    assert np.array_equal(ring.sandwich_with_all(xs), want)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_codec_round_trip(n, q):
    ring = build_matrix_ring(n, q)
    x = np.arange(ring.order)
    assert np.array_equal(ring.encode(ring.decode(x)), x)
    assert np.array_equal(ring.decode(x), all_matrices(n, q))


def test_order_and_small_examples():
    assert build_matrix_ring(1, 2).order == 2
    assert build_matrix_ring(2, 2).order == 16
    assert build_matrix_ring(4, 2).order == 65536
    r = build_matrix_ring(1, 2)
    assert [x for x in range(2) if r.mul(x, x) == x] == [0, 1]


def test_non_prime_and_budget_errors():
    with pytest.raises(ValueError, match="prime"):
        build_matrix_ring(2, 4)
    with pytest.raises(ResourceBudgetError, match="1048576"):
        build_matrix_ring(5, 2)
    with pytest.raises(ResourceBudgetError, match="budget of 10 elements"):
        build_matrix_ring(2, 2, max_order=10)


@pytest.mark.parametrize("m", [2, 4, 6, 12, 30])
def test_modular_ring(m):
    ring = build_modular_ring(m)
    x = np.arange(m)
    assert np.array_equal(ring.mul(x[:, None], x[None, :]), modular_table(m))
    assert ring.squarefree == is_squarefree(m)


def test_idempotent_formula_matches_brute_force():
    for n, q in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)]:
        assert matrix_idempotent_count(n, q) == len(matrix_idempotents(n, q))
    assert [gaussian_binomial(4, r, 2) for r in range(5)] == [1, 15, 35, 15, 1]


def test_matrix_units():
    ring = build_matrix_ring(2, 2)
    e1, e2 = matrix_unit_idempotents(ring)
    assert (e1, e2) == (unit(ring, 0, 0), unit(ring, 1, 1))
    assert ring.mul(e1, e2) == ring.zero_index
    assert ring.add(e1, e2) == ring.one_index
    ring4 = build_matrix_ring(4, 2)
    us = matrix_unit_idempotents(ring4)
    assert len(us) == 4
    for a in us:
        assert ring4.mul(a, a) == a
        for b in us:
            if a != b:
                assert ring4.mul(a, b) == 0
    total = 0
    for a in us:
        total = ring4.add(total, a)
    assert total == ring4.one_index
    with pytest.raises(TypeError):
        matrix_unit_idempotents(build_modular_ring(6))


def test_complement_of():
    z6 = build_modular_ring(6)
    assert complement_of(z6, 3) == 4
    assert complement_of(z6, 0) == 1
    m22 = build_matrix_ring(2, 2)
    assert complement_of(m22, unit(m22, 0, 0)) == unit(m22, 1, 1)
    with pytest.raises(ValueError):
        complement_of(z6, 2)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_complement_is_involution(n, q):
    ring = build_matrix_ring(n, q)
    for e in matrix_idempotents(n, q):
        c = complement_of(ring, e)
        assert ring.mul(c, c) == c
        assert complement_of(ring, c) == e


def test_table_file_round_trip(tmp_path):
    z6 = build_modular_ring(6)
    x = np.arange(6)
    mul = z6.mul(x[:, None], x[None, :])
    add = z6.add(x[:, None], x[None, :])
    path = tmp_path / "z6.csv"
    write_table_file(path, mul, add)
    m2, a2 = read_table_file(path)
    assert np.array_equal(m2, mul) and np.array_equal(a2, add)
    ring = TableRing(m2, a2)
    assert (ring.zero_index, ring.one_index) == (0, 1)
    assert complement_of(ring, 3) == 4
    write_table_file(path, mul)
    assert read_table_file(path)[1] is None


def test_table_file_rejects_bad_shape(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("3\n0,0,0\n0,1\n0,2,1\n")
    with pytest.raises(ValueError, match="3x3"):
        read_table_file(path)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1))
def test_m4_ring_axioms(a, b, c):
    ring = build_matrix_ring(4, 2)
    mul, add = ring.mul, ring.add
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(add(a, b), c) == add(mul(a, c), mul(b, c))
    assert mul(a, ring.one_index) == a == mul(ring.one_index, a)
    assert add(a, ring.neg(a)) == ring.zero_index


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3 ** 4 - 1), st.integers(0, 3 ** 4 - 1))
def test_m23_add_commutes(a, b):
    ring = build_matrix_ring(2, 3)
    assert ring.add(a, b) == ring.add(b, a)
    assert ring.sub(ring.add(a, b), b) == a


def test_matrix_ring_is_matrix_ring():
    assert isinstance(build_matrix_ring(2, 2), MatrixRing)
