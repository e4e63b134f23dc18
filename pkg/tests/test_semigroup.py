import numpy as np
import pytest

from biorder import (ComplementMap, FiniteSemigroup, annihilator, baer_check, build_biorder,
                     build_matrix_ring, idempotents, principal_ideal, regularity_witnesses)
from biorder.semigroup import (adjoin_zero_and_identity, check_annihilator_generators,
                               check_annihilator_reduction, check_associativity,
                               regularity_report)
from conftest import subject, unit
from oracles import table_idempotents

LEFT_ZERO_2 = np.array([[0, 0], [1, 1]])  # xy = x


def left_zero_with_0_and_1():
    return FiniteSemigroup.from_table(adjoin_zero_and_identity(LEFT_ZERO_2), name="LZ2+0+1")


def test_idempotent_examples():
    assert idempotents(subject("Z6").S) == [0, 1, 3, 4]
    assert len(idempotents(subject("M22").S)) == 8
    assert len(idempotents(subject("M32").S)) == 58


@pytest.mark.parametrize("name", ["Z6", "Z4", "M22", "M23", "M32"])
def test_idempotents_match_table_oracle(name):
    S = subject(name).S
    x = np.arange(S.order)
    table = S.product(x[:, None], x[None, :])
    assert idempotents(S) == table_idempotents(table.tolist())


def test_regularity_examples():
    w = regularity_witnesses(subject("Z6").S)
    assert w.regular and sorted(w.inverses) == list(range(6))
    w4 = regularity_witnesses(subject("Z4").S)
    assert not w4.regular and w4.counterexample == 2
    report = regularity_report(subject("Z4").S, w4)
    assert not report.passed and report.counterexamples[0]["x"] == 2


@pytest.mark.parametrize("name", ["Z6", "M22", "M32"])
def test_generalized_inverses(name):
    S = subject(name).S
    w = regularity_witnesses(S)
    assert w.regular
    for x, xi in w.inverses.items():
        assert S.product(S.product(x, xi), x) == x
        assert S.product(S.product(xi, x), xi) == xi


def test_idempotent_inverses_under_least_index_rule():
    # e is always an admissible x', so the least x' never exceeds e; the
    # resulting x'' need not be e itself
    S = subject("M22").S
    w = regularity_witnesses(S)
    for e in S.idempotents.tolist():
        first = next(y for y in range(S.order) if S.product(S.product(e, y), e) == e)
        assert first <= e
        assert w.inverses[e] == S.product(S.product(first, e), first)
    assert w.inverses[3] == 1  # [[0,0],[1,1]] gets [[0,0],[0,1]]
    z6 = regularity_witnesses(subject("Z6").S)
    assert all(z6.inverses[e] == e for e in [0, 1, 3, 4])


def test_least_index_inverse_is_found():
    S = subject("Z6").S
    # 5 * 5 * 5 = 5 (mod 6) and no smaller x' works
    x = 5
    first = min(y for y in range(6) if (x * y * x) % 6 == x)
    w = regularity_witnesses(S, [x])
    assert w.inverses[x] == (first * x * first) % 6


def test_annihilators_and_ideals():
    Z6 = subject("Z6").S
    assert annihilator(Z6, 3, "left") == [0, 2, 4]
    assert annihilator(Z6, 0, "left") == list(range(6))
    assert principal_ideal(Z6, 2, "left") == [0, 2, 4]
    assert principal_ideal(Z6, 1, "left") == list(range(6))
    assert principal_ideal(Z6, 2, "left") == annihilator(Z6, 3, "left")
    M = subject("M22")
    e11 = unit(M.ring, 0, 0)
    ann = annihilator(M.S, e11, "left")
    assert len(ann) == 4
    assert all(M.ring.decode(y)[:, 0].tolist() == [0, 0] for y in ann)
    with pytest.raises(ValueError):
        annihilator(M.S, e11, "middle")


def test_annihilator_needs_zero():
    S = FiniteSemigroup.from_table(LEFT_ZERO_2)
    with pytest.raises(ValueError, match="zero"):
        annihilator(S, 0)


@pytest.mark.parametrize("name", ["Z6", "M22"])
def test_baer_full_passes(name):
    report = baer_check(subject(name).S, "full")
    assert report.passed, report.counterexamples


def test_baer_fails_on_left_zero_semigroup():
    report = baer_check(left_zero_with_0_and_1(), "full")
    assert not report.passed
    xs = {f["x"] for f in report.counterexamples}
    assert xs & {2, 3}


def test_baer_sampled_is_seeded():
    S = subject("M32").S
    a = baer_check(S, "sampled", samples=300, seed=7)
    b = baer_check(S, "sampled", samples=300, seed=7)
    assert a.passed and a.to_dict() == b.to_dict()
    assert a.details["seed"] == 7


def test_adjoin_zero_identity():
    t = adjoin_zero_and_identity(LEFT_ZERO_2)
    S = FiniteSemigroup.from_table(t)
    assert (S.zero, S.identity) == (0, 1)
    assert check_associativity(S).passed


def test_associativity_detects_failure():
    bad = np.array([[1, 0], [0, 0]])  # (0*0)*1 = 0 but 0*(0*1) = 1
    report = check_associativity(FiniteSemigroup.from_table(bad))
    assert not report.passed


@pytest.mark.parametrize("name", ["Z6", "M22", "M23", "M32"])
def test_annihilator_lemmas(name):
    f = subject(name)
    assert check_annihilator_generators(f.S, f.c, f.S.idempotents).passed
    assert check_annihilator_reduction(f.S, regularity_witnesses(f.S)).passed


def test_annihilator_generators_on_random_m4_idempotents():
    f = subject("M42")
    rng = np.random.default_rng(0)
    es = list(rng.choice(f.S.idempotents, 100, replace=False))
    assert check_annihilator_generators(f.S, f.c, es).passed


def test_identity_map_is_not_an_annihilator_generator():
    f = subject("M22")
    ident = ComplementMap.identity(f.B)
    report = check_annihilator_generators(f.S, ident, [unit(f.ring, 0, 0)])
    assert not report.passed


def test_semigroup_from_table_detects_zero_and_identity():
    ring = build_matrix_ring(2, 2)
    x = np.arange(ring.order)
    S = FiniteSemigroup.from_table(ring.mul(x[:, None], x[None, :]))
    assert S.zero == 0 and S.identity == ring.one_index
    assert len(build_biorder(S).E) == 8
