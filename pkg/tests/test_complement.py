import numpy as np
import pytest

from biorder import (ComplementMap, PreconditionError, check_oplus, oplus, oplus_chain,
                     verify_annid, verify_duals, verify_E1, verify_E2, verify_E3)
from biorder.complement import e3_intersection
from conftest import subject, unit

RINGS = ["Z6", "M22", "M23", "M32"]


def test_e1_examples():
    assert verify_E1(subject("Z6").B).details["zero"] == 0
    assert verify_E1(subject("M22").B).details["zero"] == 0


@pytest.mark.parametrize("name", RINGS)
def test_axioms_pass_with_ring_complement(name):
    f = subject(name)
    for report in (verify_E1(f.B), verify_E2(f.B, f.c), verify_duals(f.B, f.c),
                   verify_E3(f.B, f.c), verify_annid(f.B)):
        assert report.passed, (report.check, report.counterexamples)


def test_e2_identity_map_fails_ii_at_e11_and_identity():
    f = subject("M22")
    report = verify_E2(f.B, ComplementMap.identity(f.B))
    assert not report.passed
    e11 = unit(f.ring, 0, 0)
    # f wl e holds for (E11, I) but c(e) = I wr c(f) = E11 does not
    assert {"condition": "ii", "f": e11, "e": f.ring.one_index} in report.counterexamples
    assert report.details["failures_by_condition"]["ii"] > 0


def test_e2_on_z6_hand_map():
    B = subject("Z6").B
    c = ComplementMap.from_mapping(B, {0: 1, 1: 0, 3: 4, 4: 3})
    assert verify_E2(B, c).passed
    assert verify_duals(B, c).details["one"] == 1


def test_duals_top_is_identity_matrix():
    f = subject("M22")
    assert verify_duals(f.B, f.c).details["one"] == f.ring.one_index


def test_e3_examples():
    f = subject("M22")
    B, c = f.B, f.c
    e11, e22 = unit(f.ring, 0, 0), unit(f.ring, 1, 1)
    assert B.elements(e3_intersection(B, c, B.pos(e11), B.pos(e22))) == (0,)
    for e in B.E.tolist():
        assert B.elements(e3_intersection(B, c, B.pos(e), B.bottom)) == (c(e),)
    Z = subject("Z6")
    assert Z.B.elements(e3_intersection(Z.B, Z.c, Z.B.pos(3), Z.B.pos(0))) == (4,)


def test_oplus_examples():
    f = subject("M22")
    e11, e22 = unit(f.ring, 0, 0), unit(f.ring, 1, 1)
    r = oplus(f.B, f.c, e11, e22)
    assert r.h == f.ring.one_index and r.sandwich_witness == 0
    assert r.characterized and r.ring_sum_ok
    for e in f.B.E.tolist():
        assert oplus(f.B, f.c, e, 0).h == e
    z = subject("Z6")
    assert oplus(z.B, z.c, 3, 4).h == 1


def test_oplus_precondition():
    f = subject("M22")
    e11 = unit(f.ring, 0, 0)
    with pytest.raises(PreconditionError):
        oplus(f.B, f.c, e11, e11)


@pytest.mark.parametrize("name", RINGS)
def test_oplus_is_ring_sum_on_orthogonal_pairs(name):
    f = subject(name)
    report = check_oplus(f.B, f.c)
    assert report.passed, report.counterexamples
    assert report.details["ring_sums_checked"] == report.details["pairs"]
    assert report.details["orthogonal_pairs"] == report.details["pairs"]


def test_orthogonal_pair_count_m4_by_products():
    f = subject("M42")
    P = f.B.products
    orth = int(((P == 0) & (P.T == 0)).sum())
    assert orth == 12483
    assert verify_E3(f.B, f.c).details["pairs"] == orth


def test_oplus_chain():
    f = subject("M42")
    units = [unit(f.ring, i, i) for i in range(4)]
    assert oplus_chain(f.B, f.c, units) == f.ring.one_index
    assert oplus_chain(f.B, f.c, units[:1]) == units[0]
    g = subject("M32")
    e1, e2, e3 = (unit(g.ring, i, i) for i in range(3))
    left = oplus(g.B, g.c, oplus(g.B, g.c, e1, e2).h, e3).h
    right = oplus(g.B, g.c, oplus(g.B, g.c, e2, e3).h, e1).h
    assert left == right == g.ring.one_index
    with pytest.raises(PreconditionError, match="M"):
        oplus_chain(g.B, g.c, [e1, e1])


def test_oplus_chain_with_many_terms_uses_seeded_orders():
    f = subject("M42")
    units = [unit(f.ring, i, i) for i in range(4)]
    assert oplus_chain(f.B, f.c, units + [0], seed=3) == f.ring.one_index


def test_annid_relations_on_z6_by_hand():
    B = subject("Z6").B
    E = [0, 1, 3, 4]
    for e in E:
        for g in E:
            # g wl e iff (1-g)(1-e) = 1-e
            assert B.leq_l(g, e) == (((1 - g) * (1 - e)) % 6 == (1 - e) % 6)


def test_complement_map_validation():
    B = subject("Z6").B
    with pytest.raises(ValueError):
        ComplementMap(B, np.array([0, 1, 2]))
