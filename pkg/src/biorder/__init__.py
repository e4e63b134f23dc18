"""Biordered sets of idempotents in finite regular rings and semigroups.

Typical use::

    from biorder import build_matrix_ring, FiniteSemigroup, build_biorder
    ring = build_matrix_ring(2, 2)
    B = build_biorder(FiniteSemigroup.from_ring(ring))
"""

from .biorder import (BiorderedSet, MSet, RouteDisagreementError, SandwichSet, build_biorder,
                      check_quasi_orders, check_regularity, check_route_agreement,
                      check_zero_product_lemma, m_set, sandwich_set)
from .bitrel import BitRelation
from .complement import (ComplementMap, OplusResult, PreconditionError, check_oplus, oplus,
                         oplus_chain, verify_annid, verify_duals, verify_E1, verify_E2,
                         verify_E3)
from .lattice import (BasisCertificate, QuotientLattice, check_complemented, check_modular,
                      check_sum_lattice, dual_isomorphism_check, homogeneous_basis_check,
                      independent, perspective, quotient_lattice)
from .pipeline import ConfigError, RunConfig, cmd_verify
from .report import RunReport, VerificationReport
from .rings import (MatrixRing, ModularRing, ResourceBudgetError, RingTable, TableRing,
                    build_matrix_ring, build_modular_ring, complement_of,
                    matrix_unit_idempotents, read_table_file)
from .semigroup import (FiniteSemigroup, annihilator, baer_check, idempotents,
                        principal_ideal, regularity_witnesses)
from .sequences import (DistanceTable, ESequenceGraph, distance, distance_sided,
                        distance_table, verify_idpersp)

__version__ = "0.1.0"
