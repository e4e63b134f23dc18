"""Run configuration and the verification pipeline behind the command line."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import biorder as bo
from . import complement as cm
from . import lattice as la
from . import semigroup as sg
from .report import RunReport, VerificationReport, make_report, timed
from .rings import (DEFAULT_MAX_ORDER, TABULATE_LIMIT, MatrixRing, TableRing,
                    build_matrix_ring, build_modular_ring, matrix_unit_idempotents,
                    read_table_file)
from .sequences import distance_table, verify_idpersp

CHECK_GROUPS = ("axioms", "baer", "lattice", "distances", "idpersp", "basis")
AXIOMS = ("e1", "e2", "e2dual", "e3")
RING_KINDS = ("gfmatrix", "zmod", "table", "order")
BUDGETS = ("auto", "full", "sampled")
PAIR_SAMPLE = 4096
RANDOM_FAMILIES = 50


class ConfigError(ValueError):
    """The run configuration is invalid or inconsistent with the input."""


def worker_count() -> int:
    """Worker processes from ``BIORDER_WORKERS`` (default 1)."""
    raw = os.environ.get("BIORDER_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"BIORDER_WORKERS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"BIORDER_WORKERS must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class RunConfig:
    ring: str
    n: int | None = None
    q: int | None = None
    m: int | None = None
    file: str | None = None
    checks: tuple[str, ...] = ("all",)
    axioms: tuple[str, ...] = AXIOMS
    basis: tuple[int, ...] | None = None
    budget: str = "auto"
    seed: int = 0
    samples: int = 10_000
    max_order: int = DEFAULT_MAX_ORDER

    def __post_init__(self):
        if self.ring not in RING_KINDS:
            raise ConfigError(f"--ring must be one of {RING_KINDS}, got {self.ring!r}")
        need = {"gfmatrix": ("n", "q"), "zmod": ("m",), "table": ("file",), "order": ("file",)}
        missing = [k for k in need[self.ring] if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"--ring {self.ring} needs " + ", ".join(f"--{k}" for k in missing))
        unknown = set(self.checks) - set(CHECK_GROUPS) - {"all"}
        if unknown:
            raise ConfigError(f"unknown checks: {sorted(unknown)}")
        unknown = set(self.axioms) - set(AXIOMS)
        if unknown:
            raise ConfigError(f"unknown axioms: {sorted(unknown)}")
        if self.budget not in BUDGETS:
            raise ConfigError(f"--budget must be one of {BUDGETS}, got {self.budget!r}")
        if self.samples < 1:
            raise ConfigError("--samples must be positive")

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        if "file" in out:
            out["file"] = Path(out["file"]).name
        return out


@dataclass
class Subject:
    """Everything derived from the configured input, built lazily."""

    config: RunConfig
    ring: object = None
    semigroup: sg.FiniteSemigroup | None = None
    order: la.QuotientLattice | None = None

    @property
    def name(self) -> str:
        if self.order is not None:
            return f"raw order on {self.order.size} points"
        return self.semigroup.name

    @cached_property
    def B(self) -> bo.BiorderedSet:
        return bo.build_biorder(self.semigroup)

    @cached_property
    def c(self) -> cm.ComplementMap | None:
        if self.ring is None or self.semigroup.zero is None:
            return None
        return cm.ComplementMap.from_ring(self.B, self.ring)

    @cached_property
    def left(self) -> la.QuotientLattice:
        return la.quotient_lattice(self.B, "left")

    @cached_property
    def right(self) -> la.QuotientLattice:
        return la.quotient_lattice(self.B, "right")

    @property
    def sampled(self) -> bool:
        if self.config.budget == "auto":
            return self.semigroup.order > TABULATE_LIMIT
        return self.config.budget == "sampled"


def read_order_file(path) -> la.QuotientLattice:
    """First line: number of points; each further line ``a,b`` means ``a <= b``."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    try:
        n = int(lines[0])
        pairs = [tuple(int(t) for t in ln.split(",")) for ln in lines[1:]]
    except (IndexError, ValueError):
        raise ConfigError(f"{path}: expected a point count followed by 'a,b' lines") from None
    if any(len(p) != 2 or min(p) < 0 or max(p) >= n for p in pairs):
        raise ConfigError(f"{path}: pairs must be two indices in range({n})")
    try:
        return la.QuotientLattice.from_order(n, pairs)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def load_subject(config: RunConfig) -> Subject:
    """Build the ring or semigroup (or raw order).  ResourceBudgetError propagates."""
    try:
        if config.ring == "gfmatrix":
            ring = build_matrix_ring(config.n, config.q, config.max_order)
        elif config.ring == "zmod":
            if config.m < 2:
                raise ConfigError("--m must be at least 2")
            ring = build_modular_ring(config.m)
        elif config.ring == "order":
            return Subject(config, order=read_order_file(config.file))
        else:
            mul, add = read_table_file(config.file)
            if add is None:
                return Subject(config, semigroup=sg.FiniteSemigroup.from_table(mul, name=Path(config.file).stem))
            ring = TableRing(mul, add)
    except (OSError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    return Subject(config, ring=ring, semigroup=sg.FiniteSemigroup.from_ring(ring))


def resolve_checks(config: RunConfig, subject: Subject) -> list[str]:
    groups = CHECK_GROUPS if "all" in config.checks else config.checks
    groups = [g for g in CHECK_GROUPS if g in groups]
    if subject.order is not None:
        if any(g != "lattice" for g in groups) and "all" not in config.checks:
            raise ConfigError("a raw order supports only --checks lattice")
        return ["lattice"]
    if "basis" in groups and basis_family(config, subject) is None:
        if "all" in config.checks:
            groups.remove("basis")
        else:
            raise ConfigError("--checks basis needs --basis for a non-matrix ring")
    return groups


def basis_family(config: RunConfig, subject: Subject):
    if config.basis is not None:
        return list(config.basis)
    if isinstance(subject.ring, MatrixRing):
        return matrix_unit_idempotents(subject.ring)
    return None


def _sample_pairs(B, seed):
    if B.k * B.k <= PAIR_SAMPLE:
        return None
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, B.k, size=(PAIR_SAMPLE, 2))
    return [(B.element(i), B.element(j)) for i, j in idx]


def _need_complement(subject, what):
    if subject.c is None:
        raise ConfigError(f"{what} needs a complement map: give a ring (with a zero)")
    return subject.c


def _axioms(subject: Subject, run):
    cfg = subject.config
    S = subject.semigroup
    run(lambda: sg.check_associativity(S, seed=cfg.seed))
    if subject.sampled:
        rng = np.random.default_rng(cfg.seed)
        xs = np.union1d(S.idempotents, rng.integers(0, S.order, size=cfg.samples))
        run(lambda: sg.regularity_report(S, sg.regularity_witnesses(S, xs), "sampled"))
    else:
        run(lambda: sg.regularity_report(S, sg.regularity_witnesses(S), "full"))
    B = subject.B
    pairs = _sample_pairs(B, cfg.seed) if subject.sampled else None
    run(lambda: bo.check_quasi_orders(B))
    run(lambda: bo.check_regularity(B, pairs))
    run(lambda: bo.check_route_agreement(B, pairs))
    if S.zero is not None:
        run(lambda: bo.check_zero_product_lemma(B))
    if "e1" in cfg.axioms:
        run(lambda: cm.verify_E1(B))
    wanted = [a for a in cfg.axioms if a != "e1"]
    if wanted:
        c = _need_complement(subject, "--axioms " + ",".join(wanted))
        if "e2" in wanted:
            run(lambda: cm.verify_E2(B, c))
        if "e2dual" in wanted:
            run(lambda: cm.verify_duals(B, c))
        if "e3" in wanted:
            run(lambda: cm.verify_E3(B, c, workers=worker_count()))
            run(lambda: cm.check_oplus(B, c, subject.ring))
    if subject.ring is not None and S.zero is not None:
        run(lambda: cm.verify_annid(B, subject.ring))


def _baer(subject: Subject, run):
    cfg = subject.config
    S = subject.semigroup
    if S.zero is None:
        run(lambda: make_report("baer", "annihilators equal principal ideals",
                                [{"reason": "semigroup has no zero"}]))
        return
    mode = "sampled" if subject.sampled else "full"
    run(lambda: sg.baer_check(S, mode, samples=cfg.samples, seed=cfg.seed))
    if subject.sampled:
        rng = np.random.default_rng(cfg.seed)
        xs = np.union1d(S.idempotents, rng.integers(0, S.order, size=cfg.samples))
        witness = sg.regularity_witnesses(S, xs)
    else:
        witness = sg.regularity_witnesses(S)
    run(lambda: sg.check_annihilator_reduction(S, witness))
    if subject.c is not None:
        run(lambda: sg.check_annihilator_generators(S, subject.c, S.idempotents))


def _renamed(report: VerificationReport, name: str) -> VerificationReport:
    report.check = name
    return report


def _lattice(subject: Subject, run):
    if subject.order is not None:
        L = subject.order
        run(lambda: _lattice_condition(L, "raw"))
        run(lambda: la.check_modular(L))
        run(lambda: la.check_complemented(L))
        return
    B, cfg = subject.B, subject.config
    Ll, Lr = subject.left, subject.right
    c = subject.c
    for side, L in (("left", Ll), ("right", Lr)):
        run(lambda: _lattice_condition(L, side))
        run(lambda: _renamed(la.check_modular(L), f"modular-{side}"))
        run(lambda: _renamed(la.check_complemented(L, c if side == "left" else None),
                             f"complemented-{side}"))
        if subject.semigroup.order <= la.PRINCIPAL_IDEAL_LIMIT:
            run(lambda: _renamed(la.check_principal_ideal_order(L),
                                 f"principal-ideal-order-{side}"))
    if c is None:
        return
    run(lambda: la.dual_isomorphism_check(Ll, Lr, c))
    run(lambda: la.check_sum_lattice(B, c, Ll))
    rng = np.random.default_rng(cfg.seed)
    families = [la.random_orthogonal_family(B, rng, int(rng.integers(2, 6)))
                for _ in range(RANDOM_FAMILIES)]
    if isinstance(subject.ring, MatrixRing):
        families.insert(0, matrix_unit_idempotents(subject.ring))
        run(lambda: la.check_subspace_lattice(Ll))
    run(lambda: la.check_independent_families(B, c, Ll, families))


def _lattice_condition(L, side):
    return make_report(f"lattice-{side}", "quotient order is a lattice", L.diagnosis,
                       details={"classes": L.size, "bottom": None if L.bottom is None else L.label(L.bottom),
                                "top": None if L.top is None else L.label(L.top)})


def _distances(subject: Subject, run):
    T = distance_table(subject.B)
    run(lambda: T.graph.check_equivalences())
    run(lambda: T.check())


def _idpersp(subject: Subject, run):
    run(lambda: verify_idpersp(subject.B, subject.left))


def _basis(subject: Subject, run):
    es = basis_family(subject.config, subject)
    c = _need_complement(subject, "--checks basis")
    try:
        subject.B.positions(es)
    except ValueError as exc:
        raise ConfigError(f"--basis: {exc}") from None
    run(lambda: la.homogeneous_basis_check(subject.left, subject.B, c, es).to_report())


STAGES = {"axioms": _axioms, "baer": _baer, "lattice": _lattice, "distances": _distances,
          "idpersp": _idpersp, "basis": _basis}


def cmd_verify(config: RunConfig) -> RunReport:
    """Run the requested check groups in dependency order."""
    subject = load_subject(config)
    groups = resolve_checks(config, subject)
    report = RunReport(subject.name, {**config.to_dict(), "resolved_checks": groups})

    def run(fn):
        with timed() as t:
            rec = fn()
        report.add(t.stamp(rec))

    for g in groups:
        STAGES[g](subject, run)
    return report
