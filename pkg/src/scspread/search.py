"""
Constructing partition matrices that break a family of harmful structures.

Three strategies: the explicit product assignment P(i, j) = i * j,
depth-first backtracking over edges in row-major order, and seeded
random sampling of whole assignments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import HarmfulStructureSet
from .counting import structure_forms, valid_mask, batch_generator, sample_assignments
from .cycles import CycleCandidate, is_active
from .errors import InvalidArgumentError
from .protograph import (
    BaseGraph,
    CouplingPattern,
    PartitionMatrix,
    assignment_from_flat,
    explicit_product_assignment,
)

STRATEGIES = ("backtracking", "random", "explicit")


@dataclass(frozen=True)
class SearchConfig:
    pattern: CouplingPattern
    hset: HarmfulStructureSet
    node_budget: int = 10**6
    seed: int = 0
    strategy: str = "backtracking"

    def __post_init__(self):
        if self.node_budget < 1:
            raise InvalidArgumentError(f"node_budget must be >= 1, got {self.node_budget}")
        if self.strategy not in STRATEGIES:
            raise InvalidArgumentError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")


@dataclass(frozen=True)
class SearchResult:
    found: bool
    p: PartitionMatrix | None
    nodes_explored: int
    certificate: tuple[int, ...] = ()
    # True when a negative answer comes from exhausting the whole space
    conclusive: bool = False
    strategy: str = "backtracking"

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "strategy": self.strategy,
            "p": None if self.p is None else self.p.to_json(),
            "nodes_explored": self.nodes_explored,
            "certificate": list(self.certificate),
            "conclusive": self.found or self.conclusive,
        }


@dataclass(frozen=True)
class Verification:
    """Per-structure inactive cycle (None where the structure survives) plus the surviving indices."""

    certificate: tuple[CycleCandidate | None, ...]
    violations: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def indices(self, hset: HarmfulStructureSet) -> tuple[int, ...]:
        """Position of each certifying cycle within its structure's sorted cycle list."""
        return tuple(
            sorted(s).index(c) if c is not None else -1 for s, c in zip(hset.structures, self.certificate)
        )

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "certificate": [None if c is None else c.to_json() for c in self.certificate],
            "violations": list(self.violations),
        }


def verify_assignment(
    base: BaseGraph, p: PartitionMatrix, pattern: CouplingPattern, hset: HarmfulStructureSet
) -> Verification:
    p.check_compatible(base, pattern)
    hset.check_in_range(base)
    cert: list[CycleCandidate | None] = []
    bad = []
    for k, s in enumerate(hset.structures):
        hit = next((c for c in sorted(s) if not is_active(c, p)), None)
        cert.append(hit)
        if hit is None:
            bad.append(k)
    return Verification(tuple(cert), tuple(bad))


def _finish(base, p, cfg, nodes, strategy) -> SearchResult:
    v = verify_assignment(base, p, cfg.pattern, cfg.hset)
    if not v.ok:
        raise AssertionError(f"{strategy} search returned an assignment with violations {v.violations}")
    return SearchResult(True, p, nodes, v.indices(cfg.hset), True, strategy)


def _backtrack(base: BaseGraph, cfg: SearchConfig) -> SearchResult:
    n = base.n_edges
    values = cfg.pattern.values
    cycles = cfg.hset.cycles()
    idx = {c: k for k, c in enumerate(cycles)}
    forms = []
    for c in cycles:
        plus = [base.edge_index(i, j) for i, j in c.plus_edges()]
        minus = [base.edge_index(i, j) for i, j in c.minus_edges()]
        forms.append((plus, minus))
    last_edge = [max(base.edge_index(i, j) for i, j in c.edges()) for c in cycles]

    # a structure can only be judged once all of its cycles are assigned
    checks_at: list[list[list[int]]] = [[] for _ in range(n)]
    for s in cfg.hset.structures:
        members = sorted(idx[c] for c in s)
        checks_at[max(last_edge[k] for k in members)].append(members)

    def survives(members) -> bool:
        for k in members:
            plus, minus = forms[k]
            if sum(x[e] for e in plus) != sum(x[e] for e in minus):
                return False
        return True

    x = [0] * n
    choice = [-1] * n
    nodes = 0
    pos = 0
    while 0 <= pos < n:
        choice[pos] += 1
        if choice[pos] == len(values):
            choice[pos] = -1
            pos -= 1
            continue
        if nodes >= cfg.node_budget:
            return SearchResult(False, None, nodes, (), False, "backtracking")
        nodes += 1
        x[pos] = values[choice[pos]]
        if any(survives(m) for m in checks_at[pos]):
            continue
        pos += 1
    if pos < 0:
        return SearchResult(False, None, nodes, (), True, "backtracking")
    return _finish(base, assignment_from_flat(base, x), cfg, nodes, "backtracking")


def _random(base: BaseGraph, cfg: SearchConfig, batch_size: int = 4096) -> SearchResult:
    if len(cfg.hset) == 0:
        x = sample_assignments(cfg.pattern, base.n_edges, 1, batch_generator(cfg.seed, 0))[0]
        return _finish(base, assignment_from_flat(base, x.tolist()), cfg, 1, "random")
    coeffs, members = structure_forms(base, cfg.hset)
    drawn = 0
    b = 0
    while drawn < cfg.node_budget:
        size = min(batch_size, cfg.node_budget - drawn)
        xs = sample_assignments(cfg.pattern, base.n_edges, size, batch_generator(cfg.seed, b))
        ok = np.flatnonzero(valid_mask(xs, coeffs, members))
        if ok.size:
            first = int(ok[0])
            p = assignment_from_flat(base, xs[first].tolist())
            return _finish(base, p, cfg, drawn + first + 1, "random")
        drawn += size
        b += 1
    return SearchResult(False, None, drawn, (), False, "random")


def _explicit(base: BaseGraph, cfg: SearchConfig) -> SearchResult:
    p = explicit_product_assignment(base)
    if not all(v in cfg.pattern.value_set for v in p.flat()):
        return SearchResult(False, None, 1, (), False, "explicit")
    v = verify_assignment(base, p, cfg.pattern, cfg.hset)
    if not v.ok:
        return SearchResult(False, None, 1, (), False, "explicit")
    return SearchResult(True, p, 1, v.indices(cfg.hset), True, "explicit")


def search_assignment(base: BaseGraph, cfg: SearchConfig) -> SearchResult:
    """Look for a partition matrix over ``cfg.pattern`` that breaks every structure in ``cfg.hset``.

    A negative backtracking result is conclusive only when the whole
    space was exhausted within the node budget.
    """
    cfg.hset.check_in_range(base)
    if cfg.strategy == "backtracking":
        return _backtrack(base, cfg)
    if cfg.strategy == "random":
        return _random(base, cfg)
    return _explicit(base, cfg)
