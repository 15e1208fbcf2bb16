"""
Cycle candidates in the base graph and their survival after edge spreading.

A cycle-2g candidate is the closed walk j_1, i_1, j_2, i_2, ..., j_g, i_g
through the base graph, using edges (i_k, j_k) and (i_k, j_{k+1}) with
j_{g+1} = j_1. It survives as a cycle of the coupled protograph exactly
when sum_k P(i_k, j_k) == sum_k P(i_k, j_{k+1}).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, ResourceError, UndefinedGirthError
from .protograph import BaseGraph, PartitionMatrix, SparseBinaryMatrix

CANDIDATE_BUDGET = 10**7
GIRTH_CAPS = (4, 6, 8, 10, 12)


def _variants(cols: tuple[int, ...], rows: tuple[int, ...]):
    g = len(cols)
    # reflection traverses the walk backwards, keeping a column first
    rcols = (cols[0],) + tuple(reversed(cols[1:]))
    rrows = tuple(reversed(rows))
    for cs, rs in ((cols, rows), (rcols, rrows)):
        for k in range(g):
            yield cs[k:] + cs[:k], rs[k:] + rs[:k]


@dataclass(frozen=True, order=True)
class CycleCandidate:
    """Canonical cycle candidate; build through :meth:`make` to canonicalize."""

    cols: tuple[int, ...]
    rows: tuple[int, ...]

    @classmethod
    def make(cls, cols: Sequence[int], rows: Sequence[int]) -> "CycleCandidate":
        cols = tuple(int(c) for c in cols)
        rows = tuple(int(r) for r in rows)
        if len(cols) != len(rows) or len(cols) < 2:
            raise InvalidArgumentError("a candidate needs g >= 2 rows and g columns")
        edges = _walk_edges(cols, rows)
        if len(set(edges)) != len(edges):
            raise InvalidArgumentError(f"candidate cols={cols} rows={rows} repeats an edge")
        best = min(_variants(cols, rows), key=lambda v: _interleave(*v))
        return cls(*best)

    @property
    def g(self) -> int:
        return len(self.cols)

    @property
    def length(self) -> int:
        return 2 * self.g

    def as_tuple(self) -> tuple[int, ...]:
        """The index tuple (j_1, i_1, ..., j_g, i_g)."""
        return _interleave(self.cols, self.rows)

    def plus_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in zip(self.rows, self.cols)]

    def minus_edges(self) -> list[tuple[int, int]]:
        g = self.g
        return [(self.rows[k], self.cols[(k + 1) % g]) for k in range(g)]

    def edges(self) -> list[tuple[int, int]]:
        return _walk_edges(self.cols, self.rows)

    def in_range(self, base: BaseGraph) -> bool:
        return all(0 <= i < base.gamma for i in self.rows) and all(0 <= j < base.kappa for j in self.cols)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}

    @classmethod
    def from_json(cls, obj: dict) -> "CycleCandidate":
        return cls.make(obj["cols"], obj["rows"])


def _interleave(cols, rows) -> tuple[int, ...]:
    return tuple(v for pair in zip(cols, rows) for v in pair)


def _walk_edges(cols, rows) -> list[tuple[int, int]]:
    g = len(cols)
    out = []
    for k in range(g):
        out.append((rows[k], cols[k]))
        out.append((rows[k], cols[(k + 1) % g]))
    return out


def candidate_count(base: BaseGraph, g: int) -> int:
    """Number of candidates with g distinct rows and g distinct columns."""
    if g < 2:
        return 0
    return comb(base.gamma, g) * comb(base.kappa, g) * factorial(g) * factorial(g - 1) // 2


def enumerate_cycle_candidates(base: BaseGraph, g: int, budget: int = CANDIDATE_BUDGET) -> list[CycleCandidate]:
    """All canonical cycle-2g candidates using g distinct rows and g distinct columns.

    Generated directly in canonical form: the smallest column leads and
    the orientation is fixed by i_1 < i_g.
    """
    if g < 2:
        raise InvalidArgumentError(f"g must be >= 2, got {g}")
    projected = candidate_count(base, g)
    if projected > budget:
        raise ResourceError(f"{projected} cycle-{2 * g} candidates exceed the budget of {budget}", projected)
    out = []
    for colset in combinations(range(base.kappa), g):
        j1, rest = colset[0], colset[1:]
        for tail in permutations(rest):
            cols = (j1,) + tail
            for rows in permutations(range(base.gamma), g):
                if rows[0] < rows[-1]:
                    out.append(CycleCandidate(cols, rows))
    out.sort()
    return out


def is_active(c: CycleCandidate, p: PartitionMatrix) -> bool:
    e = p.entries
    g = c.g
    plus = sum(e[c.rows[k]][c.cols[k]] for k in range(g))
    minus = sum(e[c.rows[k]][c.cols[(k + 1) % g]] for k in range(g))
    return plus == minus


def coefficient_matrix(base: BaseGraph, cycles: Sequence[CycleCandidate]) -> np.ndarray:
    """Row c holds the linear form whose vanishing keeps cycle c active (+1 / -1 per edge)."""
    a = np.zeros((len(cycles), base.n_edges), dtype=np.int64)
    for r, c in enumerate(cycles):
        for i, j in c.plus_edges():
            a[r, base.edge_index(i, j)] += 1
        for i, j in c.minus_edges():
            a[r, base.edge_index(i, j)] -= 1
    return a


@dataclass(frozen=True)
class CycleCensus:
    g: int
    total_candidates: int
    active_count: int
    active_list: tuple[CycleCandidate, ...] | None = field(default=None)

    def to_json(self, max_examples: int | None = None) -> dict:
        examples = list(self.active_list or ())
        if max_examples is not None:
            examples = examples[:max_examples]
        return {
            "g": self.g,
            "total": self.total_candidates,
            "active": self.active_count,
            "examples": [c.to_json() for c in examples],
        }


def census(
    base: BaseGraph,
    p: PartitionMatrix,
    g: int,
    keep_list: bool = False,
    budget: int = CANDIDATE_BUDGET,
) -> CycleCensus:
    p.check_compatible(base)
    cands = enumerate_cycle_candidates(base, g, budget)
    if not cands:
        return CycleCensus(g, 0, 0, () if keep_list else None)
    x = np.array(p.flat(), dtype=np.int64)
    active_mask = coefficient_matrix(base, cands) @ x == 0
    active = tuple(c for c, a in zip(cands, active_mask) if a) if keep_list else None
    return CycleCensus(g, len(cands), int(active_mask.sum()), active)


def min_active_cycle_length(base: BaseGraph, p: PartitionMatrix, max_g: int = 3) -> int | None:
    """Length 2g of the shortest active candidate with g <= max_g, or None."""
    for g in range(2, max_g + 1):
        if census(base, p, g).active_count:
            return 2 * g
    return None


@dataclass(frozen=True)
class Girth:
    """Girth of a Tanner graph: exact ``value`` or, when not ``exact``, a lower bound ``value``."""

    value: int
    exact: bool

    def at_least(self, n: int) -> bool:
        return self.value >= n

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self):
        return self.value if self.exact else f">={self.value}"


def tanner_girth(h: SparseBinaryMatrix, cap: int = 12) -> Girth:
    """Shortest cycle of the bipartite Tanner graph, searched by truncated BFS from every vertex.

    Returns the exact girth when it is below ``cap``, otherwise ``Girth(cap, exact=False)``.
    """
    if cap not in GIRTH_CAPS:
        raise InvalidArgumentError(f"cap must be one of {GIRTH_CAPS}, got {cap}")
    if h.nnz == 0:
        raise UndefinedGirthError("matrix has no nonzeros; girth is undefined")
    n_chk = h.rows
    adj: list[list[int]] = [[] for _ in range(h.rows + h.cols)]
    for r, c in h.nonzeros:
        adj[r].append(n_chk + c)
        adj[n_chk + c].append(r)

    best = cap
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    for src in range(n):
        if not adj[src]:
            continue
        touched = [src]
        dist[src] = 0
        q = deque([src])
        # a cycle shorter than best is closed from a vertex at depth <= best/2 - 2
        limit = best // 2 - 2
        while q:
            u = q.popleft()
            du = dist[u]
            if du > limit:
                break
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if dist[w] == -1:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    q.append(w)
                else:
                    length = du + dist[w] + 1
                    if length < best:
                        best = length
                        limit = best // 2 - 2
        for v in touched:
            dist[v] = -1
            parent[v] = -1
        if best == 4:
            break
    return Girth(best, best < cap)

