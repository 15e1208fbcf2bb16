"""
Edge loads, hitting-set loads and memory thresholds.

For a family of harmful structures, each given by its fundamental
cycles, the largest per-edge load of a cycle hitting set is a memory
threshold: any pattern with m_t at or above it admits a spreading that
breaks every structure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, e as E_CONST
from typing import Iterable, Sequence

from ._json import decimal, safe_int
from .cycles import CycleCandidate, enumerate_cycle_candidates
from .errors import InvalidArgumentError, UnsupportedRegimeError
from .protograph import BaseGraph

log = logging.getLogger(__name__)

HIT_BUDGET = 10**6


@dataclass(frozen=True)
class HarmfulStructureSet:
    """Structures H_1..H_k, each the frozenset of its fundamental cycles."""

    structures: tuple[frozenset[CycleCandidate], ...]

    def __post_init__(self):
        structs = tuple(frozenset(s) for s in self.structures)
        if any(not s for s in structs):
            raise InvalidArgumentError("every harmful structure needs at least one fundamental cycle")
        object.__setattr__(self, "structures", structs)

    def __len__(self) -> int:
        return len(self.structures)

    @classmethod
    def singletons(cls, cycles: Iterable[CycleCandidate]) -> "HarmfulStructureSet":
        return cls(tuple(frozenset([c]) for c in cycles))

    @classmethod
    def girth6(cls, base: BaseGraph) -> "HarmfulStructureSet":
        """Every 4-cycle as its own structure."""
        return cls.singletons(enumerate_cycle_candidates(base, 2))

    @classmethod
    def girth8(cls, base: BaseGraph) -> "HarmfulStructureSet":
        """Every 4-cycle and every 6-cycle as its own structure."""
        return cls.singletons(enumerate_cycle_candidates(base, 2) + enumerate_cycle_candidates(base, 3))

    @classmethod
    def for_target(cls, base: BaseGraph, target: str) -> "HarmfulStructureSet":
        if target == "girth6":
            return cls.girth6(base)
        if target == "girth8":
            return cls.girth8(base)
        raise InvalidArgumentError(f"unknown target {target!r}")

    def cycles(self) -> list[CycleCandidate]:
        """Union of all fundamental cycles, repeated cycles identified."""
        return sorted(set().union(*self.structures)) if self.structures else []

    def check_in_range(self, base: BaseGraph) -> None:
        for c in self.cycles():
            if not c.in_range(base):
                raise InvalidArgumentError(f"cycle {c.to_json()} is out of range for {base.shape}")

    def to_json(self) -> list[list[dict]]:
        return [[c.to_json() for c in sorted(s)] for s in self.structures]

    @classmethod
    def from_json(cls, obj) -> "HarmfulStructureSet":
        structs = []
        for k, s in enumerate(obj):
            cands = [CycleCandidate.from_json(c) for c in s]
            if len(set(cands)) != len(cands):
                log.warning("structure %d lists the same cycle more than once", k)
            structs.append(frozenset(cands))
        return cls(tuple(structs))


@dataclass(frozen=True)
class LoadProfile:
    per_edge: tuple[tuple[int, ...], ...]
    max_load: int

    def to_json(self) -> dict:
        return {"per_edge": [list(r) for r in self.per_edge], "max_load": self.max_load}


def edge_loads(base: BaseGraph, cycles: Iterable[CycleCandidate]) -> LoadProfile:
    grid = [[0] * base.kappa for _ in range(base.gamma)]
    for c in set(cycles):
        if not c.in_range(base):
            raise InvalidArgumentError(f"cycle {c.to_json()} is out of range for {base.shape}")
        for i, j in c.edges():
            grid[i][j] += 1
    return LoadProfile(tuple(tuple(r) for r in grid), max(max(r) for r in grid))


def union_load(base: BaseGraph, hset: HarmfulStructureSet) -> int:
    return edge_loads(base, hset.cycles()).max_load


@dataclass(frozen=True)
class HittingSetLoad:
    """Result of the min-max hitting-set search.

    ``lower == upper`` when ``exact``; otherwise the optimum lies in
    [lower, upper] and ``witness`` achieves ``upper``.
    """

    lower: int
    upper: int
    exact: bool
    witness: tuple[CycleCandidate, ...]
    nodes: int

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"search stopped early; W_hit lies in [{self.lower}, {self.upper}]")
        return self.upper

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "lower": self.lower,
            "upper": self.upper,
            "nodes": self.nodes,
            "witness": [c.to_json() for c in self.witness],
        }


def min_hitting_set_load(
    base: BaseGraph, hset: HarmfulStructureSet, budget: int = HIT_BUDGET
) -> HittingSetLoad:
    """Branch-and-bound over one-cycle-per-structure choices.

    Structures are visited fewest-options first; a branch is cut once
    its running max load reaches the incumbent.
    """
    hset.check_in_range(base)
    cycles = hset.cycles()
    if not cycles:
        return HittingSetLoad(0, 0, True, (), 0)
    idx = {c: k for k, c in enumerate(cycles)}
    cedges = [[base.edge_index(i, j) for i, j in c.edges()] for c in cycles]
    structs = sorted({tuple(sorted(idx[c] for c in s)) for s in hset.structures}, key=lambda s: (len(s), s))

    load = [0] * base.n_edges
    selected = [0] * len(cycles)

    def add(k):
        selected[k] += 1
        if selected[k] == 1:
            for e in cedges[k]:
                load[e] += 1

    def remove(k):
        selected[k] -= 1
        if selected[k] == 0:
            for e in cedges[k]:
                load[e] -= 1

    forced = [s[0] for s in structs if len(s) == 1]
    for k in forced:
        add(k)
    free = [s for s in structs if len(s) > 1]
    base_max = max(load)
    lower = max(base_max, 1)

    # greedy incumbent
    for s in free:
        if not any(selected[k] for k in s):
            add(min(s, key=lambda k: max(load[e] + 1 for e in cedges[k])))
    best = max(load)
    best_sel = [k for k in range(len(cycles)) if selected[k]]
    for k in range(len(cycles)):
        while selected[k]:
            remove(k)
    for k in forced:
        add(k)

    nodes = 0
    exhausted = False

    def dfs(pos: int, cur: int) -> None:
        nonlocal best, best_sel, nodes, exhausted
        if exhausted or best == lower:
            return
        while pos < len(free) and any(selected[k] for k in free[pos]):
            pos += 1
        if pos == len(free):
            if cur < best:
                best = cur
                best_sel = [k for k in range(len(cycles)) if selected[k]]
            return
        options = sorted(free[pos], key=lambda k: max(load[e] + 1 for e in cedges[k]))
        for k in options:
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            new = max(cur, max(load[e] + 1 for e in cedges[k]))
            if new >= best:
                break
            add(k)
            dfs(pos + 1, new)
            remove(k)
            if exhausted or best == lower:
                return

    if best > lower:
        dfs(0, base_max)
    witness = tuple(cycles[k] for k in best_sel)
    if exhausted:
        return HittingSetLoad(lower, best, False, witness, nodes)
    return HittingSetLoad(best, best, True, witness, nodes)


def memory_bound_girth6(gamma: int, kappa: int) -> int:
    """Memory that guarantees a 4-cycle-free spreading: (gamma-1)(kappa-1)."""
    _check_dims(gamma, kappa)
    return (gamma - 1) * (kappa - 1)


def memory_bound_girth8(gamma: int, kappa: int) -> int:
    """Memory that guarantees girth >= 8: (g-1)(g-2)(k-1)(k-2) + (g-1)(k-1)."""
    _check_dims(gamma, kappa)
    return (gamma - 1) * (gamma - 2) * (kappa - 1) * (kappa - 2) + (gamma - 1) * (kappa - 1)


def literature_lower_bounds(kappa: int) -> tuple[int, int]:
    """Known lower bounds at gamma = 3: (4-cycles, 4- and 6-cycles)."""
    if kappa < 1:
        raise InvalidArgumentError(f"kappa must be positive, got {kappa}")
    return (ceil(Fraction(kappa - 1, 2)), ceil(Fraction(kappa * (kappa - 1), 8)))


def _check_dims(gamma, kappa):
    if gamma < 1 or kappa < 1:
        raise InvalidArgumentError(f"dimensions must be positive, got ({gamma}, {kappa})")


@dataclass(frozen=True)
class ECoefficient:
    """Exact number ``rational * e**e_power``."""

    rational: Fraction
    e_power: Fraction = Fraction(0)

    def __mul__(self, other) -> "ECoefficient":
        if isinstance(other, ECoefficient):
            return ECoefficient(self.rational * other.rational, self.e_power + other.e_power)
        return ECoefficient(self.rational * Fraction(other), self.e_power)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.rational) * E_CONST ** float(self.e_power)

    def __str__(self) -> str:
        r = self.rational
        if self.e_power == 0:
            return str(r)
        ep = "e" if self.e_power == 1 else f"e^({self.e_power})"
        num = "" if r.numerator == 1 else str(r.numerator)
        body = f"{num}{ep}"
        return body if r.denominator == 1 else f"{body}/{r.denominator}"

    def to_json(self) -> dict:
        return {
            "rational": str(self.rational),
            "e_power": str(self.e_power),
            "symbolic": str(self),
            "decimal": decimal(self),
        }


def clll_ratio(gamma: int) -> ECoefficient:
    """C_CLLL(gamma) / (gamma - 1) for 4-cycle elimination at lifting degree 1."""
    if gamma < 3:
        raise UnsupportedRegimeError(f"CLLL/MT comparison needs gamma >= 3, got {gamma}")
    if gamma == 3:
        return ECoefficient(Fraction(2), Fraction(1))
    if gamma == 4:
        return ECoefficient(Fraction(20, 9), Fraction(1))
    return ECoefficient(Fraction(512, 81))


# Exact memories and feasible-count figures published for the CLLL/MT
# frameworks; only the asymptotic constants are available in closed form.
_PUBLISHED = {
    (3, 5): {
        "m_clll": 35,
        "m_mt": 37,
        "clll_feasible_count": ECoefficient(Fraction(36**15) * Fraction(9, 10) ** 300),
        "mt_output_diversity": ECoefficient(Fraction(38**15), Fraction(-3, 2)),
    },
}


@dataclass(frozen=True)
class ComparisonRecord:
    gamma: int
    kappa: int
    c_clll_ratio: ECoefficient
    m_clll_asymptotic: ECoefficient
    m_mt_asymptotic: ECoefficient
    threshold_bound: int
    af_count_at_threshold: int
    m_clll: int | None = None
    m_mt: int | None = None
    clll_feasible_count: ECoefficient | None = None
    af_count_at_clll_memory: int | None = None
    mt_output_diversity: ECoefficient | None = None
    af_count_at_mt_memory: int | None = None

    def to_json(self) -> dict:
        def opt(v):
            if v is None:
                return None
            return v.to_json() if isinstance(v, ECoefficient) else safe_int(v)

        return {
            "gamma": self.gamma,
            "kappa": self.kappa,
            "c_clll_ratio": self.c_clll_ratio.to_json(),
            "m_clll_asymptotic": self.m_clll_asymptotic.to_json(),
            "m_mt_asymptotic": self.m_mt_asymptotic.to_json(),
            "threshold_bound": self.threshold_bound,
            "af_count_at_threshold": safe_int(self.af_count_at_threshold),
            "af_count_at_threshold_decimal": decimal(self.af_count_at_threshold, 3),
            "m_clll": self.m_clll,
            "m_mt": self.m_mt,
            "clll_feasible_count": opt(self.clll_feasible_count),
            "af_count_at_clll_memory": opt(self.af_count_at_clll_memory),
            "mt_output_diversity": opt(self.mt_output_diversity),
            "af_count_at_mt_memory": opt(self.af_count_at_mt_memory),
        }


def clll_mt_comparison(gamma: int, kappa: int) -> ComparisonRecord:
    from .counting import c4_counting_bound

    ratio = clll_ratio(gamma)
    c_clll = ratio * (gamma - 1)
    m_mt = ECoefficient(Fraction(4 * (2 * gamma - 3), 3), Fraction(1)) * kappa
    own = memory_bound_girth6(gamma, kappa)
    rec = dict(
        gamma=gamma,
        kappa=kappa,
        c_clll_ratio=ratio,
        m_clll_asymptotic=c_clll * kappa,
        m_mt_asymptotic=m_mt,
        threshold_bound=own,
        af_count_at_threshold=c4_counting_bound(gamma, kappa, own).bound,
    )
    pub = _PUBLISHED.get((gamma, kappa))
    if pub:
        rec.update(
            m_clll=pub["m_clll"],
            m_mt=pub["m_mt"],
            clll_feasible_count=pub["clll_feasible_count"],
            af_count_at_clll_memory=c4_counting_bound(gamma, kappa, pub["m_clll"]).bound,
            mt_output_diversity=pub["mt_output_diversity"],
            af_count_at_mt_memory=c4_counting_bound(gamma, kappa, pub["m_mt"]).bound,
        )
    return ComparisonRecord(**rec)


@dataclass(frozen=True)
class BoundReport:
    gamma: int
    kappa: int
    target: str
    w_union: int
    w_hit: HittingSetLoad | None
    girth6_bound: int
    girth8_bound: int
    lit_lower_bounds: tuple[int, int] | None = None
    comparison: ComparisonRecord | None = None

    def __post_init__(self):
        if self.w_hit is not None and self.w_hit.lower > self.w_union:
            raise AssertionError("hitting-set load exceeds union load")

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "kappa": self.kappa,
            "target": self.target,
            "w_union": self.w_union,
            "w_hit": None if self.w_hit is None else self.w_hit.to_json(),
            "girth6_bound": self.girth6_bound,
            "girth8_bound": self.girth8_bound,
            "lit_lower_bounds": None if self.lit_lower_bounds is None else list(self.lit_lower_bounds),
            "comparison": None if self.comparison is None else self.comparison.to_json(),
        }


def bound_report(
    gamma: int,
    kappa: int,
    target: str = "girth6",
    hset: HarmfulStructureSet | None = None,
    hit_budget: int = HIT_BUDGET,
) -> BoundReport:
    base = BaseGraph(gamma, kappa)
    if hset is None:
        hset = HarmfulStructureSet.for_target(base, target)
    hset.check_in_range(base)
    return BoundReport(
        gamma=gamma,
        kappa=kappa,
        target=target,
        w_union=union_load(base, hset) if len(hset) else 0,
        w_hit=min_hitting_set_load(base, hset, hit_budget),
        girth6_bound=memory_bound_girth6(gamma, kappa),
        girth8_bound=memory_bound_girth8(gamma, kappa),
        lit_lower_bounds=literature_lower_bounds(kappa) if gamma == 3 else None,
        comparison=clll_mt_comparison(gamma, kappa) if gamma >= 3 else None,
    )


def selected_cycles_by_structure(
    hset: HarmfulStructureSet, selection: Sequence[CycleCandidate]
) -> list[CycleCandidate]:
    """For each structure, the first selected cycle it contains (raises if some structure is missed)."""
    chosen = set(selection)
    out = []
    for k, s in enumerate(hset.structures):
        hits = sorted(s & chosen)
        if not hits:
            raise InvalidArgumentError(f"selection does not hit structure {k}")
        out.append(hits[0])
    return out
