"""
Counting bounds on valid edge-spreading assignments.

The Alon-Furedi minimum-product bound is evaluated exactly with Python
integers. Exhaustive enumeration and seeded Monte-Carlo sampling serve
as independent checks on small and mid-size instances.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod, sqrt
from typing import Sequence

import numpy as np

from ._json import decimal
from .bounds import HarmfulStructureSet, memory_bound_girth6
from .cycles import coefficient_matrix
from .errors import DomainError, InvalidArgumentError, PreconditionError, ResourceError
from .protograph import BaseGraph, CouplingPattern

ENUMERATION_BUDGET = 10**8
CHUNK = 1 << 20
# two-sided 99% standard normal quantile
Z99 = 2.5758293035489004


def _default_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("SC_SPREAD_THREADS", "1"))
    return max(1, threads)


def min_grid_product(sizes: Sequence[int], target_sum: int) -> int:
    """min prod(y) over integers 1 <= y_i <= sizes[i] with sum(y) == target_sum.

    The deficit sum(sizes) - target_sum is poured into the smallest
    coordinates first, each dropped to 1 before moving on; an exchange
    argument shows no other distribution does better.
    """
    sizes = [int(a) for a in sizes]
    _check_grid(sizes, target_sum)
    deficit = sum(sizes) - target_sum
    ys = sorted(sizes)
    for k, a in enumerate(ys):
        if deficit == 0:
            break
        cut = min(a - 1, deficit)
        ys[k] = a - cut
        deficit -= cut
    return prod(ys)


def min_grid_product_dp(sizes: Sequence[int], target_sum: int) -> int:
    """Same quantity by dynamic programming over prefix sums (reference oracle)."""
    sizes = [int(a) for a in sizes]
    _check_grid(sizes, target_sum)
    best = {0: 1}
    for a in sizes:
        nxt: dict[int, int] = {}
        for s, p in best.items():
            for y in range(1, a + 1):
                t = s + y
                if t > target_sum:
                    break
                v = p * y
                if t not in nxt or v < nxt[t]:
                    nxt[t] = v
        best = nxt
    return best[target_sum]


def _check_grid(sizes: list[int], target_sum: int) -> None:
    if not sizes or any(a < 1 for a in sizes):
        raise DomainError(f"grid sizes must be >= 1, got {sizes}")
    if not len(sizes) <= target_sum <= sum(sizes):
        raise DomainError(f"target sum {target_sum} outside [{len(sizes)}, {sum(sizes)}]")


def decompose(D: int, step: int) -> tuple[int, int]:
    """D = q * step + r with 0 <= r < step."""
    return divmod(D, step)


def uniform_min_product(n: int, s: int, D: int) -> int:
    """Closed form of min_grid_product((s,)*n, n*s - D)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if s < 2:
        raise DomainError(f"s must be >= 2, got {s}")
    if not 0 <= D <= n * (s - 1):
        raise DomainError(f"degree {D} outside [0, {n * (s - 1)}]")
    q, r = decompose(D, s - 1)
    if r == 0:
        return s ** (n - q)
    return (s - r) * s ** (n - q - 1)


@dataclass(frozen=True)
class CountingBound:
    degree: int
    bound: int
    q: int
    r: int
    grid_total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.bound, self.grid_total)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "bound": str(self.bound),
            "q": self.q,
            "r": self.r,
            "grid_total": str(self.grid_total),
            "bound_decimal": decimal(self.bound),
            "grid_total_decimal": decimal(self.grid_total),
            "fraction": str(self.fraction),
            "fraction_decimal": decimal(self.fraction),
        }


def general_af_bound(n: int, m_t: int, degree: int) -> CountingBound:
    """Alon-Furedi count for a polynomial of the given degree on the grid S^n, |S| = m_t + 1."""
    if n < 1 or m_t < 0:
        raise DomainError(f"need n >= 1 and m_t >= 0, got n={n}, m_t={m_t}")
    if not 0 <= degree <= n * m_t:
        raise DomainError(f"degree {degree} outside [0, {n * m_t}]")
    s = m_t + 1
    total = s**n
    if m_t == 0:
        return CountingBound(degree, total, 0, 0, total)
    q, r = decompose(degree, m_t)
    return CountingBound(degree, uniform_min_product(n, s, degree), q, r, total)


def c4_counting_bound(gamma: int, kappa: int, m_t: int) -> CountingBound:
    """Lower bound on spreadings over m_t + 1 values that kill every 4-cycle."""
    threshold = memory_bound_girth6(gamma, kappa)
    if m_t < threshold:
        raise PreconditionError(f"m_t={m_t} is below the 4-cycle memory threshold {threshold}")
    d4 = comb(gamma, 2) * comb(kappa, 2)
    return general_af_bound(gamma * kappa, m_t, d4)


def valid_mask(values: np.ndarray, coeffs: np.ndarray, struct_members: list[np.ndarray]) -> np.ndarray:
    """values: (batch, n_edges) assignments; True where every structure has an inactive cycle."""
    inactive = (values @ coeffs.T) != 0
    ok = np.ones(values.shape[0], dtype=bool)
    for members in struct_members:
        ok &= inactive[:, members].any(axis=1)
    return ok


def structure_forms(base: BaseGraph, hset: HarmfulStructureSet):
    hset.check_in_range(base)
    cycles = hset.cycles()
    idx = {c: k for k, c in enumerate(cycles)}
    coeffs = coefficient_matrix(base, cycles)
    members = [np.array(sorted(idx[c] for c in s), dtype=np.intp) for s in hset.structures]
    return coeffs, members


def exhaustive_count_valid(
    base: BaseGraph,
    pattern: CouplingPattern,
    hset: HarmfulStructureSet,
    budget: int = ENUMERATION_BUDGET,
    threads: int | None = None,
) -> int:
    """Exact number of assignments in S^(gamma*kappa) breaking every structure."""
    s = len(pattern.values)
    n = base.n_edges
    total = s**n
    if total > budget:
        raise ResourceError(
            f"{total} assignments exceed the enumeration budget {budget}; use monte_carlo_fraction",
            projected=total,
        )
    if len(hset) == 0:
        return total
    coeffs, members = structure_forms(base, hset)
    vals = np.array(pattern.values, dtype=np.int64)
    radix = s ** np.arange(n - 1, -1, -1, dtype=np.int64)

    def count(start: int, stop: int) -> int:
        flat = np.arange(start, stop, dtype=np.int64)
        digits = (flat[:, None] // radix[None, :]) % s
        return int(valid_mask(vals[digits], coeffs, members).sum())

    ranges = [(a, min(a + CHUNK, total)) for a in range(0, total, CHUNK)]
    workers = _default_threads(threads)
    if workers == 1 or len(ranges) == 1:
        return sum(count(a, b) for a, b in ranges)
    with ThreadPoolExecutor(workers) as ex:
        return sum(ex.map(lambda ab: count(*ab), ranges))


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    if trials < 1:
        raise InvalidArgumentError("need at least one trial")
    p = successes / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    return (max(0.0, centre - half), min(1.0, centre + half))


@dataclass(frozen=True)
class FractionEstimate:
    valid: int
    samples: int
    seed: int
    wilson_interval: tuple[float, float]

    @property
    def fraction(self) -> float:
        return self.valid / self.samples

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "samples": self.samples,
            "seed": str(self.seed),
            "fraction": self.fraction,
            "wilson_interval": list(self.wilson_interval),
            "confidence": 0.99,
        }


def sample_assignments(pattern: CouplingPattern, n_edges: int, count: int, rng: np.random.Generator) -> np.ndarray:
    vals = np.array(pattern.values, dtype=np.int64)
    return vals[rng.integers(0, len(vals), size=(count, n_edges))]


def batch_generator(seed: int, batch: int) -> np.random.Generator:
    """Philox stream for one sample batch; the batch index is the counter-key offset."""
    return np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, batch]))


def monte_carlo_fraction(
    base: BaseGraph,
    pattern: CouplingPattern,
    hset: HarmfulStructureSet,
    samples: int,
    seed: int = 0,
    batch_size: int = 1 << 17,
    threads: int | None = None,
) -> FractionEstimate:
    """Fraction of uniformly drawn assignments breaking every structure, with a 99% Wilson interval.

    Batches draw from independent Philox keys, so the result depends
    only on (seed, samples, batch_size), not on thread count.
    """
    if samples < 1:
        raise InvalidArgumentError(f"samples must be >= 1, got {samples}")
    if len(hset) == 0:
        return FractionEstimate(samples, samples, seed, wilson_interval(samples, samples))
    coeffs, members = structure_forms(base, hset)
    n = base.n_edges
    batches = [(b, min(batch_size, samples - b * batch_size)) for b in range(-(-samples // batch_size))]

    def run(job):
        b, size = job
        x = sample_assignments(pattern, n, size, batch_generator(seed, b))
        return int(valid_mask(x, coeffs, members).sum())

    workers = _default_threads(threads)
    if workers == 1:
        valid = sum(map(run, batches))
    else:
        with ThreadPoolExecutor(workers) as ex:
            valid = sum(ex.map(run, batches))
    return FractionEstimate(valid, samples, seed, wilson_interval(valid, samples))


__all__ = [
    "CountingBound",
    "FractionEstimate",
    "c4_counting_bound",
    "exhaustive_count_valid",
    "general_af_bound",
    "min_grid_product",
    "min_grid_product_dp",
    "monte_carlo_fraction",
    "uniform_min_product",
    "wilson_interval",
]
