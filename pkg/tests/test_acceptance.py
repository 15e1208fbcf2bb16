"""Exit criteria, one test per criterion, each with its runtime budget."""

import math
import random
import time
from fractions import Fraction

from scspread.bounds import (
    HarmfulStructureSet,
    clll_mt_comparison,
    literature_lower_bounds,
    memory_bound_girth6,
    memory_bound_girth8,
)
from scspread.counting import (
    c4_counting_bound,
    exhaustive_count_valid,
    min_grid_product_dp,
    monte_carlo_fraction,
    uniform_min_product,
)
from scspread.cycles import census, min_active_cycle_length, tanner_girth
from scspread.protograph import (
    BaseGraph,
    CouplingPattern,
    PartitionMatrix,
    build_sc_matrix,
    explicit_product_assignment,
    spread_edges,
)
from scspread.search import SearchConfig, search_assignment, verify_assignment


def best_time(fn, repeats=20):
    best = math.inf
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_ac1_3x5_counting_exact(criterion):
    cb = c4_counting_bound(3, 5, 8)
    assert cb.degree == 30
    assert (cb.q, cb.r) == (3, 6)
    assert cb.bound == 94_143_178_827
    assert cb.grid_total == 205_891_132_094_649
    assert cb.fraction == Fraction(1, 2187)
    elapsed = best_time(lambda: c4_counting_bound(3, 5, 8))
    assert elapsed < 1e-3
    criterion(f"bound={cb.bound} total={cb.grid_total} ratio={cb.fraction} ({elapsed * 1e6:.0f} us)")


def test_ac2_memory_thresholds(criterion):
    def check():
        assert memory_bound_girth6(3, 5) == 8
        assert memory_bound_girth8(3, 5) == 32
        assert literature_lower_bounds(5) == (2, 3)
        for k in range(4, 11):
            assert memory_bound_girth6(3, k) == 2 * (k - 1)
            assert memory_bound_girth8(3, k) == 2 * (k - 1) * (k - 2) + 2 * (k - 1)

    check()
    elapsed = best_time(check)
    assert elapsed < 1e-3
    criterion(f"8 / 32 / (2,3), kappa 4..10 closed forms ({elapsed * 1e6:.0f} us)")


def test_ac3_explicit_construction(criterion):
    t0 = time.perf_counter()
    for gamma in range(2, 7):
        for kappa in range(2, 7):
            base = BaseGraph(gamma, kappa)
            p = explicit_product_assignment(base)
            assert census(base, p, 2).active_count == 0
            pattern = CouplingPattern.consecutive(memory_bound_girth6(gamma, kappa))
            h = build_sc_matrix(spread_edges(base, p, pattern), 10)
            assert tanner_girth(h, cap=12).at_least(6), (gamma, kappa)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5
    criterion(f"25 instances, girth >= 6 ({elapsed:.2f} s)")


def dominance_instances(limit=10**7):
    out = []
    for gamma in range(2, 8):
        for kappa in range(2, 8):
            m_t = memory_bound_girth6(gamma, kappa)
            while (m_t + 1) ** (gamma * kappa) <= limit:
                out.append((gamma, kappa, m_t))
                m_t += 1
    return out


def test_ac4_oracle_dominance(criterion):
    t0 = time.perf_counter()
    base = BaseGraph(2, 2)
    exact = exhaustive_count_valid(base, CouplingPattern((0, 1)), HarmfulStructureSet.girth6(base))
    assert exact == 10
    assert c4_counting_bound(2, 2, 1).bound == 8
    instances = dominance_instances()
    for gamma, kappa, m_t in instances:
        b = BaseGraph(gamma, kappa)
        exact = exhaustive_count_valid(b, CouplingPattern.consecutive(m_t), HarmfulStructureSet.girth6(b))
        assert exact >= c4_counting_bound(gamma, kappa, m_t).bound, (gamma, kappa, m_t)
    # shapes without 4-cycles: the bound is the whole grid and so is the count
    rng = random.Random(4)
    for gamma, kappa in [(1, 1), (1, 5), (4, 1), (1, 12)]:
        for m_t in rng.sample(range(0, 30), 5):
            if (m_t + 1) ** (gamma * kappa) > 10**7:
                continue
            b = BaseGraph(gamma, kappa)
            exact = exhaustive_count_valid(b, CouplingPattern.consecutive(m_t), HarmfulStructureSet.girth6(b))
            assert exact == c4_counting_bound(gamma, kappa, m_t).bound
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    criterion(f"(2,2): 10 >= 8; {len(instances)} enumerable instances dominate ({elapsed:.1f} s)")


def test_ac5_min_product_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    checked = 0
    for n in range(1, 9):
        for s in range(2, 6):
            for D in range(0, n * (s - 1) + 1):
                assert uniform_min_product(n, s, D) == min_grid_product_dp([s] * n, n * s - D), (n, s, D)
                checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    criterion(f"{checked} (n, s, D) triples ({elapsed:.2f} s)")


def test_ac6_monte_carlo_consistency(criterion):
    t0 = time.perf_counter()
    base = BaseGraph(3, 5)
    est = monte_carlo_fraction(base, CouplingPattern.consecutive(8), HarmfulStructureSet.girth6(base),
                               10**6, seed=20240601)
    lo, hi = est.wilson_interval
    elapsed = time.perf_counter() - t0
    assert hi >= 1 / 2187
    assert elapsed < 30
    criterion(f"fraction={est.fraction:.3e} 99% CI=[{lo:.3e}, {hi:.3e}] vs 1/2187={1 / 2187:.3e} ({elapsed:.1f} s)")


def test_ac7_clll_mt_comparison(criterion):
    rec = clll_mt_comparison(3, 5)
    assert rec.threshold_bound == 8
    assert (rec.m_clll, rec.m_mt) == (35, 37)
    checks = {
        "clll_feasible": (float(rec.clll_feasible_count), 4.14e9),
        "af_at_35": (float(rec.af_count_at_clll_memory), 3.68e22),
        "mt_diversity": (float(rec.mt_output_diversity), 1.11e23),
        "af_at_37": (float(rec.af_count_at_mt_memory), 1.05e23),
    }
    for name, (got, want) in checks.items():
        assert abs(got - want) / want < 0.01, name
    assert rec.af_count_at_clll_memory == 6 * 36**14
    assert rec.af_count_at_mt_memory == 8 * 38**14
    criterion("m=35, m=37; " + ", ".join(f"{k}={v[0]:.3e}" for k, v in checks.items()))


def test_ac8_girth_census_consistency(criterion):
    t0 = time.perf_counter()
    rng = random.Random(8)
    runs = 0
    for gamma in range(1, 5):
        for kappa in range(1, 5):
            base = BaseGraph(gamma, kappa)
            for m_t in (1, 2, 3):
                pattern = CouplingPattern.consecutive(m_t)
                for _ in range(20):
                    p = PartitionMatrix(tuple(tuple(rng.randint(0, m_t) for _ in range(kappa)) for _ in range(gamma)))
                    h = build_sc_matrix(spread_edges(base, p, pattern), 2 * pattern.m + 2)
                    predicted = min_active_cycle_length(base, p)
                    g = tanner_girth(h, cap=8)
                    if predicted is None:
                        assert not g.exact, (gamma, kappa, p)
                    else:
                        assert (g.value, g.exact) == (predicted, True), (gamma, kappa, p)
                    runs += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 120
    criterion(f"{runs} random spreadings agree ({elapsed:.1f} s)")


def test_ac9_constructive_realization(criterion):
    t0 = time.perf_counter()
    shapes = [(g, k) for g in range(1, 13) for k in range(1, 13) if g * k <= 12]
    for gamma, kappa in shapes:
        base = BaseGraph(gamma, kappa)
        hset = HarmfulStructureSet.girth6(base)
        pattern = CouplingPattern.consecutive(memory_bound_girth6(gamma, kappa))
        res = search_assignment(base, SearchConfig(pattern, hset))
        assert res.found, (gamma, kappa)
        assert verify_assignment(base, res.p, pattern, hset).ok
    base = BaseGraph(3, 4)
    m_t = memory_bound_girth8(3, 4)
    assert m_t == 18
    hset = HarmfulStructureSet.girth8(base)
    pattern = CouplingPattern.consecutive(m_t)
    res = search_assignment(base, SearchConfig(pattern, hset))
    assert res.found
    assert verify_assignment(base, res.p, pattern, hset).ok
    elapsed = time.perf_counter() - t0
    assert elapsed < 300
    criterion(f"{len(shapes)} girth-6 shapes + girth-8 (3,4) at m_t=18 ({elapsed:.2f} s)")
