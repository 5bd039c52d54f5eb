"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` and read the ``acceptance`` block of
the terminal summary, which prints one PASS/FAIL line per criterion.
"""

import itertools
import json
import random
from fractions import Fraction

import pytest

from bunkbed.exact import as_rational, bunkbed_polynomials, default_grid, verify_nonnegative_on_grid
from bunkbed.graph import all_labeled_trees, path_graph, random_forest, random_tree, validate
from bunkbed.montecarlo import estimate
from bunkbed.path import PathInstance, check_path_equality, check_path_factorization
from bunkbed.reduction import certify_reduction, verify_tower
from bunkbed.verifier import SweepSpec, run_sweep

RESULTS: dict[str, tuple[bool, str]] = {}


def record(name, ok, detail):
    RESULTS[name] = (ok, detail)
    assert ok, f"{name}: {detail}"


def nonempty_subsets(n):
    labels = range(1, n + 1)
    return [c for r in range(1, n + 1) for c in itertools.combinations(labels, r)]


def all_subsets(n):
    return [()] + nonempty_subsets(n)


def small_trees(limit=5):
    for n in range(1, limit + 1):
        yield from (t.graph for t in all_labeled_trees(n))


def test_criterion_1_path_equality():
    checked = failures = 0
    for n in range(1, 8):
        for h in nonempty_subsets(n):
            checked += 1
            failures += not check_path_equality(PathInstance(n, h)).passed
    record("1 path equality", failures == 0 and checked == sum(2**n - 1 for n in range(1, 8)), f"{checked} instances, {failures} unequal")


def test_criterion_2_path_factorization():
    checked = failures = 0
    for n in range(1, 8):
        for h in nonempty_subsets(n):
            checked += 1
            failures += not check_path_factorization(PathInstance(n, h)).passed
    record("2 path factorization", failures == 0, f"{checked} instances x 3 links, {failures} failing")


def test_criterion_3_forest_inequality():
    grid = default_grid()
    trees = instances = violations = 0
    for g in small_trees():
        trees += 1
        for h in all_subsets(g.n):
            for u in range(1, g.n + 1):
                for v in range(u, g.n + 1):
                    instances += 1
                    same, cross = bunkbed_polynomials(g, h, u, v)
                    violations += not verify_nonnegative_on_grid(same - cross, grid).passed
    assert trees == 1 + 1 + 3 + 16 + 125
    record("3 forest inequality", violations == 0, f"{trees} trees, {instances} instances, {violations} violations")


@pytest.mark.slow
def test_criterion_4_reduction_certification():
    instances = configs = failures = 0
    tower_checks = 0
    for g in small_trees():
        for h in all_subsets(g.n):
            for u in range(1, g.n + 1):
                for v in range(u, g.n + 1):
                    report = certify_reduction(g, h, u, v)
                    instances += 1
                    configs += len(report.records)
                    ok = report.passed and report.full_sweep and report.tower_ok
                    failures += not ok
    # the standalone tower check, on every tree with n <= 4 and a sample at n = 5
    rng = random.Random(4)
    for g in small_trees(4):
        for h in all_subsets(g.n):
            u, v = 1, g.n
            tower_checks += 1
            failures += not verify_tower(g, h, u, v).passed
    for _ in range(200):
        g = random_tree(5, rng.randrange(2**32)).graph
        h = tuple(x for x in range(1, 6) if rng.random() < 0.5)
        u, v = sorted(rng.sample(range(1, 6), 2))
        tower_checks += 1
        failures += not verify_tower(g, h, u, v).passed
    record(
        "4 reduction certification",
        failures == 0,
        f"{instances} instances, {configs} outside configurations, {tower_checks} standalone towers, {failures} failing",
    )


def calibration_instances():
    rng = random.Random(20241015)
    out = []
    for i in range(20):
        n = rng.randint(2, 6)
        k = rng.randint(1, 2) if n > 2 else 1
        g = random_forest(n, k, rng.randrange(2**32)).graph
        # every fourth instance has no transversal edges
        h = () if i % 4 == 0 else tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n))))
        u, v = rng.sample(range(1, n + 1), 2)
        out.append((g, h, u, v, rng.randrange(2**32)))
    return out


def test_criterion_5_mc_calibration():
    runs = misses = 0
    empty_h_nonzero = 0
    worst = 0.0
    for g, h, u, v, seed in calibration_instances():
        same, cross = bunkbed_polynomials(g, h, u, v)
        for p in (0.3, 0.5, 0.7):
            est = estimate(g, h, u, v, p, 100_000, seed)
            q = as_rational(p)
            exact = {"same": float(same(q)), "cross": float(cross(q)), "diff": float(same(q) - cross(q))}
            for key, mean, half in (
                ("same", est.mean_same, est.ci_same),
                ("cross", est.mean_cross, est.ci_cross),
                ("diff", est.mean_diff, est.ci_diff),
            ):
                runs += 1
                err = abs(mean - exact[key])
                if err > 4 * half:
                    misses += 1
                elif half > 0:
                    worst = max(worst, err / half)
            if not h and (est.mean_cross != 0 or est.hits_cross != 0):
                empty_h_nonzero += 1
    record(
        "5 monte carlo calibration",
        misses == 0 and empty_h_nonzero == 0,
        f"{runs} estimates, {misses} outside 4 half-widths (worst {worst:.2f}), "
        f"{empty_h_nonzero} nonzero cross means with empty H",
    )


def test_criterion_6_degenerate_cases():
    graphs = list(small_trees(4)) + [
        validate([[1, 2], [3, 4]], 4),
        validate([[1, 2], [2, 3], [1, 3]], 3),
        validate([[1, 2], [3, 4], [4, 5]], 6),
        path_graph(1),
    ]
    problems = []
    checks = 0
    for g in graphs:
        comps = {x: i for i, comp in enumerate(g.components()) for x in comp}
        for h in all_subsets(g.n):
            for u in range(1, g.n + 1):
                for v in range(1, g.n + 1):
                    same, cross = bunkbed_polynomials(g, h, u, v)
                    if not h:
                        checks += 1
                        if not cross.is_zero:
                            problems.append(("cross with empty H", g.edges, h, u, v))
                    if comps[u] != comps[v]:
                        checks += 1
                        if not (same.is_zero and cross.is_zero):
                            problems.append(("disconnected", g.edges, h, u, v))
                    if u == v:
                        checks += 1
                        if not same.is_one:
                            problems.append(("u = v", g.edges, h, u, v))
    record("6 degenerate cases", not problems, f"{checks} identity checks, {len(problems)} failing")


def test_criterion_7_determinism():
    doc = {
        "family": {"kind": "random-forests", "n": 6, "k": 2, "count": 12, "seed": 99},
        "transversals": {"kind": "random", "count": 3, "seed": 7},
        "mode": "both",
        "reduction": True,
        "mc": {"samples": 3000, "seed": 11},
    }
    sweeps = {json.dumps(run_sweep(SweepSpec.from_json(doc), workers=w).to_json()) for w in (1, 2, 3, 8, 1)}
    trees = {json.dumps(run_sweep(SweepSpec.from_json({"family": {"kind": "all-labeled-trees", "n": 4}}),
                                  workers=w).to_json()) for w in (1, 4)}
    g = validate([[1, 2], [2, 3], [2, 4], [4, 5], [5, 6]], 6)
    mcs = {json.dumps(estimate(g, (3, 6), 1, 6, 0.5, 50_001, 2024, workers=w).to_json()) for w in (1, 2, 5, 16)}
    ok = len(sweeps) == len(trees) == len(mcs) == 1
    record("7 determinism", ok, f"distinct outputs: sweep {len(sweeps)}, tree sweep {len(trees)}, mc {len(mcs)}")


def test_exact_values_are_rational():
    # guard for criteria 3 and 5: grid points are exact tenths, not binary floats
    assert default_grid()[2] == Fraction(3, 10)
    assert as_rational(0.3) == Fraction(3, 10)
