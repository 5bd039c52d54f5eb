"""Sweeps of the bunkbed inequality over families of graphs, transversal sets and terminals."""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from .errors import DisconnectedTerminals, InvalidParameters, TooLarge
from .exact import (
    DEFAULT_CAP,
    MAX_CAP,
    as_rational,
    bunkbed_polynomials,
    default_grid,
    format_rational,
    verify_nonnegative_on_grid,
)
from .graph import Graph, all_labeled_trees, is_forest, random_forest, validate
from .montecarlo import estimate
from .reduction import certify_reduction

FAMILIES = ("all-labeled-trees", "random-forests", "explicit")
MODES = ("exact", "mc", "both")


@dataclass
class SweepSpec:
    family: dict
    transversals: dict = field(default_factory=lambda: {"kind": "all"})
    terminals: dict = field(default_factory=lambda: {"kind": "all"})
    grid: list[Fraction] = field(default_factory=default_grid)
    mode: str = "exact"
    reduction: bool = False
    mc: dict = field(default_factory=lambda: {"samples": 10000, "seed": 0, "confidence": 0.95})
    cap: int = DEFAULT_CAP
    workers: int = 1

    @classmethod
    def from_json(cls, doc: Any) -> "SweepSpec":
        if not isinstance(doc, dict):
            raise InvalidParameters("sweep spec must be a JSON object")
        unknown = set(doc) - {"family", "transversals", "terminals", "grid", "mode", "reduction", "mc", "cap", "workers"}
        if unknown:
            raise InvalidParameters(f"unknown sweep spec keys: {sorted(unknown)}")
        if "family" not in doc:
            raise InvalidParameters("sweep spec needs a 'family'")
        spec = cls(family=doc["family"])
        if "transversals" in doc:
            spec.transversals = doc["transversals"]
        if "terminals" in doc:
            spec.terminals = doc["terminals"]
        if "grid" in doc:
            spec.grid = [as_rational(x) for x in doc["grid"]]
        spec.mode = doc.get("mode", spec.mode)
        spec.reduction = bool(doc.get("reduction", False))
        if "mc" in doc:
            spec.mc = {**spec.mc, **doc["mc"]}
        spec.cap = doc.get("cap", spec.cap)
        spec.workers = doc.get("workers", spec.workers)
        spec.validate()
        return spec

    def validate(self) -> None:
        kind = self.family.get("kind") if isinstance(self.family, dict) else None
        if kind not in FAMILIES:
            raise InvalidParameters(f"family kind must be one of {FAMILIES}, got {kind!r}")
        required = {"all-labeled-trees": ("n",), "random-forests": ("n", "count", "seed"), "explicit": ("instances",)}
        missing = [key for key in required[kind] if key not in self.family]
        if missing:
            raise InvalidParameters(f"family {kind!r} is missing {missing}")
        if self.transversals.get("kind") == "random" and not {"count", "seed"} <= set(self.transversals):
            raise InvalidParameters("random transversal policy needs 'count' and 'seed'")
        if self.transversals.get("kind") not in ("all", "random", "explicit"):
            raise InvalidParameters(f"bad transversal policy {self.transversals!r}")
        if self.terminals.get("kind") not in ("all", "explicit"):
            raise InvalidParameters(f"bad terminal policy {self.terminals!r}")
        if not self.grid:
            raise InvalidParameters("p-grid must be nonempty")
        if any(not 0 < p < 1 for p in self.grid):
            raise InvalidParameters("p-grid values must lie in (0, 1)")
        if self.mode not in MODES:
            raise InvalidParameters(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.cap, int) or not 0 <= self.cap <= MAX_CAP:
            raise InvalidParameters(f"cap must be an integer in 0..{MAX_CAP}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise InvalidParameters("workers must be a positive integer")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "transversals": self.transversals,
            "terminals": self.terminals,
            "grid": [format_rational(p) for p in self.grid],
            "mode": self.mode,
            "reduction": self.reduction,
            "mc": self.mc,
            "cap": self.cap,
        }


def _child_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


def iter_graphs(family: dict) -> Iterator[Graph]:
    kind = family["kind"]
    if kind == "all-labeled-trees":
        sizes = family["n"] if isinstance(family["n"], list) else [family["n"]]
        for n in sizes:
            for tree in all_labeled_trees(n):
                yield tree.graph
    elif kind == "random-forests":
        n, k, count, seed = family["n"], family.get("k", 1), family["count"], family["seed"]
        for child in _child_seeds(seed, count):
            yield random_forest(n, k, child).graph
    else:
        for inst in family["instances"]:
            yield validate(inst["edges"], inst["n"])


def iter_transversals(policy: dict, g: Graph, index: int) -> Iterator[tuple[int, ...]]:
    kind = policy["kind"]
    if kind == "all":
        for bits in range(1 << g.n):
            yield tuple(v for v in g.vertices if bits >> (v - 1) & 1)
    elif kind == "random":
        rng = random.Random(_child_seeds(policy["seed"], index + 1)[index])
        for _ in range(policy["count"]):
            yield tuple(v for v in g.vertices if rng.random() < 0.5)
    else:
        for h in policy["sets"]:
            yield tuple(sorted(set(h)))


def iter_terminals(policy: dict, g: Graph) -> Iterator[tuple[int, int]]:
    if policy["kind"] == "all":
        for u in g.vertices:
            for v in range(u, g.n + 1):
                yield u, v
    else:
        for u, v in policy["pairs"]:
            yield u, v


def path_endpoints(g: Graph) -> tuple[int, int] | None:
    """The two ends of ``g`` if it is a single path through all vertices (``(1, 1)`` for n=1)."""
    if g.n == 1:
        return (1, 1)
    if g.m != g.n - 1 or not is_forest(g):
        return None
    degree = [0] * (g.n + 1)
    for a, b in g.edges:
        degree[a] += 1
        degree[b] += 1
    if max(degree) > 2:
        return None
    ends = [v for v in g.vertices if degree[v] == 1]
    return (ends[0], ends[1])


@dataclass
class _Outcome:
    """Everything learned about one graph."""

    instances: int = 0
    violations: list = field(default_factory=list)
    path_equalities: int = 0
    path_failures: list = field(default_factory=list)
    reductions: int = 0
    reduction_failures: list = field(default_factory=list)
    too_large: list = field(default_factory=list)
    mc_runs: int = 0
    mc_flags: list = field(default_factory=list)
    mc_misses: list = field(default_factory=list)


def _check_graph(index: int, g: Graph, spec: SweepSpec) -> _Outcome:
    out = _Outcome()
    forest = is_forest(g)
    ends = path_endpoints(g)
    mc_seeds = random.Random(f"{spec.mc.get('seed', 0)}:{index}")
    for h in iter_transversals(spec.transversals, g, index):
        for u, v in iter_terminals(spec.terminals, g):
            out.instances += 1
            where = {"graph": g.to_json(), "H": list(h), "u": u, "v": v}
            polys = None
            if spec.mode in ("exact", "both"):
                try:
                    same, cross = bunkbed_polynomials(g, h, u, v, spec.cap)
                except TooLarge as exc:
                    out.too_large.append({**where, "bits": exc.bits, "cap": exc.cap})
                    continue
                polys = (same, cross)
                report = verify_nonnegative_on_grid(same - cross, spec.grid)
                if not report.passed:
                    for p, value in report.values:
                        if value < 0:
                            out.violations.append({
                                **where,
                                "forest": forest,
                                "p": format_rational(p),
                                "same": format_rational(same(p)),
                                "cross": format_rational(cross(p)),
                                "difference": format_rational(value),
                            })
                if ends is not None and h and {u, v} == set(ends):
                    out.path_equalities += 1
                    if same != cross:
                        out.path_failures.append(where)
                if spec.reduction and forest:
                    try:
                        rep = certify_reduction(g, h, u, v, cap=spec.cap)
                    except DisconnectedTerminals:
                        pass
                    else:
                        out.reductions += 1
                        if not rep.passed:
                            out.reduction_failures.append(where)
            if spec.mode in ("mc", "both"):
                for p in spec.grid:
                    est = estimate(
                        g, h, u, v, float(p), int(spec.mc["samples"]), mc_seeds.getrandbits(64),
                        float(spec.mc.get("confidence", 0.95)),
                    )
                    out.mc_runs += 1
                    if est.mean_diff + 4 * est.ci_diff < 0:
                        out.mc_flags.append({**where, "p": format_rational(p), "estimate": est.to_json()})
                    if polys is not None:
                        exact_same, exact_cross = (float(x(p)) for x in polys)
                        if (abs(est.mean_same - exact_same) > 4 * est.ci_same
                                or abs(est.mean_cross - exact_cross) > 4 * est.ci_cross):
                            out.mc_misses.append({**where, "p": format_rational(p), "estimate": est.to_json()})
    return out


@dataclass
class SweepReport:
    spec: SweepSpec
    graphs_checked: int
    forests_checked: int
    instances_checked: int
    violations: list
    path_equality_count: int
    path_equality_failures: list
    reduction_count: int
    reduction_failures: list
    too_large: list
    mc_runs: int
    mc_flags: list
    mc_calibration_misses: list
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.path_equality_failures or self.reduction_failures)

    def to_json(self, timing: bool = False) -> dict:
        doc = {
            "spec": self.spec.to_json(),
            "graphs_checked": self.graphs_checked,
            "forests_checked": self.forests_checked,
            "instances_checked": self.instances_checked,
            "violations": self.violations,
            "path_equality_count": self.path_equality_count,
            "path_equality_failures": self.path_equality_failures,
            "reduction_certification_count": self.reduction_count,
            "reduction_failures": self.reduction_failures,
            "too_large": self.too_large,
            "mc_runs": self.mc_runs,
            "mc_flags": self.mc_flags,
            "mc_calibration_misses": self.mc_calibration_misses,
            "verdict": "PASS" if self.ok else "FAIL",
        }
        if timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc

    def summary(self) -> str:
        rows = [
            ("graphs", self.graphs_checked),
            ("forests", self.forests_checked),
            ("instances (G, H, u, v)", self.instances_checked),
            ("grid violations", len(self.violations)),
            ("path equalities checked", self.path_equality_count),
            ("path equality failures", len(self.path_equality_failures)),
            ("reductions certified", self.reduction_count),
            ("reduction failures", len(self.reduction_failures)),
            ("over enumeration cap", len(self.too_large)),
            ("monte carlo runs", self.mc_runs),
            ("monte carlo flags", len(self.mc_flags)),
            ("monte carlo calibration misses", len(self.mc_calibration_misses)),
            ("wall time (s)", f"{self.wall_time:.2f}"),
        ]
        width = max(len(name) for name, _ in rows)
        lines = [f"{name.ljust(width)}  {value}" for name, value in rows]
        lines.append(f"{'verdict'.ljust(width)}  {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepReport:
    """Check every (graph, H, u, v) in ``spec``; failures are collected, never raised."""
    spec.validate()
    start = time.perf_counter()
    graphs = list(iter_graphs(spec.family))
    jobs = list(enumerate(graphs))
    workers = workers or spec.workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda job: _check_graph(job[0], job[1], spec), jobs))
    else:
        outcomes = [_check_graph(i, g, spec) for i, g in jobs]

    def gather(name):
        return [item for o in outcomes for item in getattr(o, name)]

    return SweepReport(
        spec=spec,
        graphs_checked=len(graphs),
        forests_checked=sum(is_forest(g) for g in graphs),
        instances_checked=sum(o.instances for o in outcomes),
        violations=gather("violations"),
        path_equality_count=sum(o.path_equalities for o in outcomes),
        path_equality_failures=gather("path_failures"),
        reduction_count=sum(o.reductions for o in outcomes),
        reduction_failures=gather("reduction_failures"),
        too_large=gather("too_large"),
        mc_runs=sum(o.mc_runs for o in outcomes),
        mc_flags=gather("mc_flags"),
        mc_calibration_misses=gather("mc_misses"),
        wall_time=time.perf_counter() - start,
    )


def replay_violation(witness: dict, cap: int = DEFAULT_CAP) -> bool:
    """Recompute a reported violation exactly; True iff every stored value is reproduced."""
    g = validate(witness["graph"]["edges"], witness["graph"]["n"])
    same, cross = bunkbed_polynomials(g, witness["H"], witness["u"], witness["v"], cap)
    p = as_rational(witness["p"])
    return (
        format_rational(same(p)) == witness["same"]
        and format_rational(cross(p)) == witness["cross"]
        and format_rational(same(p) - cross(p)) == witness["difference"]
    )
