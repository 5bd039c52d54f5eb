"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from bunkbed import kernels
from bunkbed.graph import path_graph, validate
from bunkbed.model import build_bunkbed
from bunkbed.montecarlo import open_threshold


def exact_case(g, h, u, v):
    bb = build_bunkbed(g, h)
    free = bb.layer_edges
    base = bb.transversal_edges
    return (
        bb.num_vertices + 1,
        [a for a, _ in free], [b for _, b in free],
        [a for a, _ in base], [b for _, b in base],
        bb.upper(u), bb.upper(v), bb.lower(v),
    )


def mc_case(g, h, u, v, samples):
    args = exact_case(g, h, u, v)
    return (*args, 12345, 0, samples, open_threshold(0.5))


CASES = {
    "exact path n=7 (12 edges)": ("count_connections", exact_case(path_graph(7), (2, 5), 1, 7)),
    "exact tree n=9 (16 edges)": (
        "count_connections",
        exact_case(validate([[1, 2], [2, 3], [2, 4], [4, 5], [4, 6], [6, 7], [7, 8], [7, 9]], 9), (3, 7), 1, 9),
    ),
    "mc tree n=9, 20000 samples": (
        "mc_counts",
        mc_case(validate([[1, 2], [2, 3], [2, 4], [4, 5], [4, 6], [6, 7], [7, 8], [7, 9]], 9), (3, 7), 1, 9, 20_000),
    ),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(sorted(backends))}")
    print(f"{'case':32} " + " ".join(f"{name:>12}" for name in sorted(backends)) + "   speedup")
    for label, (func, call_args) in CASES.items():
        times = {}
        results = set()
        for name, module in sorted(backends.items()):
            fn = getattr(module, func)
            times[name] = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
            results.add(repr(fn(*call_args)))
        assert len(results) == 1, f"backends disagree on {label}"
        speed = f"{times['python'] / times['cython']:8.1f}x" if len(times) == 2 else "       -"
        print(f"{label:32} " + " ".join(f"{times[n]:11.4f}s" for n in sorted(times)) + f"  {speed}")


if __name__ == "__main__":
    main()
