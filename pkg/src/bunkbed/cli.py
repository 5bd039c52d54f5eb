"""Command-line interface: ``bunkbed {exact,mc,path-check,reduce,verify,gen}``.

Output is JSON unless ``--pretty`` is given. Exit codes: 0 success or
verified, 1 violation found, 2 usage or validation error, 3 enumeration cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import BunkbedError, DisconnectedTerminals, InvalidParameters, TooLarge, ValidationError
from .exact import DEFAULT_CAP, as_rational, bunkbed_polynomials, default_grid, format_rational
from .graph import random_forest, validate
from .montecarlo import estimate
from .path import PathInstance, check_path_equality, check_path_factorization
from .reduction import certify_reduction
from .verifier import SweepSpec, run_sweep

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameters(f"cannot read JSON from {path}: {exc}") from None


def load_instance(path: str, need_terminals: bool = True) -> dict:
    doc = _read_json(path)
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise InvalidParameters("instance file needs 'n' and 'edges'")
    g = validate(doc["edges"], doc["n"])
    inst = {"graph": g, "H": tuple(sorted(set(doc.get("H", []))))}
    if need_terminals:
        if "u" not in doc or "v" not in doc:
            raise InvalidParameters("instance file needs terminals 'u' and 'v'")
        inst["u"], inst["v"] = doc["u"], doc["v"]
    return inst


def _emit(doc: dict, text: str | None, args) -> None:
    if args.pretty and text is not None:
        print(text)
    else:
        print(json.dumps(doc, indent=2))


def cmd_exact(args) -> int:
    inst = load_instance(args.instance)
    g, h, u, v = inst["graph"], inst["H"], inst["u"], inst["v"]
    grid = [as_rational(x) for x in args.p] if args.p else default_grid()
    for p in grid:
        if not 0 <= p <= 1:
            raise InvalidParameters(f"p must lie in [0, 1], got {format_rational(p)}")
    same, cross = bunkbed_polynomials(g, h, u, v, args.cap, args.threads)
    diff = same - cross
    values = []
    for p in grid:
        s, c = same(p), cross(p)
        values.append({
            "p": format_rational(p),
            "same": format_rational(s),
            "cross": format_rational(c),
            "difference": format_rational(s - c),
        })
    ok = all(same(p) >= cross(p) for p in grid)
    doc = {
        "instance": {**g.to_json(), "H": list(h), "u": u, "v": v},
        "same": same.to_json(),
        "cross": cross.to_json(),
        "difference": diff.to_json(),
        "values": values,
        "verdict": "PASS" if ok else "FAIL",
    }
    lines = [f"P(u+~v+) counts {list(same.counts)}", f"P(u+~v-) counts {list(cross.counts)}"]
    lines += [f"p={r['p']}: same={r['same']} cross={r['cross']} difference={r['difference']}" for r in values]
    lines.append(doc["verdict"])
    _emit(doc, "\n".join(lines), args)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_mc(args) -> int:
    inst = load_instance(args.instance)
    est = estimate(
        inst["graph"], inst["H"], inst["u"], inst["v"], args.p, args.samples, args.seed,
        args.confidence, args.threads,
    )
    doc = est.to_json()
    text = (
        f"same  {est.mean_same:.6f} ± {est.ci_same:.6f}\n"
        f"cross {est.mean_cross:.6f} ± {est.ci_cross:.6f}\n"
        f"diff  {est.mean_diff:.6f} ± {est.ci_diff:.6f}"
    )
    _emit(doc, text, args)
    return EXIT_OK


def _parse_labels(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InvalidParameters(f"not a label list: {text!r}") from None


def cmd_path_check(args) -> int:
    inst = PathInstance(args.n, _parse_labels(args.H))
    fact = check_path_factorization(inst, args.cap)
    eq = check_path_equality(inst, args.cap)
    ok = fact.passed and eq.passed
    doc = {"factorization": fact.to_json(), "equality": eq.to_json(), "verdict": "PASS" if ok else "FAIL"}
    lines = [f"n={inst.n} H={list(inst.h)} m={fact.m} factor p^{inst.n - fact.m}"]
    lines += [f"  {name}: {'PASS' if passed else 'FAIL'}" for name, passed in fact.links.items()]
    lines.append(f"  same == cross: {'PASS' if eq.passed else 'FAIL'}")
    _emit(doc, "\n".join(lines), args)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_reduce(args) -> int:
    inst = load_instance(args.instance)
    masks = None
    if args.outside_config is not None:
        try:
            masks = [int(args.outside_config, 16)]
        except ValueError:
            raise InvalidParameters(f"not a hexadecimal mask: {args.outside_config!r}") from None
    report = certify_reduction(inst["graph"], inst["H"], inst["u"], inst["v"], masks=masks, cap=args.cap)
    doc = report.to_json()
    lines = [f"ell={doc['ell']} path={doc['path']} H={doc['H']}", "outside  H'  containment equivalence conditional"]
    for row in doc["rows"]:
        lines.append(
            f"{row['outside_config']:>7}  {row['h_prime']}  {row['containment']} {row['equivalence']} "
            f"{row['conditional_equality']}"
        )
    if doc["tower"] is not None:
        lines.append(f"tower: same={doc['tower']['same']} cross={doc['tower']['cross']}")
    lines.append(doc["verdict"])
    _emit(doc, "\n".join(lines), args)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_verify(args) -> int:
    spec = SweepSpec.from_json(_read_json(args.spec))
    report = run_sweep(spec, workers=args.threads)
    doc = report.to_json(timing=args.timing)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    _emit(doc, report.summary(), args)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_gen(args) -> int:
    forest = random_forest(args.n, args.components, args.seed)
    doc = forest.graph.to_json()
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bunkbed", description="Bunkbed percolation verification tools")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker count (results do not depend on it)")
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact same-level and cross-level probabilities")
    p.add_argument("instance", help="instance JSON file ('-' for stdin)")
    p.add_argument("--p", action="append", help="rational probability such as 1/3 or 0.25; repeatable")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max layer edges to enumerate")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("mc", help="paired Monte Carlo estimate")
    p.add_argument("instance")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--confidence", type=float, default=0.95)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("path-check", help="check the path identities on P_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--H", required=True, help="comma-separated transversal labels")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_path_check)

    p = sub.add_parser("reduce", help="certify the forest-to-path reduction")
    p.add_argument("instance")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--outside-config", help="hexadecimal mask over the outside layer edges")
    group.add_argument("--all", action="store_true", help="every outside configuration (the default)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run a sweep described by a JSON spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", help="also write the report here")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random forest instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--components", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DisconnectedTerminals as exc:
        print(f"error: {exc}; both connection probabilities are 0", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, BunkbedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
