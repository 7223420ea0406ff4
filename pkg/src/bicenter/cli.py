"""Command-line front end: ``solve``, ``gen`` and ``verify``.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 internal failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .generate import KINDS, random_instance, random_rectangle_sets
from .model import EdgePoint, Instance, InstanceError, Scalar, Solution, objective
from .oracle import OracleTooLarge, oracle_pierce, oracle_solve
from .piercing import pierce
from .solve import SOLVERS, SolverMismatch, has_common_weight, solve
from .textio import format_instance, read_instance

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _fraction_json(x: Scalar) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def _decimal(x: Scalar, digits: int = 12) -> str:
    f = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(f.numerator) / Decimal(f.denominator)
    return format(d.normalize(), "f") if d == d.to_integral_value() else format(d, "g")


def _rational(x: Scalar) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _point_json(instance: Instance, p: EdgePoint) -> dict:
    u, v, _ = instance.graph.edges[p.edge]
    return {"u": u, "v": v, "t": _fraction_json(p.t)}


def solution_json(instance: Instance, sol: Solution) -> dict:
    """Stable machine-readable report; ``assignment`` lists the vertex of each pair served by q1."""
    return {
        "lambda": _fraction_json(sol.lam),
        "q1": _point_json(instance, sol.q1),
        "q2": _point_json(instance, sol.q2),
        "assignment": list(sol.assignment),
        "solver": sol.solver,
    }


def point_from_json(instance: Instance, data: dict) -> EdgePoint:
    e = instance.graph.find_edge(data["u"], data["v"])
    t = Fraction(data["t"]["num"], data["t"]["den"])
    return EdgePoint(e, t.numerator if t.denominator == 1 else t)


def reevaluate(instance: Instance, report: dict) -> Scalar:
    """objective() of a parsed JSON report."""
    q1 = point_from_json(instance, report["q1"])
    q2 = point_from_json(instance, report["q2"])
    return objective(instance, q1, q2, tuple(report["assignment"]))


def solution_text(instance: Instance, sol: Solution) -> str:
    lines = [f"solver: {sol.solver}", f"lambda: {_rational(sol.lam)} ({_decimal(sol.lam)})"]
    for name, p in (("q1", sol.q1), ("q2", sol.q2)):
        u, v, length = instance.graph.edges[p.edge]
        lines.append(f"{name}: edge {u}-{v} (length {_rational(length)}) at offset "
                     f"{_rational(p.t)} from {u}")
    lines.append("assignment:")
    for (v, u), x in zip(instance.pairs, sol.assignment):
        y = u if x == v else v
        lines.append(f"  pair ({v}, {u}): {x} -> q1, {y} -> q2")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    try:
        instance = read_instance(args.file)
        sol = solve(instance, args.solver)
    except (OSError, ValueError) as exc:
        # InstanceFormatError and InstanceError are both ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "json":
        print(json.dumps(solution_json(instance, sol), sort_keys=True))
    else:
        print(solution_text(instance, sol))
    return EXIT_OK


# --------------------------------------------------------------------------
# gen


def parse_range(text: str) -> Tuple[int, int]:
    """'a..b' (or a single integer) as an inclusive integer range."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            a = b = int(parts[0])
        elif len(parts) == 2:
            a, b = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 1..5, got {text!r}") from None
    return a, b


def cmd_gen(args) -> int:
    try:
        instance = random_instance(args.seed, args.n, args.kind, args.m, args.weights, args.lengths)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = format_instance(instance, f"seed {args.seed}, kind {args.kind}")
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def verify_instance(seed: int, max_n: int = 8) -> Instance:
    """The instance checked for ``seed``: small, alternating trees and general graphs."""
    rng = random.Random(seed)
    lo = min(4, max_n)
    n = rng.randint(lo, max_n)
    kind = KINDS[seed % 2]
    m = None
    if kind == "connected-graph":
        m = rng.randint(n - 1, max(n - 1, min(12, n * (n - 1) // 2)))
    weights = (1, 1) if seed % 3 == 0 else (0, 5)
    return random_instance(seed, n, kind, m, weights=weights, lengths=(1, 9))


def applicable_solvers(instance: Instance) -> List[str]:
    out = ["graph"]
    if instance.is_tree:
        out.append("tree")
        if has_common_weight(instance):
            out.append("tree-unweighted")
    return out


def check_seed(seed: int, max_n: int = 8) -> Tuple[int, bool, str]:
    """Run one seed; returns (seed, ok, report line or counterexample)."""
    instance = verify_instance(seed, max_n)
    expected = oracle_solve(instance)
    problems = []
    for name in applicable_solvers(instance):
        try:
            got = solve(instance, name).lam
        except (SolverMismatch, RuntimeError, InstanceError) as exc:
            problems.append(f"{name} failed: {exc}")
            continue
        if got != expected:
            problems.append(f"{name} gave {_rational(got)}, oracle {_rational(expected)}")
    box, sets = random_rectangle_sets(seed)
    hit, ref = pierce(box, sets), oracle_pierce(box, sets)
    if (hit is None) != (ref is None):
        problems.append(f"pierce verdict {hit} but oracle {ref}")
    elif hit is not None and not all(s.hit(*hit) for s in sets):
        problems.append(f"pierce point {hit} misses a family")
    head = (f"seed {seed}: n={instance.n} m={instance.m} k={instance.k} "
            f"lambda={_rational(expected)}")
    if not problems:
        return seed, True, head + " ok"
    body = [head + " MISMATCH"] + [f"  {p}" for p in problems]
    body.append("  counterexample:")
    body.extend("    " + line for line in format_instance(instance).splitlines())
    body.append(f"  rectangles: box={box} sets={sets}")
    return seed, False, "\n".join(body)


def run_verify(seeds: Sequence[int], max_n: int = 8, jobs: int = 1, out=None) -> int:
    out = out or sys.stdout
    if jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_seed, seeds, [max_n] * len(seeds)))
    else:
        results = [check_seed(s, max_n) for s in seeds]
    bad = []
    for seed, ok, text in sorted(results):
        print(text, file=out)
        if not ok:
            bad.append(seed)
    print(f"{len(results)} cases, {len(bad)} mismatches", file=out)
    if bad:
        print("reproduce with: " + ", ".join(f"--seeds {s}..{s}" for s in bad), file=out)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = args.seeds
    if args.max_n < 2:
        print("error: --max-n must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return run_verify(list(range(a, b + 1)), args.max_n, args.jobs)
    except OracleTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicenter", description="Weighted bichromatic two-center solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--solver", choices=SOLVERS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--deterministic", action="store_true",
                   help="accepted for compatibility; solving is always sequential and reproducible")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--weights", type=parse_range, default=(1, 5))
    p.add_argument("--lengths", type=parse_range, default=(1, 9))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="cross-check every solver against the oracles")
    p.add_argument("--seeds", type=parse_range, required=True)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
