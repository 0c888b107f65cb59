"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 rejected by a size guard.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path
from xml.sax.saxutils import escape

from . import io
from .convex import maximize_convex, maximize_convex_variant
from .core import (
    DEFAULT_BRUTE_FORCE_CAP,
    Instance,
    InstanceError,
    Objective,
    OracleCounter,
    ScaleError,
    best_point,
    brute_force_solve,
    parse_p,
    quadratic_distance,
)
from .fiber import FiberEmpty, NonIntegralVertex
from .generators import specified_decision, subset_sum_instance, three_dm_instance
from .norms import max_norm, min_norm
from .polytope import multiobjective_polytope
from .randomized import DEFAULT_CAP_EVALS, randomized_solve

EXIT_OK, EXIT_INVALID, EXIT_SCALE = 0, 2, 3

MARKER_CLASSES = ("infeasible", "feasible-non-vertex", "vertex", "optimal-vertex")


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def _hull_order(points):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def render_polytope_svg(instance: Instance, path, objective: Objective | None = None) -> str:
    """Draw the grid box of a d = 2 instance with one classed marker per point.

    Marker classes: ``infeasible``, ``feasible-non-vertex``, ``vertex`` and
    ``optimal-vertex`` (the oracle-best vertex).  Each marker also carries
    ``data-y1``/``data-y2``.  Returns the SVG text and writes it to ``path``.
    """
    if instance.d != 2:
        raise InstanceError(f"polytope rendering needs d = 2, got d = {instance.d}")
    objective = objective or quadratic_distance((0, 0))
    poly = multiobjective_polytope(instance)
    feasible, vertices = set(poly.feasible), set(poly.vertices)
    optimal = best_point(objective, vertices)
    (s1, s2), (t1, t2) = poly.bounds.s, poly.bounds.t
    cell, pad = 60, 50
    width = (t1 - s1) * cell + 2 * pad
    height = (t2 - s2) * cell + 2 * pad

    def xy(y):
        return pad + (y[0] - s1) * cell, height - pad - (y[1] - s2) * cell

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect class="background" x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if len(vertices) >= 3:
        pts = " ".join("{},{}".format(*xy(v)) for v in _hull_order(sorted(vertices)))
        out.append(f'<polygon class="hull" points="{pts}" fill="#eef" stroke="#88a"/>')
    elif len(vertices) == 2:
        (a, b) = sorted(vertices)
        out.append('<line class="hull" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#88a"/>'.format(*xy(a), *xy(b)))
    for y in poly.bounds.points():
        x0, y0 = xy(y)
        attrs = f'data-y1="{y[0]}" data-y2="{y[1]}"'
        if y == optimal:
            out.append(f'<rect class="optimal-vertex" {attrs} x="{x0 - 8}" y="{y0 - 8}" '
                       f'width="16" height="16" fill="red"/>')
        elif y in vertices:
            out.append(f'<rect class="vertex" {attrs} x="{x0 - 7}" y="{y0 - 7}" width="14" height="14" '
                       f'fill="green" transform="rotate(45 {x0} {y0})"/>')
        elif y in feasible:
            out.append(f'<circle class="feasible-non-vertex" {attrs} cx="{x0}" cy="{y0}" r="7" fill="blue"/>')
        else:
            out.append(f'<circle class="infeasible" {attrs} cx="{x0}" cy="{y0}" r="4" '
                       f'fill="none" stroke="gray"/>')
        label = io.encode_value(objective.value(y))
        out.append(f'<text class="label" x="{x0 + 9}" y="{y0 - 9}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _read_instance(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return io.instance_from_json(io.loads(text))


def _objective(args, objective: Objective | None) -> Objective:
    if objective is None:
        raise InstanceError("objective: missing (required by this subcommand)")
    if getattr(args, "sense", None):
        objective = objective.with_sense(args.sense)
    return objective


def _emit(args, doc):
    text = io.dumps(doc)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _solve(args, method: str):
    instance, objective = _read_instance(args.instance)
    objective = _objective(args, objective)
    counter = OracleCounter()
    extra = {}
    if method == "full":
        rep = maximize_convex(instance, objective, counter)
        m, y, extra["fibers_tested"] = rep.matching, rep.projection, rep.fibers_tested
        name = "convex"
    elif method == "variant":
        rep = maximize_convex_variant(instance, objective, counter)
        m, y = rep.matching, rep.projection
        extra["fibers_tested"] = rep.fibers_tested
        extra["tested"] = [list(p) for p in rep.tested]
        name = "convex-variant"
    else:
        m, y = brute_force_solve(instance, objective, args.cap, counter)
        name = "brute-force"
    _emit(args, io.result_to_json(instance, m, y, method=name, oracle_queries=counter.queries,
                                  objective=objective, **extra))


def cmd_solve_convex(args):
    _solve(args, "full")


def cmd_solve_convex_variant(args):
    _solve(args, "variant")


def cmd_brute_force(args):
    _solve(args, "brute")


def _norm(args, solver, sense):
    instance, objective = _read_instance(args.instance)
    if args.p is not None:
        p = parse_p(args.p)
    elif objective is not None and objective.kind == "lp_norm":
        p = objective.p
    else:
        raise InstanceError("p: give --p or an lp_norm objective")
    counter = OracleCounter()
    rep = solver(instance, p, counter)
    obj = Objective("lp_norm", sense=sense, p=p)
    _emit(args, io.result_to_json(
        instance, rep.matching, rep.projection, method=f"{sense}-norm",
        oracle_queries=counter.queries, objective=obj, p=io.encode_p(p),
        powered_ratio=rep.powered_ratio, ratio=rep.ratio,
    ))


def cmd_min_norm(args):
    _norm(args, min_norm, "min")


def cmd_max_norm(args):
    _norm(args, max_norm, "max")


def cmd_solve_random(args):
    instance, objective = _read_instance(args.instance)
    objective = _objective(args, objective)
    counter = OracleCounter()
    rep = randomized_solve(instance, objective, random.Random(args.seed), trials=args.trials,
                           counter=counter, cap_evals=args.cap_evals)
    _emit(args, io.result_to_json(instance, rep.matching, rep.projection, method="random",
                                  oracle_queries=counter.queries, objective=objective,
                                  seed=args.seed, trials=rep.trials))


def cmd_polytope(args):
    instance, objective = _read_instance(args.instance)
    poly = multiobjective_polytope(instance)
    doc = {
        "s": list(poly.bounds.s),
        "t": list(poly.bounds.t),
        "grid_points": poly.bounds.size,
        "feasible": [list(y) for y in poly.feasible],
        "vertices": [list(y) for y in poly.vertices],
    }
    if args.out:
        if args.sense and objective is not None:
            objective = objective.with_sense(args.sense)
        render_polytope_svg(instance, args.out, objective)
        doc["svg"] = str(args.out)
    sys.stdout.write(io.dumps(doc))


def _parse_vector(text: str, name: str) -> tuple:
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise InstanceError(f"{name}: expected comma-separated integers, got {text!r}") from None


def cmd_decide(args):
    instance, _ = _read_instance(args.instance)
    target = _parse_vector(args.target, "target")
    if args.seed is None:
        ans = specified_decision(instance, target, "exact", cap=args.cap)
    else:
        ans = specified_decision(instance, target, "randomized", seed=args.seed,
                                 cap_evals=args.cap_evals)
    doc = {"target": list(target), "decision": ans.value,
           "mode": "exact" if args.seed is None else "randomized"}
    if args.seed is not None:
        doc["seed"] = args.seed
    _emit(args, doc)


def cmd_gen_subset_sum(args):
    if len(args.values) < 2:
        raise InstanceError("values: need a0 followed by at least one a_i")
    a0, rest = args.values[0], args.values[1:]
    instance, target = subset_sum_instance(a0, rest)
    objective = quadratic_distance(target, "min")
    _emit(args, io.instance_to_json(instance, objective, target=list(target)))


def cmd_gen_3dm(args):
    if args.tensor:
        doc = io.loads(Path(args.tensor).read_text() if args.tensor != "-" else sys.stdin.read())
        x = doc.get("x") if isinstance(doc, dict) else doc
        if not isinstance(x, list):
            raise InstanceError("x: expected an n x n x n nested list")
    elif args.random is not None:
        rng = random.Random(args.seed)
        n = args.random
        if n < 1:
            raise InstanceError("--random: n must be positive")
        x = [[[rng.randint(0, 1) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    else:
        raise InstanceError("give a tensor file or --random N")
    instance, target = three_dm_instance(x)
    objective = quadratic_distance(target, "min")
    _emit(args, io.instance_to_json(instance, objective, target=list(target), x=x))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonlinear-matching",
        description="Nonlinear bipartite matching solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_instance(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("instance", help="instance JSON file, or - for stdin")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.set_defaults(func=func)
        return p

    for name, func, help in [
        ("solve-convex", cmd_solve_convex, "maximize a convex objective via polytope vertices"),
        ("solve-convex-variant", cmd_solve_convex_variant, "maximize a convex objective by grid scan"),
        ("brute-force", cmd_brute_force, "enumerate all matchings"),
    ]:
        p = with_instance(name, func, help)
        p.add_argument("--sense", choices=("max", "min"))
        p.add_argument("--cap", type=int, default=DEFAULT_BRUTE_FORCE_CAP, help=argparse.SUPPRESS)

    for name, func in [("min-norm", cmd_min_norm), ("max-norm", cmd_max_norm)]:
        p = with_instance(name, func, f"approximate lp-norm {name.split('-')[0]}imization")
        p.add_argument("--p", help="positive integer or 'inf'")

    p = with_instance("solve-random", cmd_solve_random, "randomized solver for any objective")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=None, help="repetitions (default n)")
    p.add_argument("--sense", choices=("max", "min"))
    p.add_argument("--cap-evals", type=int, default=DEFAULT_CAP_EVALS)

    p = with_instance("polytope", cmd_polytope, "grid bounds, feasible points and vertices")
    p.add_argument("--sense", choices=("max", "min"))
    # --out is the SVG path here (d = 2 only)

    p = with_instance("decide", cmd_decide, "is there a matching with the given projection")
    p.add_argument("--target", required=True, help="comma-separated integers")
    p.add_argument("--seed", type=int, help="use the randomized test with this seed")
    p.add_argument("--cap", type=int, default=DEFAULT_BRUTE_FORCE_CAP)
    p.add_argument("--cap-evals", type=int, default=DEFAULT_CAP_EVALS)

    p = sub.add_parser("gen-subset-sum", help="instance from a subset-sum question a0; a1..am")
    p.add_argument("values", type=int, nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_subset_sum)

    p = sub.add_parser("gen-3dm", help="instance from a binary n x n x n tensor")
    p.add_argument("tensor", nargs="?", help="JSON file with {'x': tensor}")
    p.add_argument("--random", type=int, metavar="N", help="draw a uniform binary tensor instead")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_3dm)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INVALID
    try:
        args.func(args)
    except ScaleError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCALE
    except (InstanceError, FiberEmpty, NonIntegralVertex, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
