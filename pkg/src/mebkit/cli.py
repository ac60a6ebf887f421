"""Command-line interface: solver dispatch, instance generation, JSON reports.

One invocation produces exactly one RunReport (JSON) on stdout or --output.
Exit codes: 0 ok, 1 usage, 2 input, 3 computation guard / convergence.
Errors still emit a full report whose result payload is {"error": ...}.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .convexity import (
    AABox,
    dist_to_hull,
    barycentric_circumradius,
    caratheodory_reduce,
    fractional_helly_beta,
    helly_check_boxes,
    jung_bound,
    make_combination,
    nodim_caratheodory,
    radon_partition,
)
from .diameter import (
    diameter_bruteforce,
    diameter_calipers_2d,
    diameter_doublesweep,
    direction_count,
    stream_2approx,
    stream_eps_2d,
)
from .errors import ConvergenceError, DegenerateInputError, GuardError, IterationLimitError, ParseError
from .generators import KINDS, gen_instance
from .geometry import BallBody, BoxBody, barycenter
from .meb import badoiu_clarkson, elzinga_hearn_dual, exact_meb, hopp_reeve_meb, kt_residuals
from .mkeb import exact_mkeb, outlier_meb_sample
from .pointio import read_points, write_points
from .seeding import derive_seed
from .testers import k_g_tester, one_s_tester, promise_label

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_COMPUTE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of calling sys.exit."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


@dataclasses.dataclass
class RunReport:
    command: str
    parameters: dict
    result: dict
    seed: int
    timing_ms: float
    tool_version: str


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def render_report(report: RunReport) -> str:
    doc = _jsonable(dataclasses.asdict(report))
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _ball_payload(sol) -> dict:
    return {
        "center": sol.ball.center,
        "radius": sol.ball.radius,
        "support": {
            "indices": sol.support.indices,
            "multipliers": sol.support.multipliers,
        },
        "iterations": sol.iterations,
        "algorithm": sol.algorithm,
    }


def _verdict_payload(v) -> dict:
    return {
        "outcome": v.outcome,
        "witness": v.witness,
        "witness_indices": v.witness_indices,
        "rounds_used": v.rounds_used,
        "seed": v.seed,
    }


def _load_points(args) -> np.ndarray:
    if args.input is None:
        raise _UsageError(f"{args.command}: --input is required")
    return read_points(args.input, args.format)


def _body(args, d: int):
    if args.body == "ball":
        return BallBody(args.radius)
    half = np.full(d, args.half_extent, dtype=float)
    return BoxBody(half)


# ---------------------------------------------------------------- handlers

def _run_meb(args) -> dict:
    P = _load_points(args)
    if args.algo == "exact":
        sol = exact_meb(P)
    elif args.algo == "hr":
        sol = hopp_reeve_meb(P)
    elif args.algo == "bc":
        sol, core = badoiu_clarkson(P, args.k, seed=args.seed)
        payload = _ball_payload(sol)
        payload["core"] = core
        return payload
    else:  # eh
        sol, lam = elzinga_hearn_dual(P, tol=args.tol, max_iter=args.max_iter)
        payload = _ball_payload(sol)
        payload["squared_radius"] = sol.s
        res = kt_residuals(P, sol.ball, lam)
        payload["kt_residuals"] = dataclasses.asdict(res)
        return payload
    return _ball_payload(sol)


def _run_mkeb(args) -> dict:
    P = _load_points(args)
    n = len(P)
    if args.sample:
        if args.eps is None or args.delta is None:
            raise _UsageError("mkeb --sample: --eps and --delta are required")
        sol = outlier_meb_sample(P, args.eps, args.delta, seed=args.seed)
    else:
        if (args.k is None) == (args.z is None):
            raise _UsageError("mkeb: pass exactly one of --k or --z")
        k = args.k if args.k is not None else n - args.z
        sol = exact_mkeb(P, k)
    return {
        "center": sol.ball.center,
        "radius": sol.ball.radius,
        "covered": sol.covered,
        "k": sol.k,
    }


def _run_diameter(args) -> dict:
    P = _load_points(args)
    if args.algo == "brute":
        res = diameter_bruteforce(P)
    elif args.algo == "calipers":
        res = diameter_calipers_2d(P)
    elif args.algo == "sweep":
        res = diameter_doublesweep(P, seed=args.seed)
    elif args.algo == "stream2":
        estimate, _ = stream_2approx(P)
        return {"estimate": estimate, "upper_bound": 2.0 * estimate}
    else:  # streameps
        estimate, sketch = stream_eps_2d(P, args.eps)
        return {
            "estimate": estimate,
            "upper_bound": (1.0 + args.eps) * estimate,
            "directions": direction_count(args.eps),
        }
    return {
        "value": res.value,
        "pair": list(res.pair),
        "exact": res.exact,
        "pairs_at_max": res.pairs_at_max,
    }


def _run_test_cluster(args) -> dict:
    P = _load_points(args)
    d = P.shape[1]
    body = _body(args, d)

    def one_trial(trial_seed: int) -> dict:
        if args.mode == "1s":
            return _verdict_payload(one_s_tester(P, body, args.eps, args.delta, seed=trial_seed))
        if args.mode == "kg":
            return _verdict_payload(
                k_g_tester(P, body, args.k, c=args.c, delta=args.delta, seed=trial_seed)
            )
        sol = outlier_meb_sample(P, args.eps, args.delta, seed=trial_seed)
        return {
            "center": sol.ball.center,
            "radius": sol.ball.radius,
            "covered": sol.covered,
            "k": sol.k,
        }

    if args.trials == 1:
        return one_trial(args.seed)
    trials = [one_trial(derive_seed(args.seed, "cli-trial", t)) for t in range(args.trials)]
    payload: dict = {"trials": trials}
    if args.mode in ("1s", "kg"):
        payload["accept_count"] = sum(1 for t in trials if t["outcome"] == "accept")
    return payload


def _run_bounds(args) -> dict:
    if args.which == "fractional-helly":
        if args.alpha is None:
            raise _UsageError("bounds fractional-helly: --alpha is required")
        if args.d is not None:
            d = args.d
        else:
            d = _load_points(args).shape[1]
        return {"alpha": args.alpha, "d": d, "beta": fractional_helly_beta(d, args.alpha)}
    P = _load_points(args)
    r = exact_meb(P).ball.radius
    bound, tight = jung_bound(P)
    if args.which == "jung":
        return {
            "jung_bound": bound,
            "tight": tight,
            "meb_radius": r,
            "holds": bool(r <= bound + 1e-9 * (1.0 + bound)),
        }
    beta = barycentric_circumradius(P)
    combined = min(beta, bound)
    return {
        "barycentric_circumradius": beta,
        "jung_bound": bound,
        "combined_bound": combined,
        "meb_radius": r,
        "holds": bool(r <= combined + 1e-9 * (1.0 + combined)),
    }


def _read_boxes(args) -> list[AABox]:
    if args.input is None:
        raise _UsageError("convexity helly-boxes: --input is required")
    with open(args.input, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("boxes"), list) or not doc["boxes"]:
        raise ParseError(1, 'expected an object with a non-empty "boxes" list')
    boxes = []
    for i, entry in enumerate(doc["boxes"]):
        if not isinstance(entry, dict) or "lower" not in entry or "upper" not in entry:
            raise ParseError(1, f'box {i}: expected "lower" and "upper" arrays')
        boxes.append(AABox(entry["lower"], entry["upper"]))
    return boxes


def _run_convexity(args) -> dict:
    if args.which == "helly-boxes":
        rep = helly_check_boxes(_read_boxes(args))
        return {
            "subfamilies_intersect": rep.subfamilies_intersect,
            "family_intersects": rep.family_intersects,
            "common_point": rep.common_point,
        }
    P = _load_points(args)
    n = len(P)
    if args.which == "radon":
        part = radon_partition(P)
        return {"left": part.left, "right": part.right, "witness": part.witness}
    if args.which == "caratheodory":
        combo = make_combination(P, np.arange(n), np.full(n, 1.0 / n))
        reduced = caratheodory_reduce(P, combo)
        return {
            "target": combo.target,
            "indices": reduced.indices,
            "coefficients": reduced.coefficients,
            "support_size": len(reduced.indices),
        }
    # nodim
    a = barycenter(P)
    chosen, achieved = nodim_caratheodory(P, a, args.r)
    diam = diameter_bruteforce(P).value if n <= 2048 else 2.0 * exact_meb(P).ball.radius
    return {
        "point": a,
        "r": args.r,
        "indices": chosen,
        "achieved": achieved,
        "bound": diam / np.sqrt(2.0 * args.r),
        "hull_distance": dist_to_hull(a, P),
    }


def _run_gen(args) -> dict:
    params = {}
    for name in ("radius", "sigma", "k", "separation", "k1", "eps", "k2", "delta"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    points, labels = gen_instance(args.kind, args.n, args.d, seed=args.seed, **params)
    payload: dict = {"kind": args.kind, "n": len(points), "d": points.shape[1], "labels": labels}
    if args.points_out:
        write_points(args.points_out, points, args.points_format)
        payload["points_path"] = args.points_out
    else:
        payload["points"] = points
    return payload


_HANDLERS = {
    "meb": _run_meb,
    "mkeb": _run_mkeb,
    "diameter": _run_diameter,
    "test-cluster": _run_test_cluster,
    "bounds": _run_bounds,
    "convexity": _run_convexity,
    "gen": _run_gen,
}


# ---------------------------------------------------------------- parser

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--input", help="point-set file (csv or json)")
    common.add_argument("--format", choices=("csv", "json"), help="input format override")
    common.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    common.add_argument("--output", help="write the report here instead of stdout")

    top = _Parser(prog="mebkit", description=__doc__)
    top.add_argument("--version", action="version", version=f"mebkit {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("meb", parents=[common], help="minimum enclosing ball")
    p.add_argument("--algo", choices=("exact", "bc", "eh", "hr"), default="exact")
    p.add_argument("--k", type=int, default=100, help="iterations for --algo bc")
    p.add_argument("--tol", type=float, default=1e-6, help="duality-gap tolerance for --algo eh")
    p.add_argument("--max-iter", type=int, default=100_000)

    p = sub.add_parser("mkeb", parents=[common], help="minimum k-enclosing ball")
    p.add_argument("--k", type=int, help="coverage target")
    p.add_argument("--z", type=int, help="outlier count (k = n - z)")
    p.add_argument("--sample", action="store_true", help="sampled outlier variant")
    p.add_argument("--eps", type=float, help="outlier fraction for --sample")
    p.add_argument("--delta", type=float, help="failure probability for --sample")

    p = sub.add_parser("diameter", parents=[common], help="diameter of a point set")
    p.add_argument("--algo", choices=("brute", "calipers", "sweep", "stream2", "streameps"),
                   default="brute")
    p.add_argument("--eps", type=float, default=0.1, help="accuracy for --algo streameps")

    p = sub.add_parser("test-cluster", parents=[common], help="sampled clusterability testers")
    p.add_argument("--mode", choices=("1s", "kg", "outliers"), required=True)
    p.add_argument("--body", choices=("ball", "box"), default="ball")
    p.add_argument("--radius", type=float, default=1.0, help="ball body radius")
    p.add_argument("--half-extent", type=float, default=1.0, help="box body half side")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--k", type=int, default=2, help="cluster count for --mode kg")
    p.add_argument("--c", type=float, default=0.01, help="far-fraction rate for --mode kg")
    p.add_argument("--trials", type=int, default=1)

    p = sub.add_parser("bounds", parents=[common], help="enclosing-radius bounds")
    p.add_argument("which", choices=("jung", "variant", "fractional-helly"))
    p.add_argument("--alpha", type=float, help="intersection fraction for fractional-helly")
    p.add_argument("--d", type=int, help="dimension for fractional-helly without --input")

    p = sub.add_parser("convexity", parents=[common], help="constructive convexity routines")
    p.add_argument("which", choices=("radon", "caratheodory", "helly-boxes", "nodim"))
    p.add_argument("--r", type=int, default=4, help="subset size for nodim")

    p = sub.add_parser("gen", parents=[common], help="generate a named instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--points-out", help="write generated points to this file")
    p.add_argument("--points-format", choices=("csv", "json"))
    p.add_argument("--radius", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--separation", type=float)
    p.add_argument("--k1", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--k2", type=int)
    p.add_argument("--delta", type=float)

    return top


def _parameters(args) -> dict:
    skip = {"command", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _thread_cap() -> int:
    raw = os.environ.get("MEB_KIT_THREADS")
    if raw is None:
        return 0
    try:
        cap = int(raw)
    except ValueError:
        raise _UsageError(f"MEB_KIT_THREADS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise _UsageError("MEB_KIT_THREADS must be >= 0")
    return cap


def dispatch(argv) -> tuple[RunReport, int]:
    """Run one subcommand and return (report, exit code) without writing."""
    started = time.perf_counter()
    command = "unknown"
    parameters: dict = {}
    seed = 0
    try:
        cap = _thread_cap()
        args = build_parser().parse_args(argv)
        command = args.command
        seed = args.seed
        parameters = _parameters(args)
        parameters["threads"] = cap
        result = _HANDLERS[command](args)
        code = EXIT_OK
    except _UsageError as exc:
        result = {"error": {"kind": "usage", "message": str(exc)}}
        code = EXIT_USAGE
    except (ParseError, DegenerateInputError, FileNotFoundError, OSError, ValueError) as exc:
        result = {"error": {"kind": "input", "message": str(exc)}}
        code = EXIT_INPUT
    except (GuardError, ConvergenceError, IterationLimitError) as exc:
        result = {"error": {"kind": "computation", "message": str(exc)}}
        code = EXIT_COMPUTE
    timing_ms = 1000.0 * (time.perf_counter() - started)
    report = RunReport(
        command=command,
        parameters=parameters,
        result=result,
        seed=seed,
        timing_ms=timing_ms,
        tool_version=__version__,
    )
    return report, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = dispatch(argv)
    text = render_report(report)
    output = None
    for i, flag in enumerate(argv):
        if flag == "--output" and i + 1 < len(argv):
            output = argv[i + 1]
        elif flag.startswith("--output="):
            output = flag.split("=", 1)[1]
    if output and code != EXIT_USAGE:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
