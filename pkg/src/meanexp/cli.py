"""Command-line front end.

Exit codes: 0 success, 2 scenario schema violation, 3 infeasible
optimization budget, 4 internal inconsistency, 64 unknown subcommand.
Output is human-readable by default and JSON with --json; JSON output for
a fixed input is byte-stable across runs.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from . import oracle, propgroups, scenario, towers
from .errors import (
    InfeasibleProblemError,
    InternalInconsistencyError,
    MeanexpError,
    SchemaError,
)
from .groups import AbelianPShape, mean_exponent, order_log, rank

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INFEASIBLE = 3
EXIT_INTERNAL = 4
EXIT_USAGE = 64

_SUBCOMMANDS = (
    "mean-exponent",
    "genus-bound",
    "gs-check",
    "critere",
    "tv-bound",
    "paper-example",
    "propgroup",
    "oracle",
)

_EXAMPLE_NAMES = {"1": "example1", "2": "example2", "3": "example3",
                  "4": "example4", "5": "example5", "intro": "intro"}


def _parse_shape(text: str) -> AbelianPShape:
    """Parse 'p:2,exps:3,1' into a group shape."""
    p = None
    exps: list[int] = []
    mode = None
    for token in text.split(","):
        token = token.strip()
        if token.startswith("p:"):
            p = int(token[2:])
            mode = None
        elif token.startswith("exps:"):
            mode = "exps"
            rest = token[5:]
            if rest:
                exps.append(int(rest))
        elif mode == "exps" and token:
            exps.append(int(token))
        elif token:
            raise SchemaError(f"cannot parse shape token {token!r}", location="--shape")
    if p is None:
        raise SchemaError("shape needs a p: entry", location="--shape")
    return AbelianPShape(p=p, exps=tuple(exps))


def _emit(payload: dict, args, text_lines=None) -> None:
    if args.json:
        print(scenario.dump_report(payload, precision=args.precision))
    else:
        for line in text_lines if text_lines is not None else _default_lines(payload):
            print(line)


def _default_lines(payload: dict, prefix: str = ""):
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            yield f"{prefix}{key}:"
            yield from _default_lines(value, prefix + "  ")
        else:
            yield f"{prefix}{key}: {value}"


def _scenario_path(name: str):
    return resources.files("meanexp").joinpath("scenarios", f"{name}.json")


def run_packaged_example(name: str) -> dict:
    path = _scenario_path(name)
    with resources.as_file(path) as concrete:
        return scenario.run_scenario(concrete)


def _cmd_mean_exponent(args) -> dict:
    shape = _parse_shape(args.shape)
    me = mean_exponent(shape)
    return {
        "shape": shape.to_json(),
        "mean_exponent": float(me),
        "mean_exponent_exact": str(me),
        "rank": rank(shape),
        "order_log": order_log(shape),
    }


def _cmd_genus_bound(args) -> dict:
    bound = towers.genus_rank_bound(args.rho, args.r1, args.r2, args.delta)
    return {"rho": args.rho, "r1": args.r1, "r2": args.r2, "delta": args.delta, "bound": bound}


def _cmd_gs_check(args) -> dict:
    verdict = towers.gs_verdict(args.d, args.r_upper)
    return {
        "d": args.d,
        "r_upper": args.r_upper,
        "finite_requires_at_least": towers.gs_finite_requires(args.d),
        "verdict": verdict.value,
    }


def _cmd_critere(args) -> dict:
    ok = towers.critere_real_quadratic(args.rho, args.t_dec, args.t_total)
    return {
        "rho": args.rho,
        "t_dec": args.t_dec,
        "t_total": args.t_total,
        "tower_infinite": ok,
    }


def _cmd_tv_bound(args) -> dict:
    return scenario.run_scenario(args.scenario)


def _cmd_paper_example(args) -> dict:
    name = _EXAMPLE_NAMES.get(args.which)
    if name is None:
        raise SchemaError(
            f"unknown example {args.which!r}; expected 1..5 or intro", location="paper-example"
        )
    return run_packaged_example(name)


def _cmd_propgroup(args) -> dict:
    params = propgroups.GSGroupParams(
        d=args.d,
        r=args.r,
        p=args.p,
        relation_degrees=tuple(int(x) for x in args.degrees.split(",")) if args.degrees else (),
    )
    if args.mode == "series":
        series = propgroups.gs_series(params, args.N)
        return {"d": args.d, "r": args.r, "coeffs": list(series.coeffs)}
    if args.mode == "ranks":
        series = propgroups.gs_series(params, args.N)
        ranks = propgroups.zassenhaus_ranks(series, args.p, args.N)
        return {"d": args.d, "r": args.r, "p": args.p, "b": list(ranks.b)}
    rows = propgroups.theo2_witnesses(params, args.eps, args.N)
    return {
        "d": args.d,
        "r": args.r,
        "p": args.p,
        "epsilon": args.eps,
        "gs_type": params.gs_type(),
        # finite abelianization needs at least as many relations as generators
        "fab_typical": args.r >= args.d,
        "rows": [row.to_json() for row in rows],
    }


def _prime_factors(n: int) -> list[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return sorted(out)


def _cmd_oracle(args) -> dict:
    D = args.disc
    h = oracle.class_number(D)
    structures = {}
    means = {}
    for p in _prime_factors(h) if h > 1 else []:
        shape = oracle.class_group_structure(D, p)
        structures[str(p)] = shape.to_json()
        means[str(p)] = float(mean_exponent(shape))
    return {"disc": D, "h": h, "structures": structures, "mean_exponents": means}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand; the
    # SUPPRESS defaults keep a post-subcommand absence from clobbering a
    # pre-subcommand value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="round floats in JSON output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized checks (reserved)")

    parser = argparse.ArgumentParser(prog="meanexp", description=__doc__)
    parser.add_argument("--json", action="store_true", default=False, help=argparse.SUPPRESS)
    parser.add_argument("--precision", type=int, default=None, help=argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=0, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=argparse.ArgumentParser)

    sp = sub.add_parser("mean-exponent", parents=[common], help="mean exponent of a finite abelian p-group")
    sp.add_argument("--shape", required=True, help="e.g. p:2,exps:3,1")
    sp.set_defaults(func=_cmd_mean_exponent)

    sp = sub.add_parser("genus-bound", parents=[common], help="genus-theory p-rank lower bound")
    sp.add_argument("--rho", type=int, required=True)
    sp.add_argument("--r1", type=int, required=True)
    sp.add_argument("--r2", type=int, required=True)
    sp.add_argument("--delta", type=int, choices=(0, 1), required=True)
    sp.set_defaults(func=_cmd_genus_bound)

    sp = sub.add_parser("gs-check", parents=[common], help="generator/relation infinitude verdict")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r-upper", type=int, required=True)
    sp.set_defaults(func=_cmd_gs_check)

    sp = sub.add_parser("critere", parents=[common], help="real-quadratic T-split tower criterion")
    sp.add_argument("--rho", type=int, required=True)
    sp.add_argument("--t-dec", type=int, required=True)
    sp.add_argument("--t-total", type=int, required=True)
    sp.set_defaults(func=_cmd_critere)

    sp = sub.add_parser("tv-bound", parents=[common], help="run a scenario file")
    sp.add_argument("--scenario", required=True)
    sp.set_defaults(func=_cmd_tv_bound)

    sp = sub.add_parser("paper-example", parents=[common], help="run a packaged worked example (1..5 or intro)")
    sp.add_argument("which")
    sp.set_defaults(func=_cmd_paper_example)

    sp = sub.add_parser("propgroup", parents=[common], help="dimension series and filtration ranks")
    sp.add_argument("mode", choices=("series", "ranks", "witnesses"))
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--N", type=int, default=16)
    sp.add_argument("--eps", type=float, default=0.5)
    sp.add_argument("--degrees", default="", help="comma-separated relation degrees")
    sp.set_defaults(func=_cmd_propgroup)

    sp = sub.add_parser("oracle", parents=[common], help="brute-force class group data")
    sp.add_argument("oracle_mode", choices=("class-group",))
    sp.add_argument("--disc", type=int, required=True)
    sp.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    positional = [a for a in argv if not a.startswith("-")]
    if positional and positional[0] not in _SUBCOMMANDS:
        print(f"meanexp: unknown subcommand {positional[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        payload = args.func(args)
    except SchemaError as exc:
        print(f"meanexp: scenario error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except InfeasibleProblemError as exc:
        print(f"meanexp: infeasible problem: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InternalInconsistencyError as exc:
        print(f"meanexp: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except MeanexpError as exc:
        print(f"meanexp: error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    _emit(payload, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
