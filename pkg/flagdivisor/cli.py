"""Command line entry point: python -m flagdivisor <command> ..."""

import argparse
import logging
import sys
from time import perf_counter
from typing import Optional, Sequence

from flagdivisor.divisor import anticanonical_divisor, theorem_equation
from flagdivisor.montecarlo import DEFAULT_SAMPLE_BOUND, DEFAULT_TRIALS, McConfig
from flagdivisor.suites import SUITES, suite_passed
from flagdivisor.util import dump_json, log_duration, write_output
from flagdivisor.verify import pi1_prediction, pi1_table
from flagdivisor.weyl import FlagType, Permutation, bruhat_leq, p_bruhat_leq

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parent.add_argument("--format", choices=("text", "json"), default="text")
    parent.add_argument("--out", default=None, metavar="PATH", help="write output to PATH instead of stdout")
    return parent


def _flag_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--n", type=int, required=True, help="ambient dimension n")
    parser.add_argument("--flag", required=required, metavar="S1,S2,...", help="strictly increasing steps")


def build_parser() -> argparse.ArgumentParser:
    parent = _common_options()
    parser = argparse.ArgumentParser(
        prog="flagdivisor",
        description="Equations of the anti-canonical divisor of type A partial flag varieties.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    equations = commands.add_parser("equations", parents=[parent], help="equation of one or every simple root")
    _flag_options(equations)
    equations.add_argument("--i", type=int, default=None, help="simple root index in 1..n-1")

    divisor = commands.add_parser("divisor", parents=[parent], help="all components of -K with case tags")
    _flag_options(divisor)

    verify = commands.add_parser("verify", parents=[parent], help="run a verification sweep")
    verify.add_argument("--suite", choices=sorted(SUITES), required=True)
    verify.add_argument("--max-n", type=int, default=None, help="largest n (N for blockdet); suite default otherwise")
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help=f"default {DEFAULT_TRIALS}")
    verify.add_argument(
        "--sample-bound", type=int, default=DEFAULT_SAMPLE_BOUND, help=f"default {DEFAULT_SAMPLE_BOUND}"
    )

    pi1 = commands.add_parser("pi1-table", parents=[parent], help="Gamma(v) and predicted ranks")
    _flag_options(pi1, required=False)

    bruhat = commands.add_parser("bruhat", parents=[parent], help="compare two permutations")
    _flag_options(bruhat, required=False)
    bruhat.add_argument("--u", required=True, metavar="W1,...,Wn")
    bruhat.add_argument("--v", required=True, metavar="W1,...,Wn")
    return parser


def _parse_flag(parser: argparse.ArgumentParser, n: int, steps: Optional[str]) -> Optional[FlagType]:
    if steps is None:
        return None
    try:
        return FlagType(n, tuple(int(s) for s in steps.split(",")))
    except ValueError as e:
        parser.error(f"invalid flag type --n {n} --flag {steps}: {e}")


def _parse_permutation(parser: argparse.ArgumentParser, n: int, text: str) -> Permutation:
    try:
        w = Permutation.parse(text)
    except ValueError as e:
        parser.error(str(e))
    if w.n != n:
        parser.error(f"permutation {text} is not in S_{n}")
    return w


def _flag_json(flag: FlagType) -> dict:
    return {"n": flag.n, "steps": list(flag.steps)}


def _components_output(flag: FlagType, components, fmt: str, tagged: bool) -> str:
    if fmt == "json":
        return dump_json({"flag": _flag_json(flag), "components": [c.to_json(flag.n) for c in components]})
    if tagged:
        return "\n".join(c.text(flag.n) for c in components)
    return "\n".join(c.equation.to_text(flag.n) for c in components)


def _equations(parser, args) -> int:
    flag = _parse_flag(parser, args.n, args.flag)
    if args.i is not None and not 1 <= args.i <= flag.n - 1:
        parser.error(f"--i {args.i} outside 1..{flag.n - 1}")
    indices = [args.i] if args.i is not None else range(1, flag.n)
    components = [theorem_equation(flag, i) for i in indices]
    write_output(_components_output(flag, components, args.format, tagged=False), args.out)
    return EXIT_OK


def _divisor(parser, args) -> int:
    flag = _parse_flag(parser, args.n, args.flag)
    components = anticanonical_divisor(flag)
    write_output(_components_output(flag, components, args.format, tagged=True), args.out)
    return EXIT_OK


def _verify(parser, args) -> int:
    try:
        cfg = McConfig(trials=args.trials, seed=args.seed, sample_bound=args.sample_bound)
        suite = SUITES[args.suite](args.max_n, cfg)
    except ValueError as e:
        parser.error(str(e))
    result = suite.run()
    frame = result["results"]
    passed = suite_passed(result)
    if args.format == "json":
        text = dump_json({
            "suite": result["suite"],
            "status": result["status"],
            "error": result["error"],
            "passed": passed,
            "seed": cfg.seed,
            "trials": cfg.trials,
            "sample_bound": cfg.sample_bound,
            "results": frame.to_dict(orient="records"),
        })
    else:
        summary = frame["status"].value_counts().sort_index()
        counts = ", ".join(f"{status}: {count}" for status, count in summary.items())
        text = frame.to_string(index=False) + f"\n\nsuite {result['suite']}: {'PASS' if passed else 'FAIL'} ({counts})"
    write_output(text, args.out)
    return EXIT_OK if passed else EXIT_FAILED


def _pi1_table(parser, args) -> int:
    if args.n < 1:
        parser.error(f"--n must be positive, got {args.n}")
    flag = _parse_flag(parser, args.n, args.flag)
    if flag is not None:
        rank = pi1_prediction(flag)
        if args.format == "json":
            text = dump_json({"flag": _flag_json(flag), "rank": rank})
        else:
            text = f"{flag.label}: rank {rank}"
    else:
        frame = pi1_table(args.n)
        text = dump_json(frame.to_dict(orient="records")) if args.format == "json" else frame.to_string(index=False)
    write_output(text, args.out)
    return EXIT_OK


def _bruhat(parser, args) -> int:
    u = _parse_permutation(parser, args.n, args.u)
    v = _parse_permutation(parser, args.n, args.v)
    flag = _parse_flag(parser, args.n, args.flag)
    results = {"bruhat_leq": bruhat_leq(u, v)}
    if flag is not None:
        results["p_bruhat_leq"] = p_bruhat_leq(u, v, flag)
    if args.format == "json":
        text = dump_json(results)
    else:
        text = "\n".join(f"{key}: {'true' if value else 'false'}" for key, value in results.items())
    write_output(text, args.out)
    return EXIT_OK


COMMANDS = {
    "equations": _equations,
    "divisor": _divisor,
    "verify": _verify,
    "pi1-table": _pi1_table,
    "bruhat": _bruhat,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    start_ts = perf_counter()
    code = COMMANDS[args.command](parser, args)
    log_duration(f"Command {args.command}", start_ts)
    return code
