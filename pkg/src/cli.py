""" Command line front end.

    python -m src.cli check --theorem T3_1 --n 5 --samples 20 --seed 7
    python -m src.cli extremal --exponents exps.json --functional point:0
    python -m src.cli sigma --k 3

Exit codes: 0 all checks hold, 1 a check is violated, 2 numerical failure or
inconclusive rows, 64 bad usage.
"""
import argparse
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from src.checks import (
    EXACT_CHECKS, RANDOM_CHECKS, RandomModel, check_exact, sweep, write_csv,
    write_json
)
from src.core import ExponentSet, NormSpec
from src.errors import ArgumentError, NumericalFailure
from src.extremal import Functional, MuntzPowers, christoffel_sup, gram
from src.minimax import sigma_minimax
from src.result import Status
from src.suite import run_suite, summary
from src.theorems import TheoremId, sigma_closed
from src.witnesses import witness

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 64

COMMANDS = ("check", "sweep", "extremal", "sigma", "witness", "table")
EXTRA_FLAGS = ("q", "p", "y", "a", "b", "delta", "alpha", "beta", "lam")


@dataclass(frozen=True)
class CliConfig:
    command: str
    theorem: TheoremId = None
    n: int = None
    n_range: tuple = None
    seed: int = 42
    samples: int = 100
    format: str = "csv"
    out: str = None
    exponents: str = None
    functional: str = "point:0"
    interval: tuple = (0.0, 1.0)
    weight_rate: float = 0.0
    q: float = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ArgumentError(f"Unknown command {self.command!r}.")
        if self.command in ("check", "sweep", "witness") and \
                self.theorem is None:
            raise ArgumentError(f"{self.command} needs --theorem.")
        if self.command in ("check", "witness") and self.n is None:
            raise ArgumentError(f"{self.command} needs --n.")
        if self.command == "sweep" and self.n_range is None:
            raise ArgumentError("sweep needs --n-range.")
        if self.command == "extremal" and self.exponents is None:
            raise ArgumentError("extremal needs --exponents.")
        if self.n is not None and self.n < 1:
            raise ArgumentError(f"Need n >= 1, got {self.n}.")
        if self.samples is not None and self.samples < 0:
            raise ArgumentError(f"Need samples >= 0, got {self.samples}.")


class UsageParser(argparse.ArgumentParser):
    """ ArgumentParser exiting with code 64 on bad usage. """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _theorem(text):
    try:
        return TheoremId(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown theorem {text!r}"
        ) from None


def build_parser():
    parser = UsageParser(
        prog="expsum",
        description="Extremal constants of inequalities for exponential sums.",
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log debugging information to standard error")
    commands = parser.add_subparsers(dest="command", required=True,
                                     parser_class=UsageParser)

    def _reporting(sub):
        sub.add_argument("--theorem", type=_theorem, required=True)
        sub.add_argument("--seed", type=int, default=42)
        sub.add_argument("--samples", type=int, default=100)
        sub.add_argument("--mode", choices=("exact", "random"))
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
        sub.add_argument("--out", help="output file, default standard output")
        for name in EXTRA_FLAGS:
            sub.add_argument(f"--{name}", type=float)
        sub.add_argument("--form", choices=("uniform", "point"))
        sub.add_argument("--variant", choices=("stated", "proof", "overview"))

    check = commands.add_parser("check", help="check one n")
    _reporting(check)
    check.add_argument("--n", type=int, required=True)
    check.add_argument("--exponents",
                       help="exponent JSON file for a single exact check")

    sweep_cmd = commands.add_parser("sweep", help="check a range of n")
    _reporting(sweep_cmd)
    sweep_cmd.add_argument("--n-range", type=int, nargs=2, required=True,
                           metavar=("LO", "HI"))

    extremal = commands.add_parser("extremal",
                                   help="exact sup of a functional")
    extremal.add_argument("--exponents", required=True)
    extremal.add_argument("--interval", type=float, nargs=2,
                          default=[0.0, 1.0], metavar=("A", "B"),
                          help="B may be inf")
    extremal.add_argument("--weight-rate", type=float, default=0.0)
    extremal.add_argument("--functional", default="point:0",
                          help="point:<y> or deriv:<y>")
    extremal.add_argument("--basis", choices=("exp", "muntz"), default="exp")

    sigma = commands.add_parser("sigma", help="minimax sigma_k")
    sigma.add_argument("--k", type=int, required=True)
    sigma.add_argument("--grid", type=int, default=4096)

    witness_cmd = commands.add_parser("witness", help="lower-bound witness")
    witness_cmd.add_argument("--theorem", type=_theorem, required=True)
    witness_cmd.add_argument("--n", type=int, required=True)
    for name in ("lam", "y", "a", "b"):
        witness_cmd.add_argument(f"--{name}", type=float)
    witness_cmd.add_argument("--write-exponents", metavar="FILE")

    table = commands.add_parser("table", help="run the acceptance table")
    table.add_argument("--samples", type=int)
    return parser


def _config(args):
    n_range = getattr(args, "n_range", None)
    return CliConfig(
        command=args.command,
        theorem=getattr(args, "theorem", None),
        n=getattr(args, "n", None),
        n_range=tuple(n_range) if n_range else None,
        seed=getattr(args, "seed", 42),
        samples=getattr(args, "samples", 100),
        format=getattr(args, "format", "csv"),
        out=getattr(args, "out", None),
        exponents=getattr(args, "exponents", None),
        functional=getattr(args, "functional", "point:0"),
        interval=tuple(getattr(args, "interval", (0.0, 1.0))),
        weight_rate=getattr(args, "weight_rate", 0.0),
        q=getattr(args, "q", None),
    )


def _extras(args):
    extras = {
        name: getattr(args, name) for name in EXTRA_FLAGS
        if getattr(args, name, None) is not None
    }
    for name in ("form", "variant"):
        if getattr(args, name, None):
            extras[name] = getattr(args, name)
    return extras


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _exit_code(reports):
    statuses = {report.status for report in reports}
    if Status.VIOLATED in statuses:
        return EXIT_VIOLATED
    if Status.INCONCLUSIVE in statuses:
        return EXIT_NUMERICAL
    return EXIT_OK


def _emit(reports, cfg):
    with _output(cfg.out) as fh:
        if cfg.format == "json":
            write_json(reports, fh)
        else:
            write_csv(reports, fh)
    return _exit_code(reports)


def _mode(theorem, requested):
    if requested:
        return requested
    if theorem in EXACT_CHECKS:
        return "exact"
    if theorem in RANDOM_CHECKS:
        return "random"
    raise ArgumentError(
        f"{theorem.value} has no check; use the witness or table commands."
    )


def _run_check(args, cfg):
    extras = _extras(args)
    if cfg.exponents is not None:
        exps = ExponentSet.load(cfg.exponents)
        return _emit([check_exact(cfg.theorem, exps, cfg.seed, **extras)], cfg)
    mode = _mode(cfg.theorem, args.mode)
    result = sweep(cfg.theorem, [cfg.n], RandomModel(seed=cfg.seed),
                   cfg.samples, mode=mode, **extras)
    return _emit(result.reports, cfg)


def _run_sweep(args, cfg):
    lo, hi = cfg.n_range
    mode = _mode(cfg.theorem, args.mode)
    result = sweep(cfg.theorem, range(lo, hi + 1), RandomModel(seed=cfg.seed),
                   cfg.samples, mode=mode, **_extras(args))
    logger.info("%r", result)
    return _emit(result.reports, cfg)


def _run_extremal(args, cfg):
    if args.basis == "muntz":
        system = MuntzPowers.load(cfg.exponents)
    else:
        system = ExponentSet.load(cfg.exponents)
    a, b = cfg.interval
    res = christoffel_sup(
        gram(system, NormSpec(a, b, cfg.weight_rate)),
        system, Functional.parse(cfg.functional),
    )
    out = {
        "value": res.value,
        "condition": res.gram_condition,
        "witness_coeffs": [
            {"re": float(c.real), "im": float(c.imag)} for c in res.coeffs
        ],
    }
    print(json.dumps(out))
    return EXIT_OK


def _run_sigma(args, cfg):
    res = sigma_minimax(args.k, grid=args.grid)
    print(json.dumps({
        "k": args.k,
        "value": res.fun,
        "lower_bound": res.bound,
        "closed_form": sigma_closed(args.k),
        "converged": res.success,
        "coefficients": [float(c.real) for c in res.x],
    }))
    return EXIT_OK


def _run_witness(args, cfg):
    extras = {
        name: getattr(args, name) for name in ("lam", "y", "a", "b")
        if getattr(args, name) is not None
    }
    res = witness(cfg.theorem, cfg.n, **extras)
    if args.write_exponents:
        if res.exps is None:
            raise ArgumentError(
                f"The {cfg.theorem.value} witness has no exponent set."
            )
        res.exps.dump(args.write_exponents)
    print(json.dumps({
        "theorem": res.theorem.value,
        "n": res.n,
        "achieved": res.achieved,
        "bound": res.bound,
        "holds": res.holds,
        "info": res.info,
    }))
    return EXIT_OK if res.holds else EXIT_VIOLATED


def _run_table(args, cfg):
    criteria = run_suite(samples=args.samples)
    print(summary(criteria))
    return EXIT_OK if all(c.passed for c in criteria) else EXIT_VIOLATED


_RUNNERS = {
    "check": _run_check,
    "sweep": _run_sweep,
    "extremal": _run_extremal,
    "sigma": _run_sigma,
    "witness": _run_witness,
    "table": _run_table,
}


def run(argv=None):
    """ Parse argv, run the command and return the exit code. """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = _config(args)
        return _RUNNERS[cfg.command](args, cfg)
    except NumericalFailure as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as err:
        parser.print_usage(sys.stderr)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
