"""Command line: ``qtrace expand``, ``qtrace verify <job>``, ``qtrace suite``.

Exit status is 0 when every report line passes, 1 on a verification failure
and 2 on bad input (unreadable or malformed files, bad parameters).
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from .cyclic_trace import F_g, Q1_N, Q_M23, QN_N
from .ingest import InputError
from .jobs import (
    JOB_NAMES,
    TSV_HEADER,
    JobInputError,
    VerificationJob,
    default_suite,
    run_suite,
    searched_cusp_form,
    search_window,
)
from .modforms import E2N, F2, He_series, NoAppendixForm, appendix_GN, eisenstein_E2, sigmaN_series
from .qseries import EtaQuotientSpec, QSeries, eta_expand, format_series
from .voa import W_trace

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parse_eta(text: str) -> EtaQuotientSpec:
    """``"1:-24,2:16"`` -> eta(tau)^-24 eta(2 tau)^16."""
    pairs = []
    for tok in text.split(","):
        k, _, e = tok.partition(":")
        pairs.append((int(k), int(e)))
    return EtaQuotientSpec.of(pairs)


def _cusp(args) -> QSeries:
    if args.cusp == "appendix":
        return appendix_GN(args.level, args.bound + 1)
    return searched_cusp_form(args.level, args.basis_dir, search_window(args.level, 0))[1]


SERIES: dict[str, Callable] = {
    "E2": lambda a: eisenstein_E2(a.bound + 1),
    "E2N": lambda a: E2N(a.level, a.bound + 1),
    "F2": lambda a: F2(a.bound + 1),
    "He": lambda a: He_series(a.bound + 1),
    "sigmaN": lambda a: sigmaN_series(a.level, a.bound + 1),
    "GN": lambda a: _cusp(a),
    "QM23": lambda a: Q_M23(a.level, a.bound + 1),
    "Q1": lambda a: Q1_N(a.level, a.bound + 1),
    "QN": lambda a: QN_N(a.level, _cusp(a), a.bound + 1),
    "F-identity": lambda a: F_g(a.level, True, a.bound + 1),
    "F-other": lambda a: F_g(a.level, False, a.bound + 1),
    "W-identity": lambda a: W_trace(a.level, True, a.bound + 1),
    "W-other": lambda a: W_trace(a.level, False, a.bound + 1),
    "eta": lambda a: eta_expand(_parse_eta(a.eta), a.bound + 1),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--bound",
        type=int,
        default=None,
        help="verify: top q-exponent (prime bound for cor41/residue); expand: terms past the leading exponent",
    )
    common.add_argument("--basis-dir", default=None, help="directory of level_<N>.txt cusp bases")
    common.add_argument("--curves", default=None, help="curve model file")
    common.add_argument("--format", choices=("text", "tsv"), default="text")

    p = argparse.ArgumentParser(prog="qtrace", description="exact q-series trace-function checks")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="print a named series")
    e.add_argument("series", choices=sorted(SERIES))
    e.add_argument("--level", type=int, default=11)
    e.add_argument("--cusp", choices=("searched", "appendix"), default="searched")
    e.add_argument("--eta", default="1:1", help="eta quotient as k:e pairs, e.g. 1:-24,2:16")

    v = sub.add_parser("verify", parents=[common], help="run one verification job")
    v.add_argument("job", choices=JOB_NAMES)
    v.add_argument("--level", type=int, action="append", dest="levels", help="restrict to a level (repeatable)")
    v.add_argument("--primes", default=None, help="comma-separated levels, same as repeated --level")
    v.add_argument("--cusp", choices=("searched", "appendix"), default="searched")

    sub.add_parser("suite", parents=[common], help="run every job with default parameters")
    return p


def _levels(args) -> tuple[int, ...]:
    out = list(args.levels or [])
    if args.primes:
        out += [int(x) for x in args.primes.split(",") if x.strip()]
    return tuple(out)


def _emit(lines, fmt: str, out) -> None:
    if fmt == "tsv":
        print(TSV_HEADER, file=out)
        for l in lines:
            print(l.tsv(), file=out)
    else:
        for l in lines:
            print(l.text(), file=out)
        n_fail = sum(not l.ok for l in lines)
        print(f"{len(lines) - n_fail}/{len(lines)} passed", file=out)


def _expand(args, out) -> int:
    if args.bound is None:
        args.bound = 20
    s = SERIES[args.series](args)
    if args.format == "tsv":
        print("exponent\tcoefficient", file=out)
        for e, c in zip(s.exponents(), s.coeffs):
            print(f"{e}\t{c}", file=out)
    else:
        print(format_series(s), file=out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "expand":
            try:
                return _expand(args, out)
            except ArithmeticError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_FAIL
        if args.command == "verify":
            jobs = [VerificationJob(args.job, _levels(args), args.bound, args.basis_dir, args.curves, args.cusp)]
        else:
            jobs = default_suite(args.basis_dir, args.curves)
            if args.bound is not None:
                print("note: --bound is ignored by suite; each job uses its default", file=sys.stderr)
        report = run_suite(jobs)
    except (InputError, JobInputError, NoAppendixForm, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report.lines, args.format, out)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
