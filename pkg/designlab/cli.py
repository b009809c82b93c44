"""Command line entry point: python -m designlab <subcommand> ...

Exit status 0 on success, 1 when a verification fails, 2 on usage errors,
malformed input files and inadmissible parameters.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from typing import List, Optional, Sequence

from .domain import SQS, Code, DesignLabError, FormatError, VerificationError, VerificationReport
from .fixtures import FIRST_PAIR, SWITCHED_PAIR
from .formats import format_object, read_object, write_object
from .services import (
    CONSTRUCT_KINDS,
    COUNT_KINDS,
    assignment_index,
    build_sqs_8n2,
    construct,
    count,
    worked_example,
    switch_codes,
    verify_object,
)
from .sqs import search_sqs
from .switching import lower_bound
from .utils import DEFAULT_SEED

logger = logging.getLogger("designlab")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _report_status(report: VerificationReport) -> int:
    _emit(report.to_records())
    return EXIT_OK if report.ok else EXIT_FAIL


def _write_or_print(obj, out: Optional[str]) -> None:
    if out:
        write_object(obj, out)
        logger.info(f"wrote {out}")
    else:
        sys.stdout.write(format_object(obj))


def _build_8n2(args: argparse.Namespace) -> int:
    result = build_sqs_8n2(args.n, args.mode, args.ingredients, args.seed)
    if args.out:
        write_object(result.sqs or SQS.from_blocks(8 * args.n + 2, result.blocks), args.out)
    return _report_status(result.report)


def cmd_construct(args: argparse.Namespace) -> int:
    if args.kind == "sqs-8n2":
        return _build_8n2(args)
    obj = construct(args.kind, q=args.q, d0=args.d0, ell=args.ell, p=args.p, k=args.k, d=args.d,
                    rho=args.rho, a=args.a, v=args.v, seed=args.seed)
    _write_or_print(obj, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_object(read_object(args.file))
    report.stats["file"] = args.file
    return _report_status(report)


def cmd_switch(args: argparse.Namespace) -> int:
    code = read_object(args.code)
    if not isinstance(code, Code):
        raise FormatError(f"{args.code} does not hold a CODE")
    p = code.linear.field.p if code.linear is not None else 0
    for assignment, switched in switch_codes(code, args.count, args.eps, args.seed):
        index = assignment_index(assignment, p)
        path = os.path.join(args.out, f"switched_{index}.code")
        write_object(switched, path)
        print(f"assignment={','.join(map(str, assignment))} index={index} words={len(switched)} file={path}")
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    value, check = count(args.kind, args.q, args.jobs)
    logger.info(f"count {args.kind} q={args.q}: {value} in {time.perf_counter() - start:.2f}s")
    print(value)
    if value != check:
        logger.error(f"independent enumeration disagrees: {check}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    result = lower_bound(args.p, args.k, args.d, args.rho, args.eps)
    print(f"t={result.t} w={result.w} ln_bound={result.ln_bound:.6f} vacuous={result.vacuous}")
    return EXIT_OK


def _print_pair(title: str, pair) -> None:
    print(title)
    for row_a, row_b in zip(*pair):
        print(" ".join(map(str, row_a)) + "   " + " ".join(map(str, row_b)))


def cmd_demo(args: argparse.Namespace) -> int:
    _print_pair("first pair", FIRST_PAIR)
    _print_pair("switched pair", SWITCHED_PAIR)
    return _report_status(worked_example())


def cmd_search_sqs(args: argparse.Namespace) -> int:
    result = search_sqs(args.v, args.seed, args.budget, args.method)
    print(f"v={result.v} method={result.method} steps={result.steps} blocks={result.blocks_placed} found={result.found}")
    if not result.found:
        return EXIT_FAIL
    _write_or_print(result.sqs, args.out)
    return EXIT_OK


def _add_8n2_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=16)
    parser.add_argument("--mode", choices=("partial", "full"), default="partial")
    parser.add_argument("--ingredients", default=None, help="directory with sqs_<2n+2>[_i].txt files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="designlab", description="MDS codes, latin hypercubes and Steiner quadruple systems")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an object and write it in its text format")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    p.add_argument("--q", type=int, default=8)
    p.add_argument("--d0", type=int, default=2)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--a", type=int, default=3)
    p.add_argument("--v", type=int, default=16)
    _add_8n2_flags(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("build-sqs", help="alias of construct sqs-8n2")
    _add_8n2_flags(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_build_8n2)

    p = sub.add_parser("verify", help="verify a LATIN, CODE, BBD or SQS file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("switch", help="write switched codes for distinct assignments")
    p.add_argument("--code", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--eps", default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_switch)

    p = sub.add_parser("count", help="exact oracle counts")
    p.add_argument("--kind", choices=COUNT_KINDS, default="latin")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bound", help="lower bound on the number of switched codes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--eps", default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("demo", help="replay the worked examples")
    p.add_argument("name", choices=("paper-example",))
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("search-sqs", help="search for an SQS of order v")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--method", choices=("backtrack", "hillclimb"), default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search_sqs)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except VerificationError as exc:
        _emit(exc.report.to_records())
        return EXIT_FAIL
    except (DesignLabError, ValueError, OSError) as exc:
        logger.error(str(exc))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
