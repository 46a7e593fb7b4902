"""sasaki-cone <run|validate|brieskorn|compare> command-line front end.

Exit codes: 0 success, 1 comparison mismatch, 2 invalid scenario or input,
3 computation ceiling exceeded, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .admissible import SetupError
from .brieskorn import bound_is_stable, enumerate_regular_positive, is_regular, positivity_and_index, weights_from_exponents
from .cone import DegreeCeilingExceeded, UnresolvedEnclosure
from .exact_algebra import as_rat
from .extremal import NonPolynomialResidue
from .integrals import QuadratureError
from .reports import RunOptions, bundled_scenarios, compare_reports, dumps_report, load_scenario, run_scenario, write_artifacts

EXIT_OK, EXIT_DIFF, EXIT_INVALID, EXIT_CEILING, EXIT_IO = 0, 1, 2, 3, 4


def _err(msg: str) -> None:
    print(f"sasaki-cone: {msg}", file=sys.stderr)


def _options(args) -> RunOptions:
    threads = args.threads
    env = os.environ.get("SASAKI_CONE_THREADS")
    if env:
        threads = int(env)
    return RunOptions(
        precision=args.precision,
        refine_width=as_rat(args.refine_width),
        degree_ceiling=args.degree_ceiling,
        threads=max(1, threads),
    )


def _rational_arg(text: str) -> Fraction:
    try:
        v = as_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sasaki-cone", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON path or bundled scenario name")
    common.add_argument("--precision", type=int, default=256, help="bits for the numeric backend (>= 64)")
    common.add_argument("--refine-width", type=_rational_arg, default=Fraction(1, 10**12), help="root enclosure width, e.g. 1e-12 or 1/1000000 (read exactly)")
    common.add_argument("--degree-ceiling", type=int, default=512)
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("run", parents=[common], help="run a scenario and write report.json (+ cone.csv / cone.svg)")
    sub.add_parser("validate", parents=[common], help="parse a scenario and report hypotheses")
    b = sub.add_parser("brieskorn", parents=[common], help="Brieskorn-Pham weights or enumeration")
    b.add_argument("--n", type=int, choices=(3, 4), help="enumerate regular positive links")
    b.add_argument("--exponents", help="comma separated exponents, e.g. 6,6,6,3,2")
    b.add_argument("--d0", type=int, default=None)
    c = sub.add_parser("compare", parents=[common], help="compare a report against a reference report")
    c.add_argument("report")
    c.add_argument("reference")
    c.add_argument("--rel-tol", type=float, default=1e-9)
    sub.add_parser("list", help="list bundled scenarios")
    return ap


def _cmd_run(args, validate_only: bool = False) -> int:
    if not args.scenario:
        _err("--scenario is required")
        return EXIT_INVALID
    if args.precision < 64:
        _err("--precision must be at least 64")
        return EXIT_INVALID
    try:
        sc = load_scenario(args.scenario)
    except SetupError as exc:
        _err(f"invalid scenario: {exc}")
        return EXIT_INVALID
    except OSError as exc:
        _err(f"cannot read scenario: {exc}")
        return EXIT_IO
    opts = _options(args)
    if validate_only:
        sc.tasks = ["validate"]
        print(dumps_report(run_scenario(sc, opts)), end="")
        return EXIT_OK
    try:
        report = run_scenario(sc, opts)
    except SetupError as exc:
        _err(f"invalid scenario: {exc}")
        return EXIT_INVALID
    except (DegreeCeilingExceeded, UnresolvedEnclosure, QuadratureError, NonPolynomialResidue) as exc:
        _err(f"computation ceiling exceeded: {exc}")
        return EXIT_CEILING
    try:
        paths = write_artifacts(sc, report, Path(args.out), opts)
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_IO
    for p in paths:
        print(p)
    return EXIT_OK


def _cmd_brieskorn(args) -> int:
    if args.exponents:
        try:
            bd = weights_from_exponents([int(v) for v in args.exponents.split(",")])
        except ValueError as exc:
            _err(str(exc))
            return EXIT_INVALID
        out = bd.to_json()
        out["regular"] = is_regular(bd)
        out.update(positivity_and_index(bd, args.d0).to_json())
    elif args.n:
        out = {
            "n": args.n,
            "exponents": [list(a) for a in enumerate_regular_positive(args.n)],
            "bound_stable": bound_is_stable(args.n),
        }
    else:
        _err("give --n or --exponents")
        return EXIT_INVALID
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_compare(args) -> int:
    try:
        rep = json.loads(Path(args.report).read_text())
        ref = json.loads(Path(args.reference).read_text())
    except OSError as exc:
        _err(str(exc))
        return EXIT_IO
    except json.JSONDecodeError as exc:
        _err(f"schema mismatch: {exc}")
        return EXIT_INVALID
    diffs = compare_reports(rep, ref, args.rel_tol)
    for d in diffs:
        print(d)
    return EXIT_DIFF if diffs else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "validate":
        return _cmd_run(args, validate_only=True)
    if args.command == "brieskorn":
        return _cmd_brieskorn(args)
    if args.command == "compare":
        return _cmd_compare(args)
    if args.command == "list":
        print("\n".join(bundled_scenarios()))
        return EXIT_OK
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
