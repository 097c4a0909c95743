"""Command-line front end.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage,
parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import chow_core as cc
from . import cohomology as coh
from . import proj_bundle as pb
from . import rank_loci as rl
from .dsl import elaborate, parse
from .errors import ChowError, ParseError
from .verify import TARGETS, Report, verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"--expect wants comma-separated integers, got {text!r}") from None


def _add_sampling(p: argparse.ArgumentParser):
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=10)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chowkit", description="Exact intersection-theory checks on P^n.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the check battery for a theorem or lemma")
    v.add_argument("target", choices=TARGETS)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--json", action="store_true")
    _add_sampling(v)

    c = sub.add_parser("chow", help="characteristic classes of a bundle expression")
    c.add_argument("what", choices=("chern", "segre", "degree"))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("expr")
    c.add_argument("--json", action="store_true")
    c.add_argument("--expect", help="expected value (integer, or comma-separated coefficients)")

    b = sub.add_parser("bott", help="dimensions of H^q(P^n, Omega^p(t))")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--json", action="store_true")
    b.add_argument("--expect", help="comma-separated dimensions h^0..h^n")

    f = sub.add_parser("pfaffian", help="Pfaffian of an alternating matrix stored as JSON")
    f.add_argument("file")
    f.add_argument("--json", action="store_true")
    f.add_argument("--expect", help="expected value, e.g. 3 or -7/2")

    pr = sub.add_parser("probe", help="randomized fibre probes of the incidence correspondence")
    pr.add_argument("variant", choices=rl.VARIANTS)
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--kind", choices=("birational", "exceptional", "both"), default="both")
    pr.add_argument("--json", action="store_true")
    _add_sampling(pr)
    return ap


def _emit(report: Report, as_json: bool, text: str | None = None) -> int:
    if as_json:
        print(report.dumps())
    else:
        if text is not None:
            print(text)
        if report.checks:
            print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_verify(args) -> int:
    cfg = rl.SampleConfig(seed=args.seed, bound=args.bound, samples=args.samples)
    report = verify(args.target, args.n, cfg)
    return _emit(report, args.json)


def _cmd_chow(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    bundle = elaborate(parse(args.expr), args.n)
    params = {"n": args.n, "expr": args.expr}
    report = Report()
    if args.what == "degree":
        actual = pb.taut_degree(bundle)
        text = str(actual)
        expected = None if args.expect is None else _int_list(args.expect)
        if expected is not None:
            if len(expected) != 1:
                raise UsageError("--expect for degree takes a single integer")
            expected = expected[0]
    else:
        cls = bundle.chern if args.what == "chern" else cc.segre(bundle)
        actual = [int(x) for x in cls.coeffs]
        text = f"rank {bundle.rank}: {cls}" if args.what == "chern" else str(cls)
        expected = None if args.expect is None else _int_list(args.expect)
    report.result = {"what": args.what, **params, "rank": bundle.rank, "value": actual}
    if expected is not None:
        report.add(args.what, params, expected, actual)
    return _emit(report, args.json, text)


def _cmd_bott(args) -> int:
    table = coh.bott(args.n, args.p, args.t)
    report = Report(result={"n": args.n, "p": args.p, "t": args.t, "dims": list(table.dims)})
    if args.expect is not None:
        report.add("bott", {"n": args.n, "p": args.p, "t": args.t}, _int_list(args.expect), list(table.dims))
    return _emit(report, args.json, str(table))


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_pfaffian(args) -> int:
    try:
        M = rl.load_matrix(args.file)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file: {exc}") from None
    value = _fmt(rl.pfaffian(M))
    report = Report(result={"file": args.file, "pfaffian": value})
    if args.expect is not None:
        try:
            expected = _fmt(Fraction(args.expect))
        except ValueError:
            raise UsageError(f"--expect {args.expect!r} is not a rational number") from None
        report.add("pfaffian", {"file": args.file}, expected, value)
    return _emit(report, args.json, value)


def _cmd_probe(args) -> int:
    cfg = rl.SampleConfig(seed=args.seed, bound=args.bound, samples=args.samples)
    kinds = ("birational", "exceptional") if args.kind == "both" else (args.kind,)
    report = Report()
    details = []
    for kind in kinds:
        fn = rl.probe_birational if kind == "birational" else rl.probe_exceptional
        pr = fn(args.variant, args.n, cfg)
        details.append(pr.to_json())
        report.add(f"probe_{kind}", {"variant": args.variant, "n": args.n, "samples": cfg.samples,
                                     "seed": cfg.seed, "bound": cfg.bound},
                   "PASS", "PASS" if pr.passed else "FAIL")
    report.result = details
    text = "\n".join(f"{d['kind']}: {d['counts']}" for d in details)
    return _emit(report, args.json, text)


COMMANDS = {
    "verify": _cmd_verify,
    "chow": _cmd_chow,
    "bott": _cmd_bott,
    "pfaffian": _cmd_pfaffian,
    "probe": _cmd_probe,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ChowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
