"""Command-line front end.

Machine-readable JSON goes to stdout (deterministic, sorted keys, exact
numbers); human summaries and timing go to stderr.  Exit codes: 0 = query
answered (including "no"/"avoiding"), 1 = a property violation found by a
verification run, 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from fractions import Fraction

from . import jsonio
from .carrier import GroundSet, parse_predicate
from .density import check_density_monotonicity, upper_density
from .embed import fe_decide, fe_probe
from .errors import BudgetError, InputError
from .prsearch import (find_avoiding_coloring, homogeneous_pr_check,
                       parse_pattern, parse_polynomial, ramsey_threshold)
from .rich import (is_piecewise_syndetic_window, is_thick_window, longest_ap,
                   longest_gap_grid, longest_poly_progression)
from .verify import run_suite

DEFAULT_BUDGET_ENV = "FINEMBED_BUDGET"


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="finembed",
        description="finite embeddability, richness, density and "
                    "partition-regularity searches on semigroup windows")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="decide A <=_F B with witnesses")
    p.add_argument("--set-a", required=True)
    p.add_argument("--set-b", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--probes", help="probe sizes for predicate A, e.g. 3,5,8")
    p.add_argument("--bound", type=int, help="bounded-scan magnitude cap")

    p = sub.add_parser("rich", help="structure detectors with certificates")
    p.add_argument("--set", required=True, dest="set_path")
    p.add_argument("--detect", required=True,
                   choices=["ap", "gap", "poly", "thick", "ps"])
    p.add_argument("--zero-based", action="store_true",
                   help="zero-based grid convention for --detect gap")
    p.add_argument("--d", type=int, default=2, help="polynomial degree cap")
    p.add_argument("--D", default="0,1", help="coefficient indices, e.g. 0,2")
    p.add_argument("--s-coeffs", default="all",
                   help="coefficient predicate for --detect poly")
    p.add_argument("--g", type=int, default=2, help="gap bound for --detect ps")
    p.add_argument("--probes", default="1,2,4,8",
                   help="interval lengths for --detect thick")
    p.add_argument("--spans", default="4,8,16",
                   help="span probes for --detect ps")

    p = sub.add_parser("density", help="generalized upper density reports")
    p.add_argument("action", nargs="?", default="report",
                   choices=["report", "verify-monotone"])
    p.add_argument("--set", dest="set_path")
    p.add_argument("--net", default="interval:100")
    p.add_argument("--tail", type=int, default=1)
    p.add_argument("--pairs")
    p.add_argument("--family")
    p.add_argument("--tol", default="0.02")

    p = sub.add_parser("pr", help="partition-regularity searches")
    prsub = p.add_subparsers(dest="pr_command", required=True)
    q = prsub.add_parser("search", help="avoiding coloring / forced record")
    q.add_argument("--pattern", required=True)
    q.add_argument("--colors", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q = prsub.add_parser("threshold", help="least forced N")
    q.add_argument("--pattern", required=True)
    q.add_argument("--colors", type=int, required=True)
    q.add_argument("--nmax", type=int, required=True)
    q = prsub.add_parser("equation", help="homogeneous equation experiment")
    q.add_argument("--poly", required=True)
    q.add_argument("--colors", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--distinct", action="store_true",
                   help="require pairwise distinct solution entries")
    q.add_argument("--strict-homogeneous", action="store_true",
                   help="reject non-homogeneous polynomials")

    p = sub.add_parser("verify", help="run the seeded property suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget",
                   default=os.environ.get(DEFAULT_BUDGET_ENV, "small"))
    return top


def _cmd_embed(args) -> tuple[dict, int]:
    a = jsonio.ground_set_from_json(jsonio.load_json(args.set_a))
    b_obj = jsonio.load_json(args.set_b)
    b = jsonio.set_body_from_json(a.window, b_obj["set"],
                                  b_obj.get("label", "B")) \
        if "window" not in b_obj else jsonio.ground_set_from_json(b_obj)
    if not a.window.compatible(b.window):
        raise InputError("set-a and set-b windows differ")
    family = jsonio.family_from_json(jsonio.load_json(args.family), a.window)
    if args.probes:
        report = fe_probe(a, b, family, _csv_ints(args.probes),
                          bound=args.bound)
        return jsonio.probe_report_to_json(report), 0
    verdict = fe_decide(a, b, family, bound=args.bound)
    return jsonio.verdict_to_json(verdict), 0


def _cmd_rich(args) -> tuple[dict, int]:
    ground = jsonio.ground_set_from_json(jsonio.load_json(args.set_path))
    if args.detect == "ap":
        return jsonio.certificate_to_json(longest_ap(ground)), 0
    if args.detect == "gap":
        cert = longest_gap_grid(ground, zero_based=args.zero_based)
        return jsonio.certificate_to_json(cert), 0
    if args.detect == "poly":
        coeffs = GroundSet.from_predicate(ground.window,
                                          parse_predicate(args.s_coeffs),
                                          label=args.s_coeffs)
        cert = longest_poly_progression(ground, args.d, coeffs,
                                        _csv_ints(args.D))
        return jsonio.certificate_to_json(cert), 0
    if args.detect == "thick":
        report = is_thick_window(ground, _csv_ints(args.probes))
        return jsonio.shift_report_to_json(report), 0
    report = is_piecewise_syndetic_window(ground, args.g,
                                          _csv_ints(args.spans))
    return jsonio.shift_report_to_json(report), 0


def _cmd_density(args) -> tuple[dict, int]:
    if args.action == "verify-monotone":
        if not args.pairs or not args.family:
            raise InputError("verify-monotone needs --pairs and --family")
        window, pairs, probes = jsonio.pairs_from_json(
            jsonio.load_json(args.pairs))
        family = jsonio.family_from_json(jsonio.load_json(args.family), window)
        net = jsonio.net_from_spec(args.net)
        report = check_density_monotonicity(
            pairs, family, net, tolerance=Fraction(args.tol), probes=probes)
        payload = jsonio.monotonicity_report_to_json(report)
        return payload, 0 if report.all_ok else 1
    if not args.set_path:
        raise InputError("density report needs --set")
    ground = jsonio.ground_set_from_json(jsonio.load_json(args.set_path))
    net = jsonio.net_from_spec(args.net)
    report = upper_density(ground, net, tail_start=args.tail)
    return jsonio.density_report_to_json(report), 0


def _cmd_pr(args) -> tuple[dict, int]:
    if args.pr_command == "search":
        cert = find_avoiding_coloring(args.n, args.colors,
                                      parse_pattern(args.pattern))
        return jsonio.coloring_to_json(cert), 0
    if args.pr_command == "threshold":
        res = ramsey_threshold(parse_pattern(args.pattern), args.colors,
                               args.nmax)
        return jsonio.threshold_to_json(res), 0
    poly = parse_polynomial(args.poly)
    cert, report = homogeneous_pr_check(
        poly, args.colors, args.n, distinct=args.distinct,
        strict=args.strict_homogeneous)
    payload = jsonio.coloring_to_json(cert)
    payload["homogeneous"] = report.homogeneous
    payload["monomial_degrees"] = list(report.monomial_degrees)
    return payload, 0


def _cmd_verify(args) -> tuple[dict, int]:
    report, ok = run_suite(args.suite, args.seed, args.budget)
    digest = hashlib.sha256(jsonio.dumps(
        {"suite": args.suite, "seed": args.seed,
         "budget": args.budget}).encode()).hexdigest()
    payload = {
        "command": ["verify", "--suite", args.suite, "--seed",
                    str(args.seed), "--budget", args.budget],
        "inputs_digest": digest,
        "seed": args.seed,
        "results": report,
    }
    return payload, 0 if ok else 1


_HANDLERS = {
    "embed": _cmd_embed,
    "rich": _cmd_rich,
    "density": _cmd_density,
    "pr": _cmd_pr,
    "verify": _cmd_verify,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.monotonic()
    try:
        payload, code = _HANDLERS[args.command](args)
    except (InputError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(jsonio.dumps(payload))
    elapsed = time.monotonic() - started
    print(f"{args.command}: done in {elapsed:.2f}s (exit {code})",
          file=sys.stderr)
    return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
