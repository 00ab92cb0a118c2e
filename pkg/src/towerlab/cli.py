"""Command-line interface.

Exit codes: 0 success, 1 verification/oracle failure, 2 invalid input,
3 internal inconsistency flagged in a verdict's evidence.
"""

import argparse
import json
import sys

from .classifier import CaseTag, classify, classify_d
from .errors import InvalidTriple, TowerlabError
from .fixtures import verify_fixtures
from .oracle import oracle_check
from .render import render
from .search import FORMATS, SearchSpec, search

_CASE_CHOICES = {
    "1": CaseTag.CASE1,
    "2": CaseTag.CASE2,
    "3": CaseTag.CASE3,
    "4": CaseTag.CASE4,
    "22": CaseTag.TYPE_22,
    "4rank2": CaseTag.FOUR_RANK_2,
    "m": CaseTag.METACYCLIC,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="towerlab",
        description="2-class field tower classifier for Q(sqrt(2*p1*p2*q))",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one field")
    group = p_classify.add_mutually_exclusive_group(required=True)
    group.add_argument("--d", type=int, help="even radicand d = 2*p1*p2*q")
    group.add_argument("--primes", type=int, nargs=3, metavar=("P1", "P2", "Q"),
                       help="the triple itself")
    p_classify.add_argument("--format", choices=FORMATS, default="json")

    p_search = sub.add_parser("search", help="classify all triples under bounds")
    p_search.add_argument("--p-max", type=int, required=True,
                          help="upper bound for p1 and p2")
    p_search.add_argument("--q-max", type=int, required=True,
                          help="upper bound for q")
    p_search.add_argument("--case", choices=sorted(_CASE_CHOICES),
                          help="only emit verdicts with this case tag")
    p_search.add_argument("--limit", type=int, default=None,
                          help="stop after this many emitted rows")
    p_search.add_argument("--jobs", type=int, default=1,
                          help="worker processes (output order is unchanged)")
    p_search.add_argument("--format", choices=FORMATS, default="csv")

    p_verify = sub.add_parser("verify-paper",
                              help="recompute the bundled reference rows")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")

    p_oracle = sub.add_parser("oracle-check",
                              help="cross-check class numbers via TOWERLAB_ORACLE_CMD")
    p_oracle.add_argument("--d", type=int, action="append", default=None,
                          help="restrict to these reference d values (repeatable)")
    p_oracle.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_classify(args) -> int:
    try:
        if args.d is not None:
            verdict = classify_d(args.d)
        else:
            p1, p2, q = args.primes
            verdict = classify(p1, p2, q)
    except InvalidTriple as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render([verdict], args.format))
    if verdict.evidence.get("inconsistencies"):
        print("internal inconsistency flagged; see evidence", file=sys.stderr)
        return 3
    return 0


def _cmd_search(args) -> int:
    try:
        spec = SearchSpec(
            p_max=args.p_max, q_max=args.q_max,
            case=_CASE_CHOICES[args.case] if args.case else None,
            limit=args.limit, jobs=args.jobs, fmt=args.format,
        )
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(search(spec), spec.fmt))
    return 0


def _cmd_verify(args) -> int:
    report = verify_fixtures()
    failures = 0
    for label, mismatches in report:
        if mismatches:
            failures += 1
    if args.format == "json":
        payload = [
            {"row": label, "ok": not mism,
             "mismatches": {k: {"expected": v[0], "got": v[1]}
                            for k, v in mism.items()}}
            for label, mism in report
        ]
        print(json.dumps(payload, indent=2, default=str))
    else:
        for label, mismatches in report:
            if mismatches:
                detail = "; ".join(
                    f"{col}: expected {exp} got {got}"
                    for col, (exp, got) in mismatches.items())
                print(f"MISMATCH {label}: {detail}")
            else:
                print(f"ok {label}")
        print(f"{len(report) - failures}/{len(report)} rows verified")
    return 1 if failures else 0


def _cmd_oracle(args) -> int:
    from .fixtures import FIXTURE_ROWS

    rows = None
    if args.d:
        wanted = set(args.d)
        rows = [r for r in FIXTURE_ROWS if r.d in wanted]
        missing = wanted - {r.d for r in rows}
        if missing:
            print(f"invalid input: unknown reference d {sorted(missing)}",
                  file=sys.stderr)
            return 2
    report = oracle_check(rows=rows)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        if report["status"] == "skipped":
            print(f"skipped: {report['reason']}")
        for entry in report["checks"]:
            line = (f"{entry['status']} d={entry['d']} {entry['column']}: "
                    f"computed {entry['computed']}")
            if "oracle" in entry:
                line += f" oracle {entry['oracle']}"
            if "detail" in entry:
                line += f" ({entry['detail']})"
            print(line)
        if report["checks"]:
            print(f"status: {report['status']}")
    return 0 if report["status"] in ("ok", "skipped") else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "classify": _cmd_classify,
        "search": _cmd_search,
        "verify-paper": _cmd_verify,
        "oracle-check": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except TowerlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
