"""Command-line entry point.

Exit codes: 0 success / verified, 1 a configuration survives every test,
2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .enumerator import first_survivor, verify_case, verify_theorem
from .hj_core import InvalidStringError
from .inequality import InvalidCaseError
from .rdp import cross_eliminate
from .report import (
    FIXTURES,
    case_document,
    certificate_document,
    certificate_to_dict,
    cmd_fixture,
    cmd_string,
    cmd_table,
    dumps,
    rdp_document,
)

EXIT_OK = 0
EXIT_SURVIVOR = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="hjcert",
        description="Exact invariants of Hirzebruch-Jung strings and a certified case scan.",
        parents=[fmt],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[fmt], help="reproduce the length-3 or length-2 table")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)

    p = sub.add_parser("string", parents=[fmt], help="profile of one string, e.g. 2,4,2")
    p.add_argument("entries")

    p = sub.add_parser("case", parents=[fmt], help="reports for one value of c2")
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--strict-paper", action="store_true", help="disable the (f*K_S)^2 > 0 filter")

    p = sub.add_parser("verify", parents=[fmt], help="run the full scan and emit a certificate")
    p.add_argument("--strict-paper", action="store_true", help="disable the (f*K_S)^2 > 0 filter")
    p.add_argument("--out", type=Path, help="write the structured certificate here")
    p.add_argument("--c2", type=int, action="append", help="restrict to these c2 values")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    sub.add_parser("rdp", parents=[fmt], help="rational double point candidates")

    p = sub.add_parser("fixture", parents=[fmt], help="check a known counterexample configuration")
    p.add_argument("name", choices=sorted(FIXTURES))
    return parser


def run(args: argparse.Namespace) -> int:
    fmt = getattr(args, "format", "text")
    out = sys.stdout

    if args.command == "table":
        out.write(cmd_table(args.which, fmt).render())
        return EXIT_OK
    if args.command == "string":
        out.write(cmd_string(args.entries, fmt).render())
        return EXIT_OK
    if args.command == "fixture":
        out.write(cmd_fixture(args.name, fmt).render())
        return EXIT_OK
    if args.command == "rdp":
        out.write(rdp_document(cross_eliminate(), fmt).render())
        return EXIT_OK
    if args.command == "case":
        reports = verify_case(args.c2, positivity=not args.strict_paper, r=args.r)
        out.write(case_document(reports, fmt).render())
        return EXIT_OK if all(rep.all_eliminated for rep in reports) else EXIT_SURVIVOR

    # verify
    if args.jobs < 1:
        raise InvalidCaseError("--jobs must be at least 1")
    cert = verify_theorem(positivity=not args.strict_paper, jobs=args.jobs, c2_values=args.c2)
    if args.out is not None:
        text = dumps(certificate_to_dict(cert))
        try:
            args.out.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            print(f"hjcert: cannot write certificate: {exc}", file=sys.stderr)
            return EXIT_IO
    out.write(certificate_document(cert, fmt).render())
    if not cert.verdict:
        rep, cfg = first_survivor(cert)
        print(
            f"hjcert: survivor at c2={rep.case.c2} r={rep.case.r}: {cfg}",
            file=sys.stderr,
        )
        return EXIT_SURVIVOR
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (InvalidStringError, InvalidCaseError, ValueError) as exc:
        print(f"hjcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hjcert: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
