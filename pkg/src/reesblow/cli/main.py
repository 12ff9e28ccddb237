"""Command-line entry point: ``reesblow [options] [SCRIPT]``."""

from __future__ import annotations

import argparse
import sys

from ..errors import ReesError
from ..polyring import Field
from .format import format_output
from .session import Options, Session

EXIT_OK, EXIT_SCRIPT, EXIT_IO = 0, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reesblow", description="Run a Rees algebra / blow-up script.")
    p.add_argument("script", nargs="?", default="-", help="script file, or - for stdin (default)")
    p.add_argument("--json", action="store_true", help="emit JSON Lines records")
    p.add_argument("--field", default="QQ", help="default coefficient field: QQ or Fp:<p>")
    p.add_argument("--order", default="grevlex", choices=["lex", "grevlex"], help="default monomial order")
    p.add_argument("--bound", type=int, default=None, help="degree bound for bounded checks")
    p.add_argument("--all-perms", action="store_true", help="regseq: test every ordering of the sequence")
    p.add_argument("--timing", action="store_true", help="include per-command timings (not deterministic)")
    p.add_argument("--log", default=None, help="write the executed statements to this file for replay")
    return p


def run_script(source: str, options: Options, out=None, err=None, json_mode: bool = False) -> tuple[int, Session]:
    out = out or sys.stdout
    err = err or sys.stderr
    session = Session(options)
    mode = "json" if json_mode else "text"
    try:
        for rec in session.iter_run(source):
            out.write(format_output(rec, mode) + "\n")
    except ReesError as exc:
        err.write(f"reesblow: error: {exc}\n")
        return EXIT_SCRIPT, session
    return EXIT_OK, session


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        Field.parse(args.field)
    except ValueError as exc:
        sys.stderr.write(f"reesblow: error: --field: {exc}\n")
        return EXIT_SCRIPT
    try:
        if args.script == "-":
            source = sys.stdin.read()
        else:
            with open(args.script, encoding="utf-8") as fh:
                source = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        sys.stderr.write(f"reesblow: cannot read {args.script}: {exc}\n")
        return EXIT_IO
    options = Options(args.field, args.order, args.bound, args.timing, args.all_perms)
    try:
        code, session = run_script(source, options, json_mode=args.json)
        sys.stdout.flush()
        if args.log:
            with open(args.log, "w", encoding="utf-8") as fh:
                fh.write(session.replay_source())
    except OSError as exc:
        sys.stderr.write(f"reesblow: I/O error: {exc}\n")
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
