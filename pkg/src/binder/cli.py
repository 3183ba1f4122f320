"""Command-line entry point: ``binder check`` and ``binder corpus``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .io import DocumentError, _lang, _Reader, parse_document
from .model import BUILTIN_LANGS
from .pipeline import EXIT_INPUT, CheckFlags, run_check, run_corpus, text_report
from .transitivity import DEFAULT_ISUM_CAP


def _load_lang(value: str):
    if value in BUILTIN_LANGS:
        return BUILTIN_LANGS[value]
    path = Path(value)
    if not path.is_file():
        raise DocumentError("E-ENUM", f"{value!r} is neither a known language nor a file", key=value)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError("E-JSON", e.msg, e.lineno, e.colno) from None
    return _lang(_Reader(text), raw)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="binder", description="Binding constraints over annotated discourses.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", help="language name or JSON file with a lang object")
    common.add_argument("--no-reverse", action="store_true", help="disable R-Principles E and V")
    common.add_argument("--no-transitivity", action="store_true", help="skip coreference transitivity")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-isum", type=int, default=DEFAULT_ISUM_CAP, metavar="K",
                        help="largest candidate list expanded into i-sums")
    c = sub.add_parser("check", parents=[common], help="check one document")
    c.add_argument("path")
    c.add_argument("--dump-lists", action="store_true", help="include LIST-A/Z/U/LU for every node")
    k = sub.add_parser("corpus", parents=[common], help="run every document matching a glob")
    k.add_argument("glob", nargs="?", help="defaults to the shipped corpus")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        flags = CheckFlags(
            lang=_load_lang(args.lang) if args.lang else None,
            dump_lists=getattr(args, "dump_lists", False),
            reverse=not args.no_reverse,
            transitivity=not args.no_transitivity,
            max_isum=args.max_isum,
        )
        if args.command == "check":
            res = run_check(parse_document(args.path), flags)
            out = res.report
            code = res.exit_code
        else:
            summary = run_corpus(args.glob, flags)
            out = summary.as_dict()
            code = summary.exit_code
    except DocumentError as e:
        if args.format == "json":
            print(json.dumps({"error": e.as_dict()}, indent=1), file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(out, indent=1, ensure_ascii=False))
    elif args.command == "check":
        print(text_report(out))
    else:
        print(f"{out['passed']}/{out['files']} documents pass")
        for table in ("by_principle", "by_lang"):
            for key, row in sorted(out[table].items()):
                print(f"  {key}: {row['pass']} pass, {row['fail']} fail")
        for path, msgs in out["details"].items():
            print(f"FAIL {path}")
            for m in msgs:
                print(f"  {m}")
        for path, msg in out["errors"].items():
            print(f"ERROR {path}: {msg}")
    return code


if __name__ == "__main__":
    sys.exit(main())
