"""Command-line interface: ``tieml validate|timeline|convert|stats``.

Exit status: 0 clean, 1 content or validation error, 2 I/O or usage error.
A path of ``-`` reads standard input. ``TIEML_LENIENT=1`` acts as ``--lenient``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .convert import (
    ConllFormatError,
    ConversionError,
    JsonFormatError,
    from_conll,
    from_json,
    from_timeml,
    timeml_export_losses,
    timeml_from_xml,
    timeml_to_xml,
    to_conll,
    to_json,
    to_timeml,
)
from .model import Corpus
from .stats import CorpusStats
from .timeline import build_timeline, inversion_count
from .validator import Diagnostic, Severity, validate
from .xmlio import ParseError, parse, serialize

EXIT_OK, EXIT_CONTENT, EXIT_IO = 0, 1, 2
FORMATS = ("tieml", "timeml", "conll", "json")


class InputError(OSError):
    pass


def read_input(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: cannot read: {exc}") from None


def write_output(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _lenient(args) -> bool:
    return args.lenient or os.environ.get("TIEML_LENIENT") == "1"


@dataclass
class FileResult:
    path: str
    corpus: Optional[Corpus] = None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    warnings: list[ParseError] = field(default_factory=list)
    parse_error: Optional[ParseError] = None
    io_error: Optional[str] = None

    @property
    def status(self) -> int:
        if self.io_error:
            return EXIT_IO
        if self.parse_error or any(d.is_error for d in self.diagnostics):
            return EXIT_CONTENT
        return EXIT_OK


def load_file(path: str, lenient: bool, raw: bool, check: bool = True) -> FileResult:
    result = FileResult(path)
    try:
        text = read_input(path)
    except InputError as exc:
        result.io_error = str(exc)
        return result
    try:
        result.corpus = parse(text, lenient=lenient, preserve_whitespace=raw,
                              warnings=result.warnings)
    except ParseError as exc:
        result.parse_error = exc
        return result
    if check:
        result.diagnostics = validate(result.corpus)
    return result


def load_all(paths, args, check: bool = True) -> list[FileResult]:
    lenient, raw = _lenient(args), args.raw_whitespace
    jobs = max(1, getattr(args, "jobs", 1) or 1)
    if jobs == 1 or len(paths) < 2:
        return [load_file(p, lenient, raw, check) for p in paths]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map() yields in input order, whatever the completion order
        return list(pool.map(lambda p: load_file(p, lenient, raw, check), paths))


def _parse_error_line(path: str, exc: ParseError, prefix: str = "") -> str:
    return f"{path}:{exc.line}:{exc.column}: {prefix}{exc.kind.value}: {exc.detail}"


def _file_report(result: FileResult) -> dict:
    report = {"file": result.path, "status": result.status}
    if result.io_error:
        report["io_error"] = result.io_error
    if result.parse_error:
        e = result.parse_error
        report["parse_error"] = {"kind": e.kind.value, "line": e.line,
                                 "column": e.column, "detail": e.detail}
    report["warnings"] = [
        {"kind": w.kind.value, "line": w.line, "column": w.column, "detail": w.detail}
        for w in result.warnings
    ]
    report["diagnostics"] = [d.to_dict() for d in result.diagnostics]
    return report


def cmd_validate(args) -> int:
    results = load_all(args.paths, args)
    if args.format == "json":
        print(json.dumps([_file_report(r) for r in results], ensure_ascii=False, indent=2))
    else:
        for r in results:
            if r.io_error:
                print(r.io_error)
                continue
            for w in r.warnings:
                print(_parse_error_line(r.path, w, "warning: "))
            if r.parse_error:
                print(_parse_error_line(r.path, r.parse_error))
                continue
            for d in r.diagnostics:
                print(d.format_line(r.path))
        counts = {s: sum(d.severity is s for r in results for d in r.diagnostics) for s in Severity}
        print(f"{len(results)} file(s): {counts[Severity.ERROR]} error(s), "
              f"{counts[Severity.WARNING]} warning(s), {counts[Severity.INFO]} info",
              file=sys.stderr)
    return max((r.status for r in results), default=EXIT_OK)


def cmd_timeline(args) -> int:
    (result,) = load_all([args.path], args)
    if result.io_error:
        print(result.io_error, file=sys.stderr)
        return EXIT_IO
    if result.parse_error:
        print(_parse_error_line(result.path, result.parse_error), file=sys.stderr)
        return EXIT_CONTENT
    errors = [d for d in result.diagnostics if d.is_error]
    if errors:
        for d in errors:
            print(d.format_line(result.path), file=sys.stderr)
        return EXIT_CONTENT

    out = []
    for document in result.corpus.documents:
        timeline = build_timeline(document)
        inversions = inversion_count(timeline)
        if args.format == "json":
            out.append({"id": document.id, **timeline.to_dict(),
                        "inversions": inversions, "monotone": inversions == 0})
            continue
        print(f"# {result.path} document {document.id}")
        if not timeline.slots:
            print("no timeline: no clause carries a timeslot")
            continue
        print(timeline.to_tiers())
        if inversions:
            print(f"warning: {inversions} inversion(s): presentation order "
                  "differs from temporal order")
    if args.format == "json":
        print(json.dumps({"file": result.path, "documents": out}, ensure_ascii=False))
    return EXIT_OK


def _read_corpus(fmt: str, text: str, args):
    """Returns (corpus, loss report or None)."""
    if fmt == "tieml":
        return parse(text, lenient=_lenient(args), preserve_whitespace=args.raw_whitespace), None
    if fmt == "json":
        return from_json(text), None
    if fmt == "conll":
        return from_conll(text), None
    return from_timeml(timeml_from_xml(text))


def _write_corpus(fmt: str, corpus: Corpus):
    if fmt == "tieml":
        return serialize(corpus), None
    if fmt == "json":
        return to_json(corpus) + "\n", None
    if fmt == "conll":
        return to_conll(corpus), None
    return timeml_to_xml(to_timeml(corpus)), timeml_export_losses(corpus)


def cmd_convert(args) -> int:
    try:
        text = read_input(args.path)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    try:
        corpus, import_losses = _read_corpus(args.source, text, args)
        output, export_losses = _write_corpus(args.to, corpus)
    except ParseError as exc:
        print(_parse_error_line(args.path, exc), file=sys.stderr)
        return EXIT_CONTENT
    except (ConversionError, JsonFormatError, ConllFormatError, ValueError) as exc:
        print(f"{args.path}: conversion failed: {exc}", file=sys.stderr)
        return EXIT_CONTENT
    try:
        write_output(args.out, output)
        losses = import_losses or export_losses
        if losses is not None:
            sidecar = args.loss_report
            if sidecar is None and args.out not in (None, "-"):
                sidecar = args.out + ".loss.json"
            if sidecar:
                write_output(sidecar, losses.to_json() + "\n")
            else:
                print(f"{len(losses)} loss record(s); use --loss-report to save them",
                      file=sys.stderr)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_stats(args) -> int:
    results = load_all(args.paths, args, check=False)
    status = EXIT_OK
    stats = CorpusStats()
    for r in results:
        if r.io_error:
            print(r.io_error, file=sys.stderr)
            status = max(status, EXIT_IO)
        elif r.parse_error:
            print(_parse_error_line(r.path, r.parse_error), file=sys.stderr)
            status = max(status, EXIT_CONTENT)
        else:
            stats.add(r.corpus)
    if status != EXIT_OK:
        return status
    if args.format == "json":
        print(json.dumps(stats.to_dict(), ensure_ascii=False, sort_keys=True))
    else:
        print(stats.to_table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tieml", description="Check and convert TIE-ML annotated corpora.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lenient", action="store_true",
                        help="report unknown attributes as warnings instead of errors")
    common.add_argument("--raw-whitespace", action="store_true",
                        help="keep clause text exactly as written")

    p = sub.add_parser("validate", parents=[common], help="check files for schema and coherence errors")
    p.add_argument("paths", nargs="+")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", "-j", type=int, default=1, help="files to process in parallel")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("timeline", parents=[common], help="show event timelines")
    p.add_argument("path")
    p.add_argument("--format", choices=("tiers", "json"), default="tiers")
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("convert", parents=[common], help="convert between formats")
    p.add_argument("path")
    p.add_argument("--from", dest="source", choices=FORMATS, default="tieml")
    p.add_argument("--to", choices=FORMATS, required=True)
    p.add_argument("--out", "-o", help="output file (default: standard output)")
    p.add_argument("--loss-report", help="where to write the TimeML loss report "
                   "(default: OUT.loss.json)")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("stats", parents=[common], help="corpus statistics")
    p.add_argument("paths", nargs="+")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "convert" and args.source == args.to == "timeml":
        parser.error("convert: timeml to timeml is not a supported pair")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
