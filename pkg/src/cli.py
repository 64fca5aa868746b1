"""Command-line entry point: ``erdl parse|lint|fix|transform|render``."""

import argparse
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import FrozenSet, List, Optional, Sequence

from . import __version__
from .config import ToolkitConfig, get_config
from .ddl import emit_ddl
from .errors import ModelError, ParseSyntaxError, PreconditionError
from .fixer import fix
from .naming import load_plural_exceptions
from .printer import print_model
from .renderer import RankDirection, RenderOptions, render
from .serialization import (
    diagnostics_to_jsonl,
    dump_fix_report,
    dump_json,
    dump_schema_json,
    load_located,
)
from .source import LocatedModel, SourceSpan
from .transformer import transform
from .validator import has_errors, validate

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit codes."""

    SUCCESS = 0
    LINT_ERRORS = 1
    PARSE_FAILURE = 2
    USAGE_ERROR = 3
    INTERNAL_ERROR = 4


class UsageError(Exception):
    """Bad command line or unusable file argument."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _is_json(path: str) -> bool:
    return Path(path).suffix.lower() == ".json"


def _read_source(path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseSyntaxError(
            f"input is not valid UTF-8 (byte {e.start})", SourceSpan(path, 1, 1)
        ) from e


def _write_output(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote {path}")


def _load(path: str, lenient: bool = False) -> LocatedModel:
    return load_located(_read_source(path), path, lenient=lenient)


def _plural_exceptions(
    args: argparse.Namespace, config: ToolkitConfig
) -> Optional[FrozenSet[str]]:
    path = getattr(args, "plural_exceptions", None) or config.erdl_plural_exceptions_file
    if path is None:
        return None
    try:
        return load_plural_exceptions(Path(path))
    except OSError as e:
        raise UsageError(f"cannot read plural exceptions {path}: {e}") from e


def _strict(args: argparse.Namespace, config: ToolkitConfig) -> bool:
    return bool(getattr(args, "strict", False) or config.erdl_strict)


def cmd_parse(args: argparse.Namespace, config: ToolkitConfig) -> ExitCode:
    located = _load(args.file)
    model = located.model
    sys.stdout.write(dump_json(model) if args.json else print_model(model))
    return ExitCode.SUCCESS


def cmd_lint(args: argparse.Namespace, config: ToolkitConfig) -> ExitCode:
    located = _load(args.file, lenient=True)
    diagnostics = validate(located, _plural_exceptions(args, config))
    if args.format == "jsonl":
        sys.stdout.write(diagnostics_to_jsonl(diagnostics))
    else:
        for d in diagnostics:
            sys.stdout.write(d.format_text(args.file) + "\n")
    if has_errors(diagnostics, _strict(args, config)):
        return ExitCode.LINT_ERRORS
    return ExitCode.SUCCESS


def fixed_path(path: str) -> Path:
    """Name of the repaired copy written next to ``path``.

    ``model.erdl`` becomes ``model.fixed.erdl``; JSON input keeps its suffix.
    """
    source = Path(path)
    suffix = ".json" if _is_json(path) else ".erdl"
    return source.with_name(f"{source.stem}.fixed{suffix}")


def cmd_fix(args: argparse.Namespace, config: ToolkitConfig) -> ExitCode:
    located = _load(args.file)
    exceptions = _plural_exceptions(args, config)
    fixed, report = fix(located.model, exceptions)

    output = dump_json(fixed) if _is_json(args.file) else print_model(fixed)
    target = args.file if args.in_place else str(fixed_path(args.file))
    _write_output(target, output)

    report_text = dump_fix_report(report)
    if args.report:
        _write_output(args.report, report_text)
    else:
        sys.stdout.write(report_text)

    remaining = validate(LocatedModel.unlocated(fixed, args.file), exceptions)
    if has_errors(remaining, _strict(args, config)):
        return ExitCode.LINT_ERRORS
    return ExitCode.SUCCESS


def cmd_transform(args: argparse.Namespace, config: ToolkitConfig) -> ExitCode:
    located = _load(args.file)
    exceptions = _plural_exceptions(args, config)
    diagnostics = validate(located, exceptions)
    if has_errors(diagnostics, _strict(args, config)):
        for d in diagnostics:
            sys.stderr.write(d.format_text(args.file) + "\n")
        logger.error(f"Refusing to transform {args.file}: the model has diagnostics")
        return ExitCode.LINT_ERRORS

    try:
        schema = transform(located.model, exceptions)
    except PreconditionError as e:
        logger.error(f"Cannot transform {args.file}: {e}")
        return ExitCode.LINT_ERRORS

    column_type = args.column_type or config.erdl_column_type
    _write_output(args.out, emit_ddl(schema, column_type=column_type))
    if args.schema_json:
        _write_output(args.schema_json, dump_schema_json(schema))
    return ExitCode.SUCCESS


def cmd_render(args: argparse.Namespace, config: ToolkitConfig) -> ExitCode:
    located = _load(args.file, lenient=True)
    options = RenderOptions(
        rank_direction=RankDirection(args.rankdir or config.erdl_rank_direction),
        show_cardinalities=config.erdl_show_cardinalities and not args.no_cardinalities,
    )
    _write_output(args.out, render(located.model, options))
    return ExitCode.SUCCESS


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = _ArgumentParser(
        prog="erdl",
        description="Parse, lint, fix, transform and render ERDL models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = commands.add_parser("parse", help="Print a model as canonical ERDL or JSON")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="Print canonical JSON")
    p.set_defaults(handler=cmd_parse)

    p = commands.add_parser("lint", help="Check a model against the rule catalog")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "jsonl"], default="text")
    p.add_argument("--plural-exceptions", help="Word list for the singular-noun rule")
    p.add_argument("--strict", action="store_true", help="Fail on warnings too")
    p.set_defaults(handler=cmd_lint)

    p = commands.add_parser("fix", help="Repair fixable diagnostics")
    p.add_argument("file")
    p.add_argument("--in-place", action="store_true", help="Overwrite the input instead of writing NAME.fixed.erdl")
    p.add_argument("--report", help="Write the fix report JSON to this file")
    p.add_argument("--plural-exceptions", help="Word list for the singular-noun rule")
    p.add_argument("--strict", action="store_true", help="Fail on warnings too")
    p.set_defaults(handler=cmd_fix)

    p = commands.add_parser("transform", help="Generate DDL from a conforming model")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="Output .sql file")
    p.add_argument("--schema-json", help="Also write the schema as JSON")
    p.add_argument("--column-type", help="Placeholder SQL type for every column")
    p.add_argument("--plural-exceptions", help="Word list for the singular-noun rule")
    p.add_argument("--strict", action="store_true", help="Refuse on warnings too")
    p.set_defaults(handler=cmd_transform)

    p = commands.add_parser("render", help="Draw a model as DOT")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="Output .dot file")
    p.add_argument("--rankdir", choices=[d.value for d in RankDirection])
    p.add_argument("--no-cardinalities", action="store_true", help="Omit (min,max) labels")
    p.set_defaults(handler=cmd_render)

    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        encoding="utf-8",
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` when None.

    Returns:
        int: An :class:`ExitCode` value.
    """
    parser = build_parser()
    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(arguments)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"erdl: error: {e}\n")
        return ExitCode.USAGE_ERROR
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    try:
        config = get_config()
    except ValueError as e:
        sys.stderr.write(f"erdl: configuration error: {e}\n")
        return ExitCode.USAGE_ERROR
    _configure_logging(config.erdl_log_level)

    try:
        return int(args.handler(args, config))
    except UsageError as e:
        sys.stderr.write(f"erdl: error: {e}\n")
        return ExitCode.USAGE_ERROR
    except ModelError as e:
        sys.stderr.write(f"{e}\n")
        logger.error(f"Failed to load {args.file}: {e.message}")
        return ExitCode.PARSE_FAILURE
    except Exception as e:
        logger.error(f"Internal error: {e}", exc_info=True)
        return ExitCode.INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
