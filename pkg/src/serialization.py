"""Canonical JSON forms: models, diagnostics, fix reports and schemas."""

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from pydantic import ValidationError

from .errors import JsonFormatError
from .model import ERModel, structural_problems, verify_references
from .parser import parse
from .source import LocatedModel

if TYPE_CHECKING:
    from .fixer import FixReport
    from .rules import Diagnostic
    from .transformer import Schema

logger = logging.getLogger(__name__)


def dump_json(model: ERModel) -> str:
    """Serialize a model to canonical JSON.

    Field names are the camelCase names of the model types, collections keep
    declaration order and an unbounded max is the string ``"N"``.

    Args:
        model: The model to serialize.

    Returns:
        str: Indented JSON text ending with a newline.
    """
    return model.model_dump_json(by_alias=True, indent=2) + "\n"


def load_json(text: str, lenient: bool = False) -> ERModel:
    """Load a model from canonical JSON and re-check its invariants.

    Args:
        text: JSON text.
        lenient: Accept models the linter should report on: unresolved
            supertypes and ill-formed structure (cardinalities, arity, weak
            entities) are left for the validator.

    Returns:
        ERModel: The loaded model.

    Raises:
        JsonFormatError: Malformed JSON, a field that does not match the
            model format, or (strict mode) an ill-formed structure.
        UnresolvedReferenceError: Unknown entity or key-group member.
        IsaCycleError: The Is-A graph has a cycle.
        DuplicateDeclarationError: Duplicate names within one scope.
    """
    try:
        model = ERModel.model_validate_json(text)
    except ValidationError as e:
        raise JsonFormatError(f"invalid model JSON: {_describe(e)}") from e

    verify_references(model, check_supertypes=not lenient)
    if not lenient:
        problems = structural_problems(model)
        if problems:
            raise JsonFormatError(problems[0])
    logger.debug(f"Loaded JSON model {model.name!r} (lenient={lenient})")
    return model


def _describe(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    message = str(first.get("msg", "invalid value")).removeprefix("Value error, ")
    return f"{location}: {message}" if location else message


def load_located(text: str, file: str = "", lenient: bool = False) -> LocatedModel:
    """Load ERDL or JSON source depending on the file suffix.

    Args:
        text: Source text.
        file: File name; a ``.json`` suffix selects the JSON loader.
        lenient: Use the lenient JSON loader (ignored for ERDL).

    Returns:
        LocatedModel: The model, with spans for ERDL input only.

    Raises:
        ModelError: Any parse or load error.
    """
    if Path(file).suffix.lower() == ".json":
        return LocatedModel.unlocated(load_json(text, lenient=lenient), file)
    return parse(text, file)


def diagnostics_to_jsonl(diagnostics: Iterable["Diagnostic"]) -> str:
    """Serialize diagnostics as JSON Lines, one object per line."""
    return "".join(json.dumps(d.to_dict()) + "\n" for d in diagnostics)


def dump_fix_report(report: "FixReport") -> str:
    """Serialize a fix report to JSON."""
    return json.dumps(report.to_dict(), indent=2) + "\n"


def dump_schema_json(schema: "Schema") -> str:
    """Serialize a relational schema to JSON mirroring the relation type."""
    return json.dumps(schema.to_dict(), indent=2) + "\n"
