"""ERDL parser: text to a located ER model.

ERDL is a small line-oriented language for the notation's constructs::

    model Company

    entity Employee {
      key EmpNo
      Name
    }

    weak entity Dependent {
      partialkey Name
    }

    identifying rel DependentOf {
      Dependent (1,1),
      Employee (0,N)
    }

Names are "lax": letters, digits, ``_``, ``-`` and ``/`` are accepted, or
any text in double quotes, so that badly named models still load and the
validator can report on them.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput
from pydantic import ValidationError

from .errors import IsaCycleError, ParseSyntaxError
from .model import (
    UNBOUNDED,
    Attribute,
    Cardinality,
    EntityKind,
    EntityType,
    ERModel,
    Participation,
    RelationshipType,
    check_name,
    verify_references,
)
from .source import (
    LocatedModel,
    SourceSpan,
    entity_attr_path,
    entity_path,
    key_group_path,
    participant_path,
    rel_attr_path,
    rel_path,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: model_header? _decl*

model_header: "model" name

_decl: entity_decl | weak_decl | rel_decl

entity_decl: "entity" name isa? "{" _member* "}"
weak_decl: "weak" "entity" name isa? "{" _member* "}"
isa: "isa" name

_member: attribute | key_group
attribute: key_marker? MULTI? name
key_marker: KEY | KEY_BANG | PARTIALKEY
key_group: KEY "(" name ("," name)+ ")"

rel_decl: IDENTIFYING? "rel" name "{" participant ("," participant)* rel_attrs? "}"
participant: name "(" INT "," max_value ")"
max_value: INT | UNBOUNDED
rel_attrs: "attrs" rel_attr+
rel_attr: MULTI? name

name: LAX_NAME | QUOTED_NAME

IDENTIFYING: "identifying"
KEY: "key"
KEY_BANG.2: "key!"
PARTIALKEY: "partialkey"
MULTI: "multi"
UNBOUNDED: "N"
LAX_NAME: /[A-Za-z0-9_\-\/]+/
QUOTED_NAME: /"(?:[^"\\\n]|\\.)*"/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

# Words the printer must quote when used as names
KEYWORDS = frozenset(
    {
        "model",
        "entity",
        "weak",
        "isa",
        "rel",
        "identifying",
        "attrs",
        "key",
        "partialkey",
        "multi",
        UNBOUNDED,
    }
)
LAX_NAME_PATTERN = re.compile(r"[A-Za-z0-9_\-/]+")

_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)
_ESCAPE = re.compile(r"\\(.)")


def parse(source: str, file: str = "") -> LocatedModel:
    """Parse ERDL source into a located model.

    Args:
        source: ERDL text.
        file: Path used in spans and, without a ``model`` header, for the
            model name (its stem).

    Returns:
        LocatedModel: The model and the span of every element.

    Raises:
        ParseSyntaxError: Token or grammar violation.
        UnresolvedReferenceError: Unknown entity or key-group member.
        IsaCycleError: The Is-A graph has a cycle.
        DuplicateDeclarationError: Two entities, relationships or attributes
            of one element share a name.
    """
    try:
        tree = _PARSER.parse(source)
    except UnexpectedInput as e:
        raise _syntax_error(e, source, file) from e

    builder = _ModelBuilder(file)
    model = builder.build(tree)
    verify_references(model, spans=builder.spans)
    logger.info(
        f"Parsed '{file or '<input>'}': {len(model.entities)} entities, "
        f"{len(model.relationships)} relationships"
    )
    return LocatedModel(model=model, spans=builder.spans, file=file)


def _syntax_error(error: UnexpectedInput, source: str, file: str) -> ParseSyntaxError:
    line = getattr(error, "line", -1)
    column = getattr(error, "column", -1)
    if isinstance(error, UnexpectedCharacters):
        message = f"unexpected character {error.char!r}"
        length = 1
    elif isinstance(error, UnexpectedEOF) or (
        getattr(error, "token", None) is not None and error.token.type == "$END"
    ):
        message = "unexpected end of input"
        length = 0
    else:
        token = error.token
        expected = ", ".join(sorted(getattr(error, "expected", ()) or ()))
        message = f"unexpected {token.type} {token.value!r}"
        if expected:
            message += f"; expected one of: {expected}"
        length = len(token.value)

    if not isinstance(line, int) or line < 1:
        lines = source.split("\n")
        line = len(lines)
        column = len(lines[-1]) + 1
        length = 0
    return ParseSyntaxError(message, SourceSpan(file, line, max(column, 1), length))


def _decode_name(token: Token) -> str:
    if token.type == "QUOTED_NAME":
        return _ESCAPE.sub(r"\1", token.value[1:-1])
    return str(token.value)


class _ModelBuilder:
    """Walks the parse tree and builds model values and spans."""

    def __init__(self, file: str):
        self.file = file
        self.spans: Dict[str, SourceSpan] = {}

    def _span(self, token: Token) -> SourceSpan:
        return SourceSpan(self.file, token.line, token.column, len(token.value))

    def _name(self, tree: Tree) -> Tuple[str, Token]:
        token = tree.children[0]
        name = _decode_name(token)
        try:
            check_name(name)
        except ValueError as e:
            raise ParseSyntaxError(str(e), self._span(token)) from e
        return name, token

    def build(self, tree: Tree) -> ERModel:
        name = Path(self.file).stem if self.file else ""
        entities: List[EntityType] = []
        relationships: List[RelationshipType] = []

        for decl in tree.children:
            if decl.data == "model_header":
                name, _ = self._name(decl.children[0])
            elif decl.data in ("entity_decl", "weak_decl"):
                entities.append(self._entity(decl))
            else:
                relationships.append(self._relationship(decl))

        return ERModel(
            name=name, entities=tuple(entities), relationships=tuple(relationships)
        )

    def _entity(self, decl: Tree) -> EntityType:
        kind = EntityKind.WEAK if decl.data == "weak_decl" else EntityKind.REGULAR
        name, name_token = self._name(decl.children[0])
        self.spans[entity_path(name)] = self._span(name_token)

        supertype: Optional[str] = None
        attributes: List[Attribute] = []
        key_groups: List[Tuple[str, ...]] = []
        designated: Optional[str] = None

        for member in decl.children[1:]:
            if member.data == "isa":
                supertype, isa_token = self._name(member.children[0])
                if supertype == name:
                    raise IsaCycleError(
                        f"entity {name!r} cannot be its own supertype",
                        self._span(isa_token),
                    )
            elif member.data == "key_group":
                group = tuple(self._name(child)[0] for child in member.children[1:])
                key_token = member.children[0]
                self.spans[key_group_path(name, len(key_groups))] = self._span(
                    key_token
                )
                key_groups.append(group)
            else:
                attr, marker = self._attribute(member)
                self.spans[entity_attr_path(name, attr.name)] = self._span(
                    member.children[-1].children[0]
                )
                if marker is not None and marker.type == "PARTIALKEY" and (
                    kind is EntityKind.REGULAR
                ):
                    raise ParseSyntaxError(
                        f"partialkey {attr.name!r} is only allowed in weak entities",
                        self._span(marker),
                    )
                if marker is not None and marker.type == "KEY_BANG":
                    if designated is not None:
                        raise ParseSyntaxError(
                            f"entity {name!r} designates more than one most desired key",
                            self._span(marker),
                        )
                    designated = attr.name
                attributes.append(attr)

        try:
            return EntityType(
                name=name,
                kind=kind,
                supertype_name=supertype,
                attributes=tuple(attributes),
                most_desired_key=designated,
                key_groups=tuple(key_groups),
            )
        except ValidationError as e:
            raise ParseSyntaxError(
                _validation_message(e), self._span(name_token)
            ) from e

    def _attribute(self, member: Tree) -> Tuple[Attribute, Optional[Token]]:
        marker: Optional[Token] = None
        multivalued = False
        name = ""
        for child in member.children:
            if isinstance(child, Tree) and child.data == "key_marker":
                marker = child.children[0]
            elif isinstance(child, Token) and child.type == "MULTI":
                multivalued = True
            else:
                name, _ = self._name(child)
        marker_type = marker.type if marker is not None else None
        attr = Attribute(
            name=name,
            is_key=marker_type in ("KEY", "KEY_BANG"),
            is_partial_key=marker_type == "PARTIALKEY",
            is_multivalued=multivalued,
        )
        return attr, marker

    def _relationship(self, decl: Tree) -> RelationshipType:
        children = list(decl.children)
        identifying = False
        if isinstance(children[0], Token) and children[0].type == "IDENTIFYING":
            identifying = True
            children = children[1:]

        name, name_token = self._name(children[0])
        self.spans[rel_path(name)] = self._span(name_token)

        participants: List[Participation] = []
        attributes: List[Attribute] = []
        for child in children[1:]:
            if child.data == "participant":
                entity_name, entity_token = self._name(child.children[0])
                min_token = child.children[1]
                max_token = child.children[2].children[0]
                max_value = (
                    UNBOUNDED if max_token.type == "UNBOUNDED" else int(max_token)
                )
                self.spans[participant_path(name, len(participants))] = self._span(
                    entity_token
                )
                participants.append(
                    Participation(
                        entity_name=entity_name,
                        cardinality=Cardinality(min=int(min_token), max=max_value),
                    )
                )
            else:
                for rel_attr in child.children:
                    multivalued = any(
                        isinstance(c, Token) and c.type == "MULTI"
                        for c in rel_attr.children
                    )
                    attr_name, attr_token = self._name(rel_attr.children[-1])
                    self.spans[rel_attr_path(name, attr_name)] = self._span(
                        attr_token
                    )
                    attributes.append(
                        Attribute(name=attr_name, is_multivalued=multivalued)
                    )

        try:
            return RelationshipType(
                name=name,
                is_identifying=identifying,
                participants=tuple(participants),
                attributes=tuple(attributes),
            )
        except ValidationError as e:
            raise ParseSyntaxError(
                _validation_message(e), self._span(name_token)
            ) from e


def _validation_message(error: ValidationError) -> str:
    message = str(error.errors()[0].get("msg", error))
    return message.removeprefix("Value error, ")
