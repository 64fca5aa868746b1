"""Pretty-printer: ER model to canonical ERDL text."""

from typing import List

from .model import Attribute, EntityType, ERModel, RelationshipType
from .parser import KEYWORDS, LAX_NAME_PATTERN

INDENT = "  "


def quote_name(name: str) -> str:
    """Return a name as ERDL source, quoting it when it is not a plain name.

    Args:
        name: A model name.

    Returns:
        str: The name itself, or a double-quoted string literal.
    """
    if LAX_NAME_PATTERN.fullmatch(name) and name not in KEYWORDS:
        return name
    escaped = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def print_model(model: ERModel) -> str:
    """Print a model as canonical ERDL.

    Declarations keep model order: entities first, then relationships, one
    block each, separated by blank lines. A model without a name or
    declarations prints as empty text.

    Args:
        model: The model to print.

    Returns:
        str: ERDL source ending with a newline, or "" for an empty model.
    """
    blocks: List[str] = []
    if model.name:
        blocks.append(f"model {quote_name(model.name)}")
    blocks.extend(_entity_block(entity) for entity in model.entities)
    blocks.extend(_relationship_block(rel) for rel in model.relationships)
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"


def _attribute_line(entity: EntityType, attr: Attribute) -> str:
    words: List[str] = []
    if attr.is_key:
        words.append("key!" if attr.name == entity.most_desired_key else "key")
    elif attr.is_partial_key:
        words.append("partialkey")
    if attr.is_multivalued:
        words.append("multi")
    words.append(quote_name(attr.name))
    return INDENT + " ".join(words)


def _entity_block(entity: EntityType) -> str:
    head = "weak entity" if entity.is_weak else "entity"
    header = f"{head} {quote_name(entity.name)}"
    if entity.supertype_name is not None:
        header += f" isa {quote_name(entity.supertype_name)}"

    lines = [_attribute_line(entity, attr) for attr in entity.attributes]
    for group in entity.key_groups:
        members = ", ".join(quote_name(member) for member in group)
        lines.append(f"{INDENT}key({members})")
    if not lines:
        return header + " {}"
    return "\n".join([header + " {", *lines, "}"])


def _relationship_block(rel: RelationshipType) -> str:
    header = f"rel {quote_name(rel.name)}"
    if rel.is_identifying:
        header = "identifying " + header

    parts = [
        f"{INDENT}{quote_name(p.entity_name)} {p.cardinality}"
        for p in rel.participants
    ]
    lines = [",\n".join(parts)] if parts else []
    if rel.attributes:
        attrs = " ".join(
            ("multi " if attr.is_multivalued else "") + quote_name(attr.name)
            for attr in rel.attributes
        )
        lines.append(f"{INDENT}attrs {attrs}")
    return "\n".join([header + " {", *lines, "}"])
