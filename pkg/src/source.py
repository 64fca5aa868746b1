"""Source locations and element paths shared by the parser and the validator."""

from typing import Dict, Iterator, NamedTuple, Optional

from .model import ERModel


class SourceSpan(NamedTuple):
    """A region of an ERDL source file.

    Attributes:
        file: Path of the source file as given to the parser.
        line: 1-based line number.
        column: 1-based column number.
        length: Number of characters covered (0 for end-of-input).
    """

    file: str
    line: int
    column: int
    length: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"

    def to_dict(self) -> Dict[str, object]:
        """Convert the span to a JSON-ready dictionary."""
        return {
            "file": self.file,
            "line": self.line,
            "column": self.column,
            "length": self.length,
        }


def entity_path(entity: str) -> str:
    return f"entity:{entity}"


def entity_attr_path(entity: str, attr: str) -> str:
    return f"entity:{entity}/attr:{attr}"


def key_group_path(entity: str, index: int) -> str:
    return f"entity:{entity}/keygroup:{index}"


def rel_path(rel: str) -> str:
    return f"rel:{rel}"


def participant_path(rel: str, index: int) -> str:
    return f"rel:{rel}/participant:{index}"


def rel_attr_path(rel: str, attr: str) -> str:
    return f"rel:{rel}/attr:{attr}"


def iter_element_paths(model: ERModel) -> Iterator[str]:
    """Yield every element path of a model in declaration order.

    Entities come first (each followed by its attributes and key groups),
    then relationships (each followed by its participants and attributes).
    """
    for entity in model.entities:
        yield entity_path(entity.name)
        for attr in entity.attributes:
            yield entity_attr_path(entity.name, attr.name)
        for index in range(len(entity.key_groups)):
            yield key_group_path(entity.name, index)
    for rel in model.relationships:
        yield rel_path(rel.name)
        for index in range(len(rel.participants)):
            yield participant_path(rel.name, index)
        for attr in rel.attributes:
            yield rel_attr_path(rel.name, attr.name)


class LocatedModel(NamedTuple):
    """A model together with the source span of each of its elements.

    Attributes:
        model: The parsed ER model.
        spans: Element path to source span. Empty for models loaded
            from JSON, which carry no source positions.
        file: The file the model was read from.
    """

    model: ERModel
    spans: Dict[str, SourceSpan]
    file: str = ""

    @classmethod
    def unlocated(cls, model: ERModel, file: str = "") -> "LocatedModel":
        """Wrap a model that has no source positions."""
        return cls(model=model, spans={}, file=file)

    def span_of(self, path: str) -> Optional[SourceSpan]:
        """Return the span recorded for an element path, if any."""
        return self.spans.get(path)
