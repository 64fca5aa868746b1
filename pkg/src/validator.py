"""Rule checks over a located model.

Every rule of the catalog in :mod:`src.rules` is checked here. Checks never
raise: each violation becomes a :class:`Diagnostic`, and the result is sorted
into a canonical order so repeated runs produce identical output.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional

from .model import Attribute, EntityType, ERModel, RelationshipType, resolve_entity
from .naming import (
    check_singular_heuristic,
    expected_key_name,
    forbidden_characters,
    has_whitespace,
    is_camel_case,
    key_has_prefix,
)
from .rules import Diagnostic, Severity
from .source import (
    LocatedModel,
    entity_attr_path,
    entity_path,
    iter_element_paths,
    key_group_path,
    participant_path,
    rel_attr_path,
    rel_path,
)

logger = logging.getLogger(__name__)


class _RuleRunner:
    """Collects diagnostics for one model."""

    def __init__(self, located: LocatedModel, plural_exceptions: Optional[FrozenSet[str]]):
        self.located = located
        self.model: ERModel = located.model
        self.plural_exceptions = plural_exceptions
        self.diagnostics: List[Diagnostic] = []

    def emit(
        self, rule_id: str, path: str, message: str, span_path: Optional[str] = None
    ) -> None:
        """Record a diagnostic at ``path``, positioned at ``span_path`` if given."""
        logger.debug(f"{rule_id} at {path}: {message}")
        self.diagnostics.append(
            Diagnostic.create(
                rule_id, path, message, self.located.span_of(span_path or path)
            )
        )

    def check_names(self, name: str, path: str, kind: str, singular: bool) -> None:
        symbols = forbidden_characters(name)
        if symbols:
            self.emit(
                "R-NAME-3",
                path,
                f"{kind} name {name!r} contains forbidden characters: "
                f"{' '.join(repr(ch) for ch in symbols)}",
            )
        if has_whitespace(name):
            self.emit("R-NAME-4", path, f"{kind} name {name!r} contains spaces")
        if not is_camel_case(name):
            self.emit(
                "R-NAME-1",
                path,
                f"{kind} name {name!r} is not CamelCase (Capital followed by lower case per word)",
            )
        if singular and check_singular_heuristic(name, self.plural_exceptions):
            self.emit("R-NAME-2", path, f"{kind} name {name!r} looks plural")

    def run(self) -> List[Diagnostic]:
        pool = [e.name for e in self.model.regular_entities]
        seen_folded: Dict[str, str] = {}
        for entity in self.model.entities:
            self.check_entity(entity, pool)
            folded = entity.name.casefold()
            if folded in seen_folded and seen_folded[folded] != entity.name:
                self.emit(
                    "R-REG-4",
                    entity_path(entity.name),
                    f"entity name {entity.name!r} differs from {seen_folded[folded]!r} "
                    "only in letter case",
                )
            seen_folded.setdefault(folded, entity.name)
        for rel in self.model.relationships:
            self.check_relationship(rel)
        return self.diagnostics

    def check_entity(self, entity: EntityType, pool: List[str]) -> None:
        path = entity_path(entity.name)
        self.check_names(entity.name, path, "entity", singular=True)

        if not entity.is_weak and not entity.is_subtype:
            if not entity.keys and not entity.key_groups:
                self.emit(
                    "R-REG-1", path, f"regular entity {entity.name!r} has no key attribute"
                )
            elif entity.keys and not key_has_prefix(entity, pool):
                key = entity.designated_key
                assert key is not None
                self.emit(
                    "R-KEY-1",
                    entity_attr_path(entity.name, key.name),
                    f"key {key.name!r} of entity {entity.name!r} should be named "
                    f"{expected_key_name(entity, pool)!r}",
                )

        for index, group in enumerate(entity.key_groups):
            self.emit(
                "R-REG-3",
                path,
                f"entity {entity.name!r} combines {', '.join(group)} into one key; "
                "a key must be a single attribute",
                span_path=key_group_path(entity.name, index),
            )

        for attr in entity.attributes:
            self.check_entity_attribute(entity, attr)

        if entity.is_subtype:
            self.check_subtype(entity)
        if entity.is_weak:
            self.check_weak(entity)

    def check_entity_attribute(self, entity: EntityType, attr: Attribute) -> None:
        path = entity_attr_path(entity.name, attr.name)
        self.check_names(attr.name, path, "attribute", singular=True)
        if attr.is_key and attr.is_multivalued:
            self.emit(
                "R-REG-2", path, f"key attribute {attr.name!r} must not be multivalued"
            )
        if attr.is_key and entity.is_weak:
            self.emit(
                "R-WEAK-1",
                path,
                f"weak entity {entity.name!r} must not have key attribute {attr.name!r}",
            )

    def check_subtype(self, entity: EntityType) -> None:
        path = entity_path(entity.name)
        if resolve_entity(self.model, entity.supertype_name or "") is None:
            self.emit(
                "R-SUB-2",
                path,
                f"subtype {entity.name!r} refers to undeclared supertype "
                f"{entity.supertype_name!r}",
            )
        if not entity.attributes and not self.model.relationships_of(entity.name):
            self.emit(
                "R-SUB-1",
                path,
                f"subtype {entity.name!r} has no own attribute and takes part "
                "in no relationship",
            )

    def check_weak(self, entity: EntityType) -> None:
        identifying = self.model.identifying_relationships_of(entity.name)
        if len(identifying) != 1:
            self.emit(
                "R-WEAK-2",
                entity_path(entity.name),
                f"weak entity {entity.name!r} takes part in {len(identifying)} "
                "identifying relationships, expected exactly 1",
            )
            return
        owners = [
            owner
            for name in self.model.owners_of(entity.name)
            if (owner := resolve_entity(self.model, name)) is not None
            and not owner.is_weak
        ]
        if not owners:
            self.emit(
                "R-WEAK-2",
                entity_path(entity.name),
                f"identifying relationship {identifying[0].name!r} of weak entity "
                f"{entity.name!r} has no regular owner",
            )

    def check_relationship(self, rel: RelationshipType) -> None:
        path = rel_path(rel.name)
        self.check_names(rel.name, path, "relationship", singular=False)

        if rel.arity < 2:
            self.emit(
                "R-REL-ARITY",
                path,
                f"relationship {rel.name!r} has {rel.arity} participant(s), "
                "expected at least 2",
            )
        for index, part in enumerate(rel.participants):
            if not part.cardinality.is_well_formed():
                self.emit(
                    "R-CARD-1",
                    participant_path(rel.name, index),
                    f"cardinality {part.cardinality} of {part.entity_name!r} in "
                    f"{rel.name!r} violates min <= max and max >= 1",
                )
        if rel.is_identifying:
            weak = [
                p
                for p in rel.participants
                if (e := resolve_entity(self.model, p.entity_name)) is not None
                and e.is_weak
            ]
            if len(weak) != 1:
                self.emit(
                    "R-WEAK-2",
                    path,
                    f"identifying relationship {rel.name!r} has {len(weak)} weak "
                    "participants, expected exactly 1",
                )
        for attr in rel.attributes:
            self.check_names(
                attr.name, rel_attr_path(rel.name, attr.name), "attribute", singular=True
            )


def validate(
    located: LocatedModel, plural_exceptions: Optional[FrozenSet[str]] = None
) -> List[Diagnostic]:
    """Run the whole rule catalog over a model.

    Args:
        located: The model and its source spans (empty for JSON input).
        plural_exceptions: Singular words ending in "s" for R-NAME-2; the
            shipped list when None.

    Returns:
        List[Diagnostic]: All violations ordered by file, line, column and
            rule id; spanless diagnostics follow declaration order.
    """
    diagnostics = _RuleRunner(located, plural_exceptions).run()
    ordinals = {path: i for i, path in enumerate(iter_element_paths(located.model))}

    def sort_key(d: Diagnostic) -> tuple:
        ordinal = ordinals.get(d.location, len(ordinals))
        if d.span is not None:
            return (0, d.span.file, d.span.line, d.span.column, d.rule_id, ordinal)
        return (1, "", 0, 0, ordinal, d.rule_id)

    diagnostics.sort(key=sort_key)
    counts = count_by_severity(diagnostics)
    logger.info(
        f"Validated '{located.file or located.model.name}': "
        f"{counts[Severity.ERROR.value]} errors, {counts[Severity.WARNING.value]} warnings"
    )
    return diagnostics


def has_errors(diagnostics: Iterable[Diagnostic], strict: bool = False) -> bool:
    """Tell whether diagnostics should fail a run.

    Args:
        diagnostics: Validator output.
        strict: Count warnings as failures too.

    Returns:
        bool: True when any Error (or, in strict mode, any diagnostic) exists.
    """
    return any(d.is_error or strict for d in diagnostics)


def count_by_severity(diagnostics: Iterable[Diagnostic]) -> Dict[str, int]:
    """Count diagnostics per severity; both severities are always present."""
    counts = {severity.value: 0 for severity in Severity}
    for d in diagnostics:
        counts[d.severity.value] += 1
    return counts
