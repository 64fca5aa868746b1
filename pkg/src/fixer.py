"""Automatic repair of fixable naming and key-prefix violations.

Names are repaired in a fixed order: split on symbols, spaces and case
changes, re-case each word, concatenate, and finally rename the most
desired key of each regular entity type with the entity's key prefix.
Every rename is applied to all references (supertypes, participants, most
desired keys, key groups) so the fixed model keeps its referential
invariants.
"""

import logging
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Set, Tuple

from .errors import CollisionError
from .model import Attribute, EntityType, ERModel, RelationshipType
from .naming import (
    expected_key_name,
    forbidden_characters,
    has_whitespace,
    is_camel_case,
    key_has_prefix,
    normalize_name,
)
from .source import LocatedModel, entity_attr_path, entity_path, rel_attr_path, rel_path
from .validator import validate

logger = logging.getLogger(__name__)


class Rename(NamedTuple):
    """One applied rename.

    Attributes:
        location: Element path in the input model.
        old_name: Name before this step.
        new_name: Name after this step.
        rule_id: Fixable rule the rename repairs.
    """

    location: str
    old_name: str
    new_name: str
    rule_id: str


class SkippedFix(NamedTuple):
    """A rename that was not applied; its diagnostic stays."""

    location: str
    old_name: str
    new_name: str
    rule_id: str
    reason: str


class FixReport(NamedTuple):
    """Ledger of a fix run.

    Attributes:
        renames: Applied renames, in the order they were made.
        untouched: Number of non-fixable diagnostics left in the fixed model.
        skipped: Renames abandoned because of a collision or an unusable name.
    """

    renames: Tuple[Rename, ...]
    untouched: int
    skipped: Tuple[SkippedFix, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        """Convert to the JSON report form."""
        return {
            "renames": [
                {
                    "location": r.location,
                    "oldName": r.old_name,
                    "newName": r.new_name,
                    "ruleId": r.rule_id,
                }
                for r in self.renames
            ],
            "untouched": self.untouched,
            "skipped": [
                {
                    "location": s.location,
                    "oldName": s.old_name,
                    "newName": s.new_name,
                    "ruleId": s.rule_id,
                    "reason": s.reason,
                }
                for s in self.skipped
            ],
        }


def normalization_rule(name: str) -> str:
    """Pick the rule a name normalization repairs, symbols first."""
    if forbidden_characters(name):
        return "R-NAME-3"
    if has_whitespace(name):
        return "R-NAME-4"
    return "R-NAME-1"


def _claim(scope: Set[str], old: str, new: str, what: str) -> None:
    if new in scope:
        raise CollisionError(f"{new!r} already names another {what}")
    scope.discard(old)
    scope.add(new)


class _Fixer:
    """Applies the rename pipeline to one model."""

    def __init__(self, model: ERModel):
        self.model = model
        self.renames: List[Rename] = []
        self.skipped: List[SkippedFix] = []
        # Fixed entity name -> input entity name, and per fixed entity the
        # fixed attribute name -> input attribute name
        self.entity_origin: Dict[str, str] = {}
        self.attr_origin: Dict[str, Dict[str, str]] = {}

    def rename(
        self,
        scope: Set[str],
        old: str,
        new: str,
        location: str,
        rule_id: str,
        what: str,
    ) -> bool:
        if not new:
            reason = "name has no letters to keep"
        else:
            try:
                _claim(scope, old, new, what)
            except CollisionError as e:
                reason = e.message
            else:
                self.renames.append(Rename(location, old, new, rule_id))
                logger.debug(f"{rule_id}: {location} {old!r} -> {new!r}")
                return True
        self.skipped.append(SkippedFix(location, old, new, rule_id, reason))
        logger.warning(f"Skipped {rule_id} fix at {location}: {reason}")
        return False

    def normalize_attributes(
        self, attributes: Tuple[Attribute, ...], path_of, what: str
    ) -> Dict[str, str]:
        scope = {a.name for a in attributes}
        mapping: Dict[str, str] = {}
        for attr in attributes:
            new = normalize_name(attr.name)
            if new != attr.name and self.rename(
                scope, attr.name, new, path_of(attr.name), normalization_rule(attr.name), what
            ):
                mapping[attr.name] = new
        return mapping

    def normalize(self) -> ERModel:
        scope = {e.name for e in self.model.entities}
        entity_map: Dict[str, str] = {}
        for entity in self.model.entities:
            new = normalize_name(entity.name)
            if new != entity.name and self.rename(
                scope,
                entity.name,
                new,
                entity_path(entity.name),
                normalization_rule(entity.name),
                "entity",
            ):
                entity_map[entity.name] = new

        entities = []
        for entity in self.model.entities:
            attr_map = self.normalize_attributes(
                entity.attributes,
                lambda a, e=entity.name: entity_attr_path(e, a),
                f"attribute of {entity.name!r}",
            )
            new_name = entity_map.get(entity.name, entity.name)
            self.entity_origin[new_name] = entity.name
            self.attr_origin[new_name] = {
                attr_map.get(a.name, a.name): a.name for a in entity.attributes
            }
            entities.append(_rename_entity(entity, new_name, entity_map, attr_map))

        rel_scope = {r.name for r in self.model.relationships}
        relationships = []
        for rel in self.model.relationships:
            new_rel = normalize_name(rel.name)
            if new_rel == rel.name or not self.rename(
                rel_scope,
                rel.name,
                new_rel,
                rel_path(rel.name),
                normalization_rule(rel.name),
                "relationship",
            ):
                new_rel = rel.name
            attr_map = self.normalize_attributes(
                rel.attributes,
                lambda a, r=rel.name: rel_attr_path(r, a),
                f"attribute of {rel.name!r}",
            )
            relationships.append(_rename_relationship(rel, new_rel, entity_map, attr_map))

        return self.model.model_copy(
            update={"entities": tuple(entities), "relationships": tuple(relationships)}
        )

    def prefix_keys(self, model: ERModel) -> ERModel:
        pool = [e.name for e in model.regular_entities]
        entities = []
        for entity in model.entities:
            key = entity.designated_key
            if (
                entity.is_weak
                or entity.is_subtype
                or key is None
                or key_has_prefix(entity, pool)
            ):
                entities.append(entity)
                continue

            new = expected_key_name(entity, pool)
            origin = self.entity_origin.get(entity.name, entity.name)
            location = entity_attr_path(
                origin, self.attr_origin.get(entity.name, {}).get(key.name, key.name)
            )
            if forbidden_characters(new) or has_whitespace(new) or not is_camel_case(new):
                self.skipped.append(
                    SkippedFix(
                        location,
                        key.name,
                        new,
                        "R-KEY-1",
                        "prefixed name would break the naming rules",
                    )
                )
                logger.warning(f"Skipped R-KEY-1 fix at {location}: {new!r} is not a valid name")
                entities.append(entity)
                continue

            scope = {a.name for a in entity.attributes}
            if self.rename(
                scope, key.name, new, location, "R-KEY-1", f"attribute of {entity.name!r}"
            ):
                entity = _rename_entity(entity, entity.name, {}, {key.name: new})
            entities.append(entity)
        return model.model_copy(update={"entities": tuple(entities)})


def _rename_entity(
    entity: EntityType,
    new_name: str,
    entity_map: Dict[str, str],
    attr_map: Dict[str, str],
) -> EntityType:
    supertype = entity.supertype_name
    designated = entity.most_desired_key
    return entity.model_copy(
        update={
            "name": new_name,
            "supertype_name": entity_map.get(supertype, supertype) if supertype else None,
            "attributes": tuple(
                a.model_copy(update={"name": attr_map.get(a.name, a.name)})
                for a in entity.attributes
            ),
            "most_desired_key": attr_map.get(designated, designated) if designated else None,
            "key_groups": tuple(
                tuple(attr_map.get(member, member) for member in group)
                for group in entity.key_groups
            ),
        }
    )


def _rename_relationship(
    rel: RelationshipType,
    new_name: str,
    entity_map: Dict[str, str],
    attr_map: Dict[str, str],
) -> RelationshipType:
    return rel.model_copy(
        update={
            "name": new_name,
            "participants": tuple(
                p.model_copy(
                    update={"entity_name": entity_map.get(p.entity_name, p.entity_name)}
                )
                for p in rel.participants
            ),
            "attributes": tuple(
                a.model_copy(update={"name": attr_map.get(a.name, a.name)})
                for a in rel.attributes
            ),
        }
    )


def fix(
    model: ERModel, plural_exceptions: Optional[FrozenSet[str]] = None
) -> Tuple[ERModel, FixReport]:
    """Repair every fixable violation of a model.

    Args:
        model: A model satisfying the core-model invariants.
        plural_exceptions: Word list for counting the remaining R-NAME-2
            warnings; the shipped list when None.

    Returns:
        Tuple[ERModel, FixReport]: The fixed model and the rename ledger.
    """
    fixer = _Fixer(model)
    fixed = fixer.prefix_keys(fixer.normalize())

    remaining = validate(LocatedModel.unlocated(fixed), plural_exceptions)
    untouched = sum(1 for d in remaining if not d.fixable)
    report = FixReport(
        renames=tuple(fixer.renames),
        untouched=untouched,
        skipped=tuple(fixer.skipped),
    )
    logger.info(
        f"Fixed model {model.name!r}: {len(report.renames)} renames, "
        f"{len(report.skipped)} skipped, {untouched} non-fixable diagnostics remain"
    )
    return fixed, report
