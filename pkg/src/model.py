"""Typed in-memory representation of an entity-relationship model.

Model values are immutable pydantic models. Field aliases are the
camelCase names of the canonical JSON format (``supertypeName``,
``isKey``, ...), so ``model_dump(by_alias=True)`` is that format.
"""

import logging
import unicodedata
from enum import Enum
from typing import Annotated, Dict, List, Literal, NamedTuple, Optional, Tuple, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel

from .errors import (
    ArityError,
    DuplicateDeclarationError,
    IsaCycleError,
    ModelError,
    UnknownEntityError,
    UnresolvedReferenceError,
)

logger = logging.getLogger(__name__)

# Distinguished "no upper bound" cardinality, spelled N in ERDL and JSON
UNBOUNDED = "N"


def check_name(value: str) -> str:
    """Reject empty names and names holding control characters."""
    if not value:
        raise ValueError("name must not be empty")
    if any(unicodedata.category(ch) == "Cc" for ch in value):
        raise ValueError(f"name {value!r} contains control characters")
    return value


Name = Annotated[str, AfterValidator(check_name)]
MaxValue = Union[Annotated[int, Field(ge=0)], Literal["N"]]


class _Element(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        alias_generator=to_camel,
        populate_by_name=True,
    )


class EntityKind(str, Enum):
    """Kind of an entity type."""

    REGULAR = "Regular"
    WEAK = "Weak"


class Attribute(_Element):
    """A named property of an entity or relationship type."""

    name: Name
    is_key: bool = False
    is_partial_key: bool = False
    is_multivalued: bool = False

    @model_validator(mode="after")
    def _key_flags_exclusive(self) -> "Attribute":
        if self.is_key and self.is_partial_key:
            raise ValueError(
                f"attribute {self.name!r} cannot be both key and partial key"
            )
        return self


class Cardinality(_Element):
    """Min-max participation constraint."""

    min: Annotated[int, Field(ge=0)]
    max: MaxValue

    @property
    def is_unbounded(self) -> bool:
        return self.max == UNBOUNDED

    @property
    def is_single(self) -> bool:
        """True when at most one relationship instance is allowed."""
        return self.max == 1

    def is_well_formed(self) -> bool:
        """Check the validity range: unbounded, or min <= max and max >= 1."""
        return cardinality_accepts(self.min, self.max)

    def __str__(self) -> str:
        return f"({self.min},{self.max})"


def cardinality_accepts(min_value: int, max_value: Union[int, str]) -> bool:
    """Acceptance predicate for a (min, max) pair.

    Args:
        min_value: Non-negative minimum.
        max_value: Maximum, or ``UNBOUNDED``.

    Returns:
        bool: True when the pair lies in the allowed range.
    """
    if max_value == UNBOUNDED:
        return min_value >= 0
    assert isinstance(max_value, int)
    return 0 <= min_value <= max_value and max_value >= 1


class Participation(_Element):
    """One participant slot of a relationship."""

    entity_name: Name
    cardinality: Cardinality


class EntityType(_Element):
    """A regular or weak entity type, optionally a subtype of another."""

    name: Name
    kind: EntityKind = EntityKind.REGULAR
    supertype_name: Optional[Name] = None
    attributes: Tuple[Attribute, ...] = ()
    most_desired_key: Optional[Name] = None
    key_groups: Tuple[Tuple[Name, ...], ...] = ()

    @model_validator(mode="after")
    def _check_entity(self) -> "EntityType":
        if self.supertype_name == self.name:
            raise ValueError(f"entity {self.name!r} cannot be its own supertype")
        if self.kind is EntityKind.REGULAR:
            partial = [a.name for a in self.attributes if a.is_partial_key]
            if partial:
                raise ValueError(
                    f"regular entity {self.name!r} cannot have partial keys: "
                    f"{', '.join(partial)}"
                )
        if self.most_desired_key is not None:
            attr = self.attribute(self.most_desired_key)
            if attr is None or not attr.is_key:
                raise ValueError(
                    f"most desired key {self.most_desired_key!r} of entity "
                    f"{self.name!r} is not one of its key attributes"
                )
        return self

    @property
    def is_weak(self) -> bool:
        return self.kind is EntityKind.WEAK

    @property
    def is_subtype(self) -> bool:
        return self.supertype_name is not None

    @property
    def keys(self) -> Tuple[Attribute, ...]:
        return tuple(a for a in self.attributes if a.is_key)

    @property
    def partial_keys(self) -> Tuple[Attribute, ...]:
        return tuple(a for a in self.attributes if a.is_partial_key)

    @property
    def designated_key(self) -> Optional[Attribute]:
        """The most desired key, defaulting to the first declared key."""
        if self.most_desired_key is not None:
            return self.attribute(self.most_desired_key)
        keys = self.keys
        return keys[0] if keys else None

    def attribute(self, name: str) -> Optional[Attribute]:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None


class RelationshipType(_Element):
    """A named association over participating entity types."""

    name: Name
    is_identifying: bool = False
    participants: Tuple[Participation, ...] = ()
    attributes: Tuple[Attribute, ...] = ()

    @model_validator(mode="after")
    def _attributes_are_plain(self) -> "RelationshipType":
        for attr in self.attributes:
            if attr.is_key or attr.is_partial_key:
                raise ValueError(
                    f"relationship attribute {self.name}.{attr.name} "
                    "cannot be a key or partial key"
                )
        return self

    @property
    def arity(self) -> int:
        return len(self.participants)

    def attribute(self, name: str) -> Optional[Attribute]:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None


class ERModel(_Element):
    """A whole diagram: entity types and relationship types."""

    name: str = ""
    entities: Tuple[EntityType, ...] = ()
    relationships: Tuple[RelationshipType, ...] = ()

    def entity(self, name: str) -> Optional[EntityType]:
        return resolve_entity(self, name)

    def relationship(self, name: str) -> Optional[RelationshipType]:
        for rel in self.relationships:
            if rel.name == name:
                return rel
        return None

    @property
    def regular_entities(self) -> Tuple[EntityType, ...]:
        """Regular entity types that are not subtypes (the key-prefix pool)."""
        return tuple(
            e for e in self.entities if not e.is_weak and not e.is_subtype
        )

    def relationships_of(self, entity_name: str) -> Tuple[RelationshipType, ...]:
        return tuple(
            rel
            for rel in self.relationships
            if any(p.entity_name == entity_name for p in rel.participants)
        )

    def identifying_relationships_of(
        self, entity_name: str
    ) -> Tuple[RelationshipType, ...]:
        """Identifying relationships in which a weak entity is the weak side.

        Empty for regular or unknown entities.
        """
        entity = self.entity(entity_name)
        if entity is None or not entity.is_weak:
            return ()
        return tuple(r for r in self.relationships_of(entity_name) if r.is_identifying)

    def owners_of(self, weak_name: str) -> Tuple[str, ...]:
        """Names of the owner entities of a weak entity.

        Owners are the other participants of the weak entity's first
        identifying relationship, in participant order; empty for entities
        that are not weak.
        """
        identifying = self.identifying_relationships_of(weak_name)
        if not identifying:
            return ()
        return tuple(
            p.entity_name
            for p in identifying[0].participants
            if p.entity_name != weak_name
        )


def resolve_entity(model: ERModel, name: str) -> Optional[EntityType]:
    """Find an entity by exact (case-sensitive) name.

    Args:
        model: The model to search.
        name: Entity name.

    Returns:
        Optional[EntityType]: The entity, or None when absent.
    """
    for entity in model.entities:
        if entity.name == name:
            return entity
    return None


def isa_ancestors(model: ERModel, name: str) -> List[str]:
    """Return the supertype chain of an entity, immediate supertype first.

    Args:
        model: The model.
        name: Name of an entity in the model.

    Returns:
        List[str]: Supertype names up to the root; empty for non-subtypes.
            A supertype that does not resolve ends the chain.

    Raises:
        UnknownEntityError: If ``name`` does not resolve.
        IsaCycleError: If the chain revisits an entity.
    """
    entity = resolve_entity(model, name)
    if entity is None:
        raise UnknownEntityError(f"unknown entity {name!r}")

    chain: List[str] = []
    seen = {name}
    current: Optional[EntityType] = entity
    while current is not None and current.supertype_name is not None:
        parent = current.supertype_name
        if parent in seen:
            raise IsaCycleError(
                f"Is-A cycle through {' -> '.join([name, *chain, parent])}"
            )
        chain.append(parent)
        seen.add(parent)
        current = resolve_entity(model, parent)
    return chain


class BinaryKind(str, Enum):
    """Classification of a binary relationship by its max cardinalities."""

    ONE_TO_ONE = "OneToOne"
    ONE_TO_MANY = "OneToMany"
    MANY_TO_MANY = "ManyToMany"


class BinaryClassification(NamedTuple):
    """Result of classifying a binary relationship.

    Attributes:
        kind: One-to-one, one-to-many or many-to-many.
        n_side: Entity name on the N-side (max = 1) for one-to-many.
        n_side_index: Participant index of the N-side for one-to-many.
    """

    kind: BinaryKind
    n_side: Optional[str] = None
    n_side_index: Optional[int] = None


def classify_binary(rel: RelationshipType) -> BinaryClassification:
    """Classify a binary relationship as 1:1, 1:N or M:N.

    The N-side of a one-to-many relationship is the participant whose
    max is 1: many of its instances relate to one instance of the other.

    Args:
        rel: A relationship with exactly two participants.

    Returns:
        BinaryClassification: The kind and, for 1:N, the N-side.

    Raises:
        ArityError: If the relationship does not have two participants.
    """
    if rel.arity != 2:
        raise ArityError(
            f"relationship {rel.name!r} has {rel.arity} participants, expected 2"
        )
    first, second = rel.participants
    single = (first.cardinality.is_single, second.cardinality.is_single)
    if all(single):
        return BinaryClassification(BinaryKind.ONE_TO_ONE)
    if single[0]:
        return BinaryClassification(BinaryKind.ONE_TO_MANY, first.entity_name, 0)
    if single[1]:
        return BinaryClassification(BinaryKind.ONE_TO_MANY, second.entity_name, 1)
    return BinaryClassification(BinaryKind.MANY_TO_MANY)


def verify_references(
    model: ERModel,
    check_supertypes: bool = True,
    spans: Optional[Dict[str, object]] = None,
) -> None:
    """Check the referential invariants of a model.

    Duplicates and unresolved names are collected over the whole model and
    the earliest one (by source position when spans are given, otherwise by
    declaration order) is raised. Is-A cycles are checked last.

    Args:
        model: The model to check.
        check_supertypes: Whether an unresolved supertype is an error. The
            lenient JSON loader turns this off so R-SUB-2 can report it.
        spans: Optional element path to ``SourceSpan`` mapping used to
            locate errors.

    Raises:
        DuplicateDeclarationError: Duplicate entity, relationship or
            attribute name.
        UnresolvedReferenceError: Unknown participant, supertype or key-group
            member.
        IsaCycleError: The Is-A graph has a cycle.
    """
    from .source import (
        entity_attr_path,
        entity_path,
        key_group_path,
        participant_path,
        rel_attr_path,
        rel_path,
    )

    span_map = spans or {}
    problems: List[ModelError] = []

    def report(error_cls: type, message: str, path: str) -> None:
        problems.append(error_cls(message, span_map.get(path)))

    entity_names = set()
    for entity in model.entities:
        if entity.name in entity_names:
            report(
                DuplicateDeclarationError,
                f"entity {entity.name!r} is declared more than once",
                entity_path(entity.name),
            )
        entity_names.add(entity.name)
        attr_names = set()
        for attr in entity.attributes:
            if attr.name in attr_names:
                report(
                    DuplicateDeclarationError,
                    f"attribute {attr.name!r} is declared twice in entity {entity.name!r}",
                    entity_attr_path(entity.name, attr.name),
                )
            attr_names.add(attr.name)

    rel_names = set()
    for rel in model.relationships:
        if rel.name in rel_names:
            report(
                DuplicateDeclarationError,
                f"relationship {rel.name!r} is declared more than once",
                rel_path(rel.name),
            )
        rel_names.add(rel.name)
        attr_names = set()
        for attr in rel.attributes:
            if attr.name in attr_names:
                report(
                    DuplicateDeclarationError,
                    f"attribute {attr.name!r} is declared twice in relationship {rel.name!r}",
                    rel_attr_path(rel.name, attr.name),
                )
            attr_names.add(attr.name)

    for entity in model.entities:
        if (
            check_supertypes
            and entity.supertype_name is not None
            and entity.supertype_name not in entity_names
        ):
            report(
                UnresolvedReferenceError,
                f"supertype {entity.supertype_name!r} of entity {entity.name!r} is not declared",
                entity_path(entity.name),
            )
        for index, group in enumerate(entity.key_groups):
            for member in group:
                if entity.attribute(member) is None:
                    report(
                        UnresolvedReferenceError,
                        f"key group member {member!r} is not an attribute of {entity.name!r}",
                        key_group_path(entity.name, index),
                    )

    for rel in model.relationships:
        for index, part in enumerate(rel.participants):
            if part.entity_name not in entity_names:
                report(
                    UnresolvedReferenceError,
                    f"relationship {rel.name!r} refers to undeclared entity {part.entity_name!r}",
                    participant_path(rel.name, index),
                )

    if problems:
        if span_map:
            problems.sort(
                key=lambda e: (e.span.line, e.span.column) if e.span else (0, 0)
            )
        raise problems[0]

    for entity in model.entities:
        try:
            isa_ancestors(model, entity.name)
        except IsaCycleError as e:
            raise IsaCycleError(
                e.message, span_map.get(entity_path(entity.name))
            ) from e


def structural_problems(model: ERModel) -> List[str]:
    """List the well-formedness violations the linter would otherwise report.

    These cover ill-formed cardinalities, relationships with fewer than two
    participants, weak entities with keys and identifying relationships
    without exactly one weak participant and an owner.

    Args:
        model: The model to inspect.

    Returns:
        List[str]: One message per violation, in declaration order.
    """
    problems: List[str] = []
    for entity in model.entities:
        if entity.is_weak and entity.keys:
            problems.append(f"weak entity {entity.name!r} has key attributes")
    for rel in model.relationships:
        if rel.arity < 2:
            problems.append(
                f"relationship {rel.name!r} has {rel.arity} participant(s), expected at least 2"
            )
        for part in rel.participants:
            if not part.cardinality.is_well_formed():
                problems.append(
                    f"cardinality {part.cardinality} of {part.entity_name!r} in "
                    f"{rel.name!r} violates min <= max, max >= 1"
                )
        if rel.is_identifying:
            weak = [
                p
                for p in rel.participants
                if (e := resolve_entity(model, p.entity_name)) is not None and e.is_weak
            ]
            if len(weak) != 1 or rel.arity < 2:
                problems.append(
                    f"identifying relationship {rel.name!r} must join exactly one "
                    "weak entity to its owner(s)"
                )
    return problems


def verify_model(model: ERModel, strict: bool = True) -> None:
    """Standalone verification pass over the core-model invariants.

    Args:
        model: The model to verify.
        strict: Also check well-formedness (cardinalities, arity, weak
            entity structure), not only references.

    Raises:
        ModelError: The first violated invariant.
    """
    verify_references(model)
    problems = structural_problems(model) if strict else []
    if problems:
        raise ModelError(problems[0])
    logger.debug(f"Model {model.name!r} verified")
