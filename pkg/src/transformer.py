"""ER model to relational schema mapping.

The mapping runs in six steps over a model without Error diagnostics:

1. each regular non-subtype entity becomes a relation keyed by its most
   desired key;
2. each weak entity becomes a relation holding its owners' keys (as foreign
   keys) plus its own attributes, keyed by owner keys and partial keys;
3. each subtype becomes a relation keyed by its supertype's key, which is
   also a foreign key to the supertype;
4. each multivalued attribute becomes a relation Owner+Attribute;
5. each binary 1:1 or 1:N relationship plants a foreign key on its N-side;
6. each binary M:N and each n-ary relationship becomes its own relation.

Identifying relationships are consumed by step 2.
"""

import logging
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Set, Tuple

from .errors import PreconditionError
from .model import (
    Attribute,
    BinaryKind,
    EntityType,
    ERModel,
    RelationshipType,
    classify_binary,
    resolve_entity,
)
from .source import LocatedModel, entity_attr_path, entity_path, rel_attr_path, rel_path
from .validator import validate

logger = logging.getLogger(__name__)


class Column(NamedTuple):
    """A relation column.

    Attributes:
        name: Column name, unique within its relation.
        nullable: Whether NULL is allowed.
        origin: Element path of the ER attribute the column holds; None for
            columns that only propagate a key.
    """

    name: str
    nullable: bool
    origin: Optional[str] = None


class ForeignKey(NamedTuple):
    """A foreign key from local columns to another relation's columns."""

    columns: Tuple[str, ...]
    referenced_relation: str
    referenced_columns: Tuple[str, ...]


class Relation(NamedTuple):
    """A relation of the target schema.

    Attributes:
        name: Relation name.
        columns: Columns in order.
        primary_key: Names of the primary-key columns.
        foreign_keys: Foreign keys in the order they were planted.
        provenance: Element path of the ER element that produced the relation.
        unique_keys: Column groups of non-designated keys.
    """

    name: str
    columns: Tuple[Column, ...]
    primary_key: Tuple[str, ...]
    foreign_keys: Tuple[ForeignKey, ...]
    provenance: str
    unique_keys: Tuple[Tuple[str, ...], ...] = ()

    def column(self, name: str) -> Optional[Column]:
        for column in self.columns:
            if column.name == name:
                return column
        return None

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "columns": [
                {"name": c.name, "nullable": c.nullable, "origin": c.origin}
                for c in self.columns
            ],
            "primaryKey": list(self.primary_key),
            "foreignKeys": [
                {
                    "columns": list(fk.columns),
                    "referencedRelation": fk.referenced_relation,
                    "referencedColumns": list(fk.referenced_columns),
                }
                for fk in self.foreign_keys
            ],
            "uniqueKeys": [list(group) for group in self.unique_keys],
            "provenance": self.provenance,
        }


class Schema(NamedTuple):
    """A relational schema: relations in mapping-step order."""

    relations: Tuple[Relation, ...]

    def relation(self, name: str) -> Optional[Relation]:
        for relation in self.relations:
            if relation.name == name:
                return relation
        return None

    def to_dict(self) -> Dict[str, object]:
        return {"relations": [r.to_dict() for r in self.relations]}


class _RelationBuilder:
    """Mutable relation under construction."""

    def __init__(self, name: str, provenance: str):
        self.name = name
        self.provenance = provenance
        self.columns: List[Column] = []
        self.primary_key: List[str] = []
        self.foreign_keys: List[ForeignKey] = []
        self.unique_keys: List[Tuple[str, ...]] = []

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def add_column(
        self,
        name: str,
        nullable: bool,
        qualifier: str,
        origin: Optional[str] = None,
    ) -> str:
        """Add a column, qualifying its name on a clash; returns the final name."""
        final = name
        if self.has_column(final):
            final = qualifier + name
            suffix = 2
            while self.has_column(final):
                final = f"{qualifier}{name}{suffix}"
                suffix += 1
            logger.debug(f"Column {name!r} of {self.name!r} renamed to {final!r}")
        self.columns.append(Column(final, nullable, origin))
        return final

    def add_reference(
        self,
        target: "_RelationBuilder",
        nullable: bool,
        qualifier: str,
    ) -> List[str]:
        """Copy the target's primary key in as a foreign key."""
        local = [self.add_column(col, nullable, qualifier) for col in target.primary_key]
        self.foreign_keys.append(
            ForeignKey(tuple(local), target.name, tuple(target.primary_key))
        )
        return local

    def build(self) -> Relation:
        return Relation(
            name=self.name,
            columns=tuple(self.columns),
            primary_key=tuple(self.primary_key),
            foreign_keys=tuple(self.foreign_keys),
            provenance=self.provenance,
            unique_keys=tuple(self.unique_keys),
        )


def _single_valued(attributes: Tuple[Attribute, ...]) -> List[Attribute]:
    return [a for a in attributes if not a.is_multivalued]


def fk_side(rel: RelationshipType) -> int:
    """Index of the participant that receives the foreign key.

    For 1:N it is the N-side; for 1:1 the only mandatory side (min >= 1),
    else the first participant.

    Raises:
        ArityError: If the relationship is not binary.
    """
    classification = classify_binary(rel)
    if classification.kind is BinaryKind.ONE_TO_MANY:
        assert classification.n_side_index is not None
        return classification.n_side_index
    mandatory = [i for i, p in enumerate(rel.participants) if p.cardinality.min >= 1]
    return mandatory[0] if len(mandatory) == 1 else 0


class _Transformer:
    """Runs the mapping steps for one model."""

    def __init__(self, model: ERModel):
        self.model = model
        self.entity_relations: Dict[str, _RelationBuilder] = {}
        self.in_progress: Set[str] = set()
        self.ordered: List[_RelationBuilder] = []

    def register(self, builder: _RelationBuilder) -> _RelationBuilder:
        """Append a relation, numbering its name on a clash with an earlier one."""
        base = builder.name
        suffix = 2
        while any(b.name == builder.name for b in self.ordered):
            builder.name = f"{base}{suffix}"
            suffix += 1
        if builder.name != base:
            logger.warning(
                f"Relation {base!r} from {builder.provenance} renamed to "
                f"{builder.name!r}: the name is already used"
            )
        self.ordered.append(builder)
        return builder

    def entity_relation(self, name: str) -> _RelationBuilder:
        """Build (once) the relation of an entity, owners and supertypes first."""
        if name in self.entity_relations:
            return self.entity_relations[name]
        if name in self.in_progress:
            raise PreconditionError(f"entity {name!r} depends on its own key")
        entity = resolve_entity(self.model, name)
        if entity is None:
            raise PreconditionError(f"unknown entity {name!r}")

        self.in_progress.add(name)
        builder = _RelationBuilder(entity.name, entity_path(entity.name))
        if entity.is_weak:
            self._weak(entity, builder)
        elif entity.is_subtype:
            self._subtype(entity, builder)
        else:
            self._regular(entity, builder)
        self.in_progress.discard(name)
        self.entity_relations[name] = builder
        return builder

    def _own_attributes(self, entity: EntityType, builder: _RelationBuilder) -> None:
        designated = entity.designated_key
        for attr in _single_valued(entity.attributes):
            column = builder.add_column(
                attr.name,
                nullable=not (attr.is_key or attr.is_partial_key),
                qualifier=entity.name,
                origin=entity_attr_path(entity.name, attr.name),
            )
            # Subtypes inherit their primary key; their own keys are only unique
            if attr.is_partial_key or (
                attr.is_key and not entity.is_subtype and attr == designated
            ):
                builder.primary_key.append(column)
            elif attr.is_key:
                builder.unique_keys.append((column,))

    def _regular(self, entity: EntityType, builder: _RelationBuilder) -> None:
        self._own_attributes(entity, builder)

    def _weak(self, entity: EntityType, builder: _RelationBuilder) -> None:
        identifying = self.model.identifying_relationships_of(entity.name)
        rel_name = identifying[0].name if identifying else entity.name
        owner_columns: List[str] = []
        for owner in self.model.owners_of(entity.name):
            owner_columns += builder.add_reference(
                self.entity_relation(owner), nullable=False, qualifier=rel_name
            )
        builder.primary_key.extend(owner_columns)
        self._own_attributes(entity, builder)
        if identifying:
            rel = identifying[0]
            for attr in _single_valued(rel.attributes):
                builder.add_column(
                    attr.name, True, rel.name, origin=rel_attr_path(rel.name, attr.name)
                )

    def _subtype(self, entity: EntityType, builder: _RelationBuilder) -> None:
        assert entity.supertype_name is not None
        parent = self.entity_relation(entity.supertype_name)
        builder.primary_key.extend(
            builder.add_reference(parent, nullable=False, qualifier=parent.name)
        )
        self._own_attributes(entity, builder)

    def _multivalued(
        self,
        host: _RelationBuilder,
        owner_name: str,
        attr: Attribute,
        origin: str,
    ) -> None:
        builder = self.register(_RelationBuilder(owner_name + attr.name, origin))
        builder.add_reference(host, nullable=False, qualifier=owner_name)
        builder.add_column(attr.name, False, owner_name, origin=origin)
        builder.primary_key = [c.name for c in builder.columns]

    def _relationship(self, rel: RelationshipType) -> None:
        if rel.is_identifying:
            weak = [
                p.entity_name
                for p in rel.participants
                if (e := resolve_entity(self.model, p.entity_name)) is not None
                and e.is_weak
            ]
            host = self.entity_relation(weak[0])
        elif rel.arity == 2 and classify_binary(rel).kind is not BinaryKind.MANY_TO_MANY:
            side = fk_side(rel)
            n_part = rel.participants[side]
            other = rel.participants[1 - side]
            host = self.entity_relation(n_part.entity_name)
            host.add_reference(
                self.entity_relation(other.entity_name),
                nullable=n_part.cardinality.min == 0,
                qualifier=rel.name,
            )
            for attr in _single_valued(rel.attributes):
                host.add_column(
                    attr.name, True, rel.name, origin=rel_attr_path(rel.name, attr.name)
                )
            logger.debug(f"{rel.name}: foreign key planted on {host.name}")
        else:
            host = self.register(_RelationBuilder(rel.name, rel_path(rel.name)))
            for part in rel.participants:
                host.primary_key.extend(
                    host.add_reference(
                        self.entity_relation(part.entity_name),
                        nullable=False,
                        qualifier=rel.name,
                    )
                )
            for attr in _single_valued(rel.attributes):
                host.add_column(
                    attr.name, True, rel.name, origin=rel_attr_path(rel.name, attr.name)
                )

        for attr in rel.attributes:
            if attr.is_multivalued:
                self._multivalued(
                    host, rel.name, attr, rel_attr_path(rel.name, attr.name)
                )

    def run(self) -> Schema:
        regular = [e for e in self.model.entities if not e.is_weak and not e.is_subtype]
        weak = [e for e in self.model.entities if e.is_weak]
        subtypes = [e for e in self.model.entities if e.is_subtype and not e.is_weak]
        for entity in regular + weak + subtypes:
            self.register(self.entity_relation(entity.name))

        for entity in self.model.entities:
            for attr in entity.attributes:
                if attr.is_multivalued:
                    self._multivalued(
                        self.entity_relations[entity.name],
                        entity.name,
                        attr,
                        entity_attr_path(entity.name, attr.name),
                    )

        for rel in self.model.relationships:
            self._relationship(rel)

        return Schema(relations=tuple(b.build() for b in self.ordered))


def transform(
    model: ERModel, plural_exceptions: Optional[FrozenSet[str]] = None
) -> Schema:
    """Map a conforming model to a relational schema.

    Args:
        model: A model whose validation yields no Errors.
        plural_exceptions: Word list for the precondition check.

    Returns:
        Schema: Relations in mapping-step order.

    Raises:
        PreconditionError: If the model has Error diagnostics.
    """
    errors = [
        d
        for d in validate(LocatedModel.unlocated(model), plural_exceptions)
        if d.is_error
    ]
    if errors:
        first = errors[0]
        raise PreconditionError(
            f"cannot transform a model with {len(errors)} error(s); first: "
            f"{first.rule_id} at {first.location}: {first.message}"
        )

    schema = _Transformer(model).run()
    logger.info(
        f"Transformed model {model.name!r} into {len(schema.relations)} relations"
    )
    return schema
