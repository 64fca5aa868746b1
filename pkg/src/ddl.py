"""DDL generation: CREATE TABLE statements in dependency order."""

import logging
from typing import Dict, List, Set

from .errors import CyclicDependencyError
from .transformer import ForeignKey, Relation, Schema

logger = logging.getLogger(__name__)

INDENT = "  "


def _column_list(columns) -> str:
    return ", ".join(columns)


def _foreign_key_clause(fk: ForeignKey) -> str:
    return (
        f"FOREIGN KEY ({_column_list(fk.columns)}) REFERENCES "
        f"{fk.referenced_relation} ({_column_list(fk.referenced_columns)})"
    )


def _dependencies(relation: Relation) -> Set[str]:
    return {
        fk.referenced_relation
        for fk in relation.foreign_keys
        if fk.referenced_relation != relation.name
    }


def dependency_order(schema: Schema, defer_cycles: bool = True) -> List[str]:
    """Order relations so referenced ones come before referencing ones.

    Among ready relations the smallest name goes first. When foreign keys
    form a cycle and none is ready, the smallest remaining name is taken.

    Args:
        schema: The schema to order.
        defer_cycles: Break cycles instead of failing.

    Returns:
        List[str]: Relation names in emission order.

    Raises:
        CyclicDependencyError: On a cycle when ``defer_cycles`` is False.
    """
    pending: Dict[str, Set[str]] = {
        r.name: _dependencies(r) for r in schema.relations
    }
    emitted: List[str] = []
    done: Set[str] = set()
    while pending:
        ready = sorted(name for name, deps in pending.items() if deps <= done)
        if ready:
            name = ready[0]
        else:
            stuck = sorted(pending)
            if not defer_cycles:
                raise CyclicDependencyError(
                    f"foreign keys form a cycle among {', '.join(stuck)}"
                )
            name = stuck[0]
            logger.warning(f"Foreign-key cycle: deferring constraints of {name!r}")
        emitted.append(name)
        done.add(name)
        del pending[name]
    return emitted


def emit_ddl(
    schema: Schema, column_type: str = "TEXT", defer_cycles: bool = True
) -> str:
    """Emit CREATE TABLE statements for a schema.

    Every column gets the same placeholder type. Non-designated keys are
    written as ``-- UNIQUE`` comments. Foreign keys that point at a relation
    emitted later (only possible on a cycle) are written as ``-- deferred:``
    comments and added back by ALTER TABLE statements at the end.

    Args:
        schema: The relational schema.
        column_type: Placeholder SQL type for every column.
        defer_cycles: Defer cyclic foreign keys instead of raising.

    Returns:
        str: DDL text, statements separated by blank lines; "" for an empty
            schema.

    Raises:
        CyclicDependencyError: On a foreign-key cycle when ``defer_cycles``
            is False.
    """
    order = dependency_order(schema, defer_cycles=defer_cycles)
    position = {name: i for i, name in enumerate(order)}
    statements: List[str] = []
    alters: List[str] = []

    for name in order:
        relation = schema.relation(name)
        assert relation is not None
        clauses = [
            f"{c.name} {column_type}" + ("" if c.nullable else " NOT NULL")
            for c in relation.columns
        ]
        clauses.append(f"PRIMARY KEY ({_column_list(relation.primary_key)})")
        comments = [f"-- UNIQUE ({_column_list(group)})" for group in relation.unique_keys]
        for fk in relation.foreign_keys:
            target = fk.referenced_relation
            if target != name and position[target] > position[name]:
                comments.append(f"-- deferred: {_foreign_key_clause(fk)}")
                alters.append(f"ALTER TABLE {name} ADD {_foreign_key_clause(fk)};")
            else:
                clauses.append(_foreign_key_clause(fk))

        body = ",\n".join(INDENT + clause for clause in clauses)
        if comments:
            body += "\n" + "\n".join(INDENT + comment for comment in comments)
        statements.append(f"CREATE TABLE {name} (\n{body}\n);")

    statements.extend(alters)
    if alters:
        logger.info(f"Deferred {len(alters)} foreign key(s) to ALTER TABLE statements")
    return "\n\n".join(statements) + "\n" if statements else ""
