"""DOT rendering of ER models in the modified notation.

Entities are boxes (double border when weak), relationships diamonds
(double border when identifying) and attributes ellipses (double border
when multivalued). Keys are underlined; partial keys are underlined and
suffixed with "(partial key)". Is-A edges point from subtype to supertype.
"""

import html
import logging
from enum import Enum
from typing import Dict, NamedTuple, Optional, Set

from graphviz import Digraph, escape

from .model import Attribute, ERModel

logger = logging.getLogger(__name__)

DOUBLE_BORDER = "2"


class RankDirection(str, Enum):
    """Layout direction of the diagram."""

    LEFT_RIGHT = "LR"
    TOP_BOTTOM = "TB"


class RenderOptions(NamedTuple):
    """Rendering options.

    Attributes:
        rank_direction: Layout direction.
        show_cardinalities: Label participation edges with (min,max).
    """

    rank_direction: RankDirection = RankDirection.LEFT_RIGHT
    show_cardinalities: bool = True


def _dot_id(text: str) -> str:
    # Edge endpoints read ':' as a port separator
    return escape(text.replace(":", "_"))


def entity_node_id(name: str) -> str:
    return _dot_id(f"e_{name}")


def relationship_node_id(name: str) -> str:
    return _dot_id(f"r_{name}")


def attribute_node_id(owner: str, name: str) -> str:
    """Base node ID of an attribute; ``build_graph`` numbers repeats."""
    return _dot_id(f"a_{owner}_{name}")


class _NodeIds:
    """Hands out node IDs, numbering any that would repeat."""

    def __init__(self) -> None:
        self.used: Set[str] = set()

    def claim(self, base: str) -> str:
        node_id = base
        suffix = 2
        while node_id in self.used:
            node_id = f"{base}_{suffix}"
            suffix += 1
        if node_id != base:
            logger.debug(f"Node ID {base!r} already taken, using {node_id!r}")
        self.used.add(node_id)
        return node_id


def _attribute_label(attr: Attribute) -> str:
    if attr.is_key:
        return f"<<U>{html.escape(attr.name)}</U>>"
    if attr.is_partial_key:
        return f"<<U>{html.escape(attr.name)}</U> (partial key)>"
    return escape(attr.name)


def _add_attribute(
    dot: Digraph, ids: _NodeIds, owner_id: str, owner: str, attr: Attribute
) -> None:
    node_id = ids.claim(attribute_node_id(owner, attr.name))
    attrs = {"shape": "ellipse"}
    if attr.is_multivalued:
        attrs["peripheries"] = DOUBLE_BORDER
    dot.node(node_id, label=_attribute_label(attr), **attrs)
    dot.edge(owner_id, node_id, dir="none")


def build_graph(model: ERModel, options: Optional[RenderOptions] = None) -> Digraph:
    """Build the diagram of a model as a graphviz ``Digraph``.

    Conformance is not required: nonconforming models are drawn as they are,
    and Is-A edges to undeclared supertypes are left out. Every element gets
    its own node even when names containing ``_`` make two IDs coincide.

    Args:
        model: The model to draw.
        options: Rendering options; defaults when None.

    Returns:
        Digraph: The diagram; its ``source`` is the DOT text.
    """
    options = options or RenderOptions()
    direction = RankDirection(options.rank_direction)
    name = escape(model.name) if model.name else None
    dot = Digraph(name, graph_attr={"rankdir": direction.value})
    ids = _NodeIds()

    entity_ids: Dict[str, str] = {}
    for entity in model.entities:
        entity_id = ids.claim(entity_node_id(entity.name))
        entity_ids.setdefault(entity.name, entity_id)
        attrs = {"shape": "box"}
        if entity.is_weak:
            attrs["peripheries"] = DOUBLE_BORDER
        dot.node(entity_id, label=escape(entity.name), **attrs)
        for attr in entity.attributes:
            _add_attribute(dot, ids, entity_id, entity.name, attr)

    for rel in model.relationships:
        rel_id = ids.claim(relationship_node_id(rel.name))
        attrs = {"shape": "diamond"}
        if rel.is_identifying:
            attrs["peripheries"] = DOUBLE_BORDER
        dot.node(rel_id, label=escape(rel.name), **attrs)
        for attr in rel.attributes:
            _add_attribute(dot, ids, rel_id, rel.name, attr)
        for part in rel.participants:
            edge_attrs = {"dir": "none"}
            if options.show_cardinalities:
                edge_attrs["headlabel"] = str(part.cardinality)
            target = entity_ids.get(part.entity_name, entity_node_id(part.entity_name))
            dot.edge(rel_id, target, **edge_attrs)

    for entity in model.entities:
        if entity.supertype_name is None:
            continue
        if entity.supertype_name not in entity_ids:
            logger.debug(f"Is-A edge of {entity.name!r} skipped: supertype undeclared")
            continue
        dot.edge(
            entity_ids[entity.name],
            entity_ids[entity.supertype_name],
            label="Is-A",
        )
    return dot


def render(model: ERModel, options: Optional[RenderOptions] = None) -> str:
    """Render a model as DOT text.

    Args:
        model: The model to draw.
        options: Rendering options; defaults when None.

    Returns:
        str: DOT source, deterministic for identical input.
    """
    source = build_graph(model, options).source
    logger.info(f"Rendered model {model.name!r} to DOT")
    return source
