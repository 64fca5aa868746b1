"""Unit tests for the DOT renderer."""

import re

from hypothesis import given, settings
from hypothesis import strategies as st

from src.renderer import (
    RankDirection,
    RenderOptions,
    attribute_node_id,
    build_graph,
    entity_node_id,
    relationship_node_id,
    render,
)
from src.serialization import load_located
from tests.strategies import er_models

DOT_ID = r'(?:[A-Za-z_][A-Za-z0-9_]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?)|"(?:[^"\\]|\\.)*"|<.*>)'
DOT_ATTRS = rf"\[{DOT_ID}={DOT_ID}(?: {DOT_ID}={DOT_ID})*\]"
DOT_NODE = re.compile(rf"\t({DOT_ID})(?: {DOT_ATTRS})?")
DOT_EDGE = re.compile(rf"\t({DOT_ID}) -> ({DOT_ID})(?: {DOT_ATTRS})?")


def _node_id(line):
    return DOT_NODE.fullmatch(line.rstrip("\n")).group(1)


class TestRender:
    """Tests for render function."""

    def test_reference_golden(self, figure1, golden_dir):
        """Test the reference diagram matches the golden DOT file."""
        expected = (golden_dir / "figure1.dot").read_text(encoding="utf-8")
        assert render(figure1) == expected

    def test_deterministic(self, figure1):
        """Test identical input renders identically."""
        assert render(figure1) == render(figure1)

    def test_element_counts(self, figure1):
        """Test one node per element and one edge per connection."""
        body = build_graph(figure1).body
        nodes = [line for line in body if "->" not in line]
        edges = [line for line in body if "->" in line]

        entity_count = len(figure1.entities)
        rel_count = len(figure1.relationships)
        attr_count = sum(len(e.attributes) for e in figure1.entities) + sum(
            len(r.attributes) for r in figure1.relationships
        )
        participant_count = sum(r.arity for r in figure1.relationships)
        isa_count = sum(1 for e in figure1.entities if e.is_subtype)

        assert len(nodes) == entity_count + rel_count + attr_count
        assert len(edges) == attr_count + participant_count + isa_count

    def test_notation(self, figure1):
        """Test shapes and borders follow the notation."""
        source = render(figure1)
        assert f"\t{entity_node_id('Dependent')} [label=Dependent peripheries=2 shape=box]" in source
        assert f"{relationship_node_id('DependentOf')} [label=DependentOf peripheries=2" in source
        assert (
            f"{attribute_node_id('Department', 'Location')} [label=Location peripheries=2"
            in source
        )
        assert "<<U>DepNo</U>>" in source
        assert "<<U>Name</U> (partial key)>" in source


class TestRenderOptions:
    """Tests for rendering options."""

    def test_top_to_bottom(self, figure1):
        """Test the rank direction option."""
        source = render(figure1, RenderOptions(rank_direction=RankDirection.TOP_BOTTOM))
        assert "\tgraph [rankdir=TB]\n" in source

    def test_plain_string_direction(self, figure1):
        """Test the direction may be given by its value."""
        source = render(figure1, RenderOptions(rank_direction="TB"))
        assert "rankdir=TB" in source

    def test_without_cardinalities(self, figure1):
        """Test participation edges lose their labels."""
        source = render(figure1, RenderOptions(show_cardinalities=False))
        assert "headlabel" not in source
        assert "\tr_Assigned -> e_Employee [dir=none]\n" in source


class TestRenderNonconforming:
    """Tests for models the linter rejects."""

    def test_dangling_supertype_not_drawn(self, corpus_dir):
        """Test Is-A edges to undeclared supertypes are skipped."""
        text = (corpus_dir / "mutant_sub_2.json").read_text(encoding="utf-8")
        model = load_located(text, "mutant_sub_2.json", lenient=True).model
        source = render(model)

        assert "e_Manager [label=Manager shape=box]" in source
        assert "Is-A" not in source
        assert "e_Person" not in source

    def test_unnamed_model(self):
        """Test a model without a name renders an anonymous graph."""
        from src.parser import parse

        source = render(parse("entity A { key ANo }").model)
        assert source.startswith("digraph {\n")

    def test_names_needing_quotes(self, parse_text):
        """Test labels with spaces are quoted."""
        source = render(parse_text('entity Employee {\n  key EmpNo\n  "Start Date"\n}').model)
        assert 'label="Start Date"' in source

    def test_underscore_names_get_distinct_nodes(self, parse_text):
        """Test attribute node IDs stay distinct when names contain '_'."""
        model = parse_text("entity A_B {\n  C\n}\nentity A {\n  B_C\n}").model
        body = build_graph(model).body
        node_ids = [_node_id(line) for line in body if "->" not in line]

        assert len(node_ids) == 4
        assert len(set(node_ids)) == 4
        assert f"\te_A_B -> {attribute_node_id('A_B', 'C')} [dir=none]\n" in body
        assert f"\te_A -> {attribute_node_id('A', 'B_C')}_2 [dir=none]\n" in body

    def test_backslash_and_colon_names(self, parse_text):
        """Test names DOT would misread are written literally."""
        source = render(parse_text('entity "A\\\\" {\n  "B:C"\n}').model)

        assert '\t"e_A\\\\" [label="A\\\\" shape=box]' in source
        assert '"e_A\\\\" -> "a_A\\\\_B_C" [dir=none]' in source



class TestRenderProperties:
    """Property tests over generated models."""

    @settings(max_examples=300, deadline=None)
    @given(er_models())
    def test_element_counts(self, model):
        """Test one distinct node per element and one edge per connection."""
        body = build_graph(model).body
        node_ids = [_node_id(line) for line in body if "->" not in line]
        edges = [line for line in body if "->" in line]

        attr_count = sum(len(e.attributes) for e in model.entities) + sum(
            len(r.attributes) for r in model.relationships
        )
        participant_count = sum(r.arity for r in model.relationships)
        isa_count = sum(1 for e in model.entities if e.is_subtype)

        assert len(node_ids) == len(model.entities) + len(model.relationships) + attr_count
        assert len(set(node_ids)) == len(node_ids)
        assert len(edges) == attr_count + participant_count + isa_count

    @settings(max_examples=300, deadline=None)
    @given(er_models(), st.sampled_from(list(RankDirection)), st.booleans())
    def test_well_formed_dot(self, model, direction, cardinalities):
        """Test the output is a digraph of node and edge statements only."""
        options = RenderOptions(rank_direction=direction, show_cardinalities=cardinalities)
        lines = render(model, options).split("\n")

        assert re.fullmatch(rf"digraph (?:{DOT_ID} )?\{{", lines[0])
        assert lines[1] == f"\tgraph [rankdir={direction.value}]"
        assert lines[-2:] == ["}", ""]
        for line in lines[2:-2]:
            assert DOT_NODE.fullmatch(line) or DOT_EDGE.fullmatch(line), line

    @settings(max_examples=100, deadline=None)
    @given(er_models())
    def test_deterministic(self, model):
        """Test identical models render identically."""
        assert render(model) == render(model)
