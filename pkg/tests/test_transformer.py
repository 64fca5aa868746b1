"""Unit tests for the ER-to-relational transformer."""

import logging

import pytest
from hypothesis import given, settings

from src.errors import ArityError, PreconditionError
from src.model import UNBOUNDED, Cardinality, Participation, RelationshipType
from src.source import entity_attr_path, rel_attr_path
from src.transformer import ForeignKey, fk_side, transform
from src.validator import validate
from tests.strategies import conforming_models


def _column_names(relation):
    return [c.name for c in relation.columns]


class TestTransformReferenceModel:
    """Tests over the reference model."""

    @pytest.fixture
    def schema(self, figure1):
        """Relational schema of the reference model."""
        return transform(figure1)

    def test_relation_order(self, schema):
        """Test relations follow the mapping steps."""
        assert [r.name for r in schema.relations] == [
            "Employee",
            "Department",
            "Project",
            "Dependent",
            "Manager",
            "DepartmentLocation",
        ]

    def test_regular_entity(self, schema):
        """Test the most desired key is the primary key, other keys unique."""
        department = schema.relation("Department")
        assert _column_names(department) == ["DepNo", "Name", "EmpNo", "StartDate"]
        assert department.primary_key == ("DepNo",)
        assert department.unique_keys == (("Name",),)
        assert department.provenance == "entity:Department"

    def test_one_to_many_foreign_keys(self, schema):
        """Test 1:N relationships plant a foreign key on the N-side."""
        employee = schema.relation("Employee")
        assert employee.foreign_keys == (ForeignKey(("DepNo",), "Department", ("DepNo",)),)
        assert employee.column("DepNo").nullable is False
        assert employee.column("Name").nullable is True

        project = schema.relation("Project")
        assert project.foreign_keys == (ForeignKey(("DepNo",), "Department", ("DepNo",)),)

    def test_one_to_one_on_mandatory_side(self, schema):
        """Test 1:1 puts the foreign key and attributes on the mandatory side."""
        department = schema.relation("Department")
        assert department.foreign_keys == (ForeignKey(("EmpNo",), "Manager", ("EmpNo",)),)
        assert department.column("EmpNo").nullable is False
        start = department.column("StartDate")
        assert start.nullable is True
        assert start.origin == rel_attr_path("Manages", "StartDate")

    def test_weak_entity(self, schema):
        """Test weak entities are keyed by owner key plus partial key."""
        dependent = schema.relation("Dependent")
        assert _column_names(dependent) == ["EmpNo", "Name"]
        assert dependent.primary_key == ("EmpNo", "Name")
        assert dependent.foreign_keys == (ForeignKey(("EmpNo",), "Employee", ("EmpNo",)),)

    def test_subtype(self, schema):
        """Test subtypes are keyed by their supertype's key."""
        manager = schema.relation("Manager")
        assert manager.primary_key == ("EmpNo",)
        assert manager.foreign_keys == (ForeignKey(("EmpNo",), "Employee", ("EmpNo",)),)

    def test_multivalued_attribute(self, schema):
        """Test multivalued attributes get a relation of their own."""
        location = schema.relation("DepartmentLocation")
        assert _column_names(location) == ["DepNo", "Location"]
        assert location.primary_key == ("DepNo", "Location")
        assert location.column("Location").origin == entity_attr_path(
            "Department", "Location"
        )
        assert schema.relation("Department").column("Location") is None

    def test_to_dict(self, schema):
        """Test the JSON form uses camelCase keys."""
        data = schema.to_dict()["relations"][0]
        assert set(data) == {
            "name",
            "columns",
            "primaryKey",
            "foreignKeys",
            "uniqueKeys",
            "provenance",
        }
        assert data["columns"][0] == {
            "name": "EmpNo",
            "nullable": False,
            "origin": "entity:Employee/attr:EmpNo",
        }


class TestTransformRelationships:
    """Tests for relationship mappings beyond the reference model."""

    BASE = (
        "entity Employee {\n  key EmpNo\n}\n"
        "entity Project {\n  key ProNo\n}\n"
        "entity Supplier {\n  key SupNo\n}\n"
    )

    def test_many_to_many(self, parse_text):
        """Test M:N relationships become a relation keyed by both sides."""
        model = parse_text(
            self.BASE + "rel WorksOn {\n  Employee (0,N),\n  Project (1,N)\n  attrs Effort\n}"
        ).model
        works_on = transform(model).relation("WorksOn")

        assert _column_names(works_on) == ["EmpNo", "ProNo", "Effort"]
        assert works_on.primary_key == ("EmpNo", "ProNo")
        assert [fk.referenced_relation for fk in works_on.foreign_keys] == [
            "Employee",
            "Project",
        ]
        assert works_on.provenance == "rel:WorksOn"

    def test_ternary(self, parse_text):
        """Test n-ary relationships become a relation keyed by all sides."""
        model = parse_text(
            self.BASE
            + "rel Supplies {\n  Supplier (0,N),\n  Project (0,N),\n  Employee (0,1)\n}"
        ).model
        supplies = transform(model).relation("Supplies")
        assert supplies.primary_key == ("SupNo", "ProNo", "EmpNo")

    def test_self_reference_qualifies_columns(self, parse_text):
        """Test a second copy of a key is prefixed with the relationship name."""
        model = parse_text(
            self.BASE + "rel Mentors {\n  Employee (0,N),\n  Employee (0,N)\n}"
        ).model
        mentors = transform(model).relation("Mentors")

        assert _column_names(mentors) == ["EmpNo", "MentorsEmpNo"]
        assert mentors.foreign_keys[1] == ForeignKey(
            ("MentorsEmpNo",), "Employee", ("EmpNo",)
        )

    def test_optional_one_to_many(self, parse_text):
        """Test an optional N-side gives a nullable foreign key."""
        model = parse_text(
            self.BASE + "rel Leads {\n  Employee (0,1),\n  Project (0,N)\n}"
        ).model
        employee = transform(model).relation("Employee")
        assert employee.column("ProNo").nullable is True

    def test_multivalued_relationship_attribute(self, parse_text):
        """Test multivalued relationship attributes are keyed by their host."""
        model = parse_text(
            self.BASE + "rel WorksOn {\n  Employee (0,N),\n  Project (1,N)\n  attrs multi Role\n}"
        ).model
        roles = transform(model).relation("WorksOnRole")

        assert _column_names(roles) == ["EmpNo", "ProNo", "Role"]
        assert roles.foreign_keys == (
            ForeignKey(("EmpNo", "ProNo"), "WorksOn", ("EmpNo", "ProNo")),
        )

    def test_subtype_chain(self, parse_text):
        """Test keys propagate down a chain of subtypes."""
        model = parse_text(
            "entity Person {\n  key PerNo\n}\n"
            "entity Employee isa Person {\n  Salary\n}\n"
            "entity Manager isa Employee {\n  Budget\n}\n"
        ).model
        manager = transform(model).relation("Manager")

        assert manager.primary_key == ("PerNo",)
        assert manager.foreign_keys == (ForeignKey(("PerNo",), "Employee", ("PerNo",)),)


class TestFkSide:
    """Tests for fk_side function."""

    @staticmethod
    def _rel(first, second):
        return RelationshipType(
            name="R",
            participants=(
                Participation(entity_name="A", cardinality=Cardinality(min=first[0], max=first[1])),
                Participation(entity_name="B", cardinality=Cardinality(min=second[0], max=second[1])),
            ),
        )

    def test_one_to_one_defaults_to_first(self):
        """Test both-optional 1:1 puts the key on the first side."""
        assert fk_side(self._rel((0, 1), (0, 1))) == 0

    def test_one_to_one_mandatory_side(self):
        """Test a single mandatory side receives the key."""
        assert fk_side(self._rel((0, 1), (1, 1))) == 1

    def test_one_to_many(self):
        """Test the N-side receives the key."""
        assert fk_side(self._rel((0, UNBOUNDED), (1, 1))) == 1

    def test_not_binary(self):
        """Test ternary relationships have no foreign-key side."""
        rel = RelationshipType(
            name="R",
            participants=tuple(
                Participation(entity_name=n, cardinality=Cardinality(min=0, max=1))
                for n in "ABC"
            ),
        )
        with pytest.raises(ArityError):
            fk_side(rel)


class TestPreconditions:
    """Tests for transform preconditions."""

    def test_errors_block_transform(self, corpus_dir):
        """Test a model with Error diagnostics is refused."""
        from src.parser import parse

        path = corpus_dir / "mutant_key_1.erdl"
        model = parse(path.read_text(encoding="utf-8"), path.name).model
        with pytest.raises(PreconditionError, match="R-KEY-1"):
            transform(model)

    def test_warnings_do_not_block(self, corpus_dir):
        """Test warnings alone allow the transform."""
        from src.parser import parse

        path = corpus_dir / "mutant_name_2.erdl"
        schema = transform(parse(path.read_text(encoding="utf-8"), path.name).model)
        assert schema.relation("DepartmentLocations") is not None

    def test_multivalued_relation_name_clash(self, parse_text):
        """Test a multivalued relation taking an entity's name is numbered."""
        model = parse_text(
            "entity Department {\n  key DepartmentNo\n  multi Location\n}\n"
            "entity DepartmentLocation {\n  key DepartmentLNo\n}\n"
        ).model
        schema = transform(model)

        assert [r.name for r in schema.relations] == [
            "Department",
            "DepartmentLocation",
            "DepartmentLocation2",
        ]
        locations = schema.relation("DepartmentLocation2")
        assert locations.provenance == "entity:Department/attr:Location"
        assert _column_names(locations) == ["DepartmentNo", "Location"]

    def test_relationship_name_clash(self, parse_text, caplog):
        """Test an M:N relationship named like an entity is numbered."""
        located = parse_text(
            "entity Student {\n  key StuNo\n}\n"
            "entity Course {\n  key CouNo\n}\n"
            "entity Enrollment {\n  key EnrNo\n}\n"
            "rel Enrollment {\n  Student (0,N),\n  Course (0,N)\n}\n"
        )
        assert validate(located) == []

        with caplog.at_level(logging.WARNING, logger="src.transformer"):
            schema = transform(located.model)

        assert [r.name for r in schema.relations] == [
            "Student",
            "Course",
            "Enrollment",
            "Enrollment2",
        ]
        enrollment = schema.relation("Enrollment2")
        assert enrollment.provenance == "rel:Enrollment"
        assert enrollment.primary_key == ("StuNo", "CouNo")
        assert [fk.referenced_relation for fk in enrollment.foreign_keys] == [
            "Student",
            "Course",
        ]
        assert schema.relation("Enrollment").provenance == "entity:Enrollment"
        assert "renamed to 'Enrollment2'" in caplog.text


class TestTransformProperties:
    """Property tests over generated conforming models."""

    @settings(max_examples=500, deadline=None)
    @given(conforming_models())
    def test_schema_is_consistent(self, model):
        """Test attribute conservation, key closure and foreign-key closure."""
        schema = transform(model)
        relations = {r.name: r for r in schema.relations}
        assert len(relations) == len(schema.relations)

        origins = {c.origin for r in schema.relations for c in r.columns}
        for entity in model.entities:
            for attr in entity.attributes:
                assert entity_attr_path(entity.name, attr.name) in origins
        for rel in model.relationships:
            for attr in rel.attributes:
                assert rel_attr_path(rel.name, attr.name) in origins

        for relation in schema.relations:
            names = _column_names(relation)
            assert len(set(names)) == len(names)
            assert relation.primary_key
            assert set(relation.primary_key) <= set(names)
            for fk in relation.foreign_keys:
                target = relations[fk.referenced_relation]
                assert fk.referenced_columns == target.primary_key
                assert set(fk.columns) <= set(names)
