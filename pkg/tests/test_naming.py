"""Unit tests for naming conventions and the key-prefix algorithm."""

import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.model import Attribute, EntityType
from src.naming import (
    MIN_PREFIX_LENGTH,
    check_singular_heuristic,
    compute_prefix,
    expected_key_name,
    forbidden_characters,
    has_whitespace,
    is_camel_case,
    key_has_prefix,
    load_plural_exceptions,
    normalize_name,
    split_words,
)


def _regular(name, key):
    return EntityType(name=name, attributes=(Attribute(name=key, is_key=True),))


class TestSplitWords:
    """Tests for split_words function."""

    @pytest.mark.parametrize(
        "name,words",
        [
            ("EmpNo", ["Emp", "No"]),
            ("start_date", ["start", "date"]),
            ("emp-no", ["emp", "no"]),
            ("Start Date", ["Start", "Date"]),
            ("HTTPServer", ["HTTP", "Server"]),
            ("homeTown", ["home", "Town"]),
            ("Emp2No", ["Emp", "No"]),
            ("42", []),
        ],
    )
    def test_split(self, name, words):
        """Test word boundaries at symbols, digits, spaces and case changes."""
        assert split_words(name) == words


class TestNameChecks:
    """Tests for the naming predicates."""

    def test_forbidden_characters(self):
        """Test symbols and digits are reported once each, spaces never."""
        assert forbidden_characters("Emp_No_2") == ["_", "2"]
        assert forbidden_characters("Start Date") == []
        assert forbidden_characters("EmpNo") == []

    def test_has_whitespace(self):
        """Test whitespace detection."""
        assert has_whitespace("Start Date")
        assert not has_whitespace("StartDate")

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("EmpNo", True),
            ("Department", True),
            ("WorkPNo", True),
            ("homeTown", False),
            ("EMPNO", False),
            ("HTTPServer", False),
            ("Emp_No", True),
        ],
    )
    def test_is_camel_case(self, name, expected):
        """Test every word must be Capital followed by lower case."""
        assert is_camel_case(name) is expected


class TestNormalizeName:
    """Tests for normalize_name function."""

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("start_date", "StartDate"),
            ("emp-no", "EmpNo"),
            ("Emp_No", "EmpNo"),
            ("Start Date", "StartDate"),
            ("homeTown", "HomeTown"),
            ("HTTPServer", "HttpServer"),
            ("a_b", "Ab"),
            ("EmpNo", "EmpNo"),
            ("123", ""),
        ],
    )
    def test_normalize(self, name, expected):
        """Test split, re-case and concatenate."""
        assert normalize_name(name) == expected

    @settings(max_examples=500)
    @given(st.text(alphabet=string.ascii_letters + "_- 0123456789", max_size=20))
    def test_result_passes_checks(self, name):
        """Test a normalized name satisfies the rules it was normalized for."""
        normalized = normalize_name(name)
        assert normalize_name(normalized) == normalized
        assert is_camel_case(normalized)
        assert forbidden_characters(normalized) == []
        assert not has_whitespace(normalized)


class TestComputePrefix:
    """Tests for compute_prefix function."""

    def test_reference_prefixes(self):
        """Test the three-letter prefixes of the reference model entities."""
        pool = ["Employee", "Department", "Project"]
        assert compute_prefix("Employee", pool) == "Emp"
        assert compute_prefix("Department", pool) == "Dep"
        assert compute_prefix("Project", pool) == "Pro"

    def test_grows_until_unique(self):
        """Test a shared start grows the prefix."""
        pool = ["Employee", "Empowerment"]
        assert compute_prefix("Employee", pool) == "Empl"
        assert compute_prefix("Empowerment", pool) == "Empo"

    def test_short_name(self):
        """Test names shorter than three letters are used whole."""
        assert compute_prefix("Ab", ["Ab", "Department"]) == "Ab"

    def test_name_prefix_of_another(self):
        """Test the whole-name fallback when a name starts another."""
        assert compute_prefix("Car", ["Car", "Carpet"]) == "Car"
        assert compute_prefix("Carpet", ["Car", "Carpet"]) == "Carp"

    def test_keeps_casing(self):
        """Test the prefix is the name's own letters."""
        assert compute_prefix("Employee", ["Employee"]) == "Emp"

    @settings(max_examples=1000)
    @given(
        st.lists(
            st.text(alphabet="ABab", min_size=1, max_size=7),
            min_size=1,
            max_size=8,
            unique=True,
        )
    )
    def test_injective_and_minimal(self, pool):
        """Test prefixes are pairwise distinct and no shorter one is unique."""
        prefixes = {name: compute_prefix(name, pool) for name in pool}
        assert len(set(prefixes.values())) == len(pool)

        for name, prefix in prefixes.items():
            assert name.startswith(prefix)
            others = [n for n in pool if n != name]
            for k in range(MIN_PREFIX_LENGTH, len(prefix)):
                assert any(o.startswith(name[:k]) for o in others)


class TestExpectedKeyName:
    """Tests for expected_key_name and key_has_prefix."""

    def test_adds_prefix(self):
        """Test the Department key "No" becomes "DepNo"."""
        pool = ["Employee", "Department", "Project"]
        department = _regular("Department", "No")
        assert expected_key_name(department, pool) == "DepNo"
        assert not key_has_prefix(department, pool)

    def test_grown_prefix(self):
        """Test a grown prefix is used for the key."""
        employee = _regular("Employee", "Ssn")
        assert expected_key_name(employee, ["Employee", "Empowerment"]) == "EmplSsn"

    def test_idempotent(self):
        """Test a conforming key keeps its name."""
        pool = ["Employee", "Department"]
        employee = _regular("Employee", "EmpNo")
        assert expected_key_name(employee, pool) == "EmpNo"
        assert key_has_prefix(employee, pool)

    def test_stale_prefix_replaced(self):
        """Test a shorter prefix from a smaller pool is not doubled."""
        employee = _regular("Employee", "EmpSsn")
        assert expected_key_name(employee, ["Employee", "Empowerment"]) == "EmplSsn"

    def test_extra_suffix_conforms(self):
        """Test only the prefix is checked."""
        assert key_has_prefix(_regular("Employee", "EmpNoOld"), ["Employee"])

    def test_most_desired_key_is_used(self):
        """Test the designation picks which key is checked."""
        entity = EntityType(
            name="Employee",
            attributes=(
                Attribute(name="EmpNo", is_key=True),
                Attribute(name="Ssn", is_key=True),
            ),
            most_desired_key="Ssn",
        )
        assert expected_key_name(entity, ["Employee"]) == "EmpSsn"


class TestSingularHeuristic:
    """Tests for check_singular_heuristic and the exception list."""

    def test_plural(self):
        """Test a trailing "s" on the last word is flagged."""
        assert check_singular_heuristic("Locations")
        assert check_singular_heuristic("EmployeeRecords")

    def test_singular(self):
        """Test ordinary singular nouns pass."""
        assert not check_singular_heuristic("Location")
        assert not check_singular_heuristic("Is")

    def test_short_words_are_checked(self):
        """Test two-letter words ending in "s" are judged by the list alone."""
        assert check_singular_heuristic("PartOs")
        assert check_singular_heuristic("Is", frozenset())
        assert not check_singular_heuristic("ValueAs")
        assert not check_singular_heuristic("SendToUs")

    def test_shipped_exceptions(self):
        """Test shipped singular words ending in "s" pass."""
        assert not check_singular_heuristic("HomeAddress")
        assert not check_singular_heuristic("Status")
        assert "bonus" in load_plural_exceptions()

    def test_custom_exceptions(self, tmp_path):
        """Test a custom word list replaces the shipped one."""
        path = tmp_path / "words.txt"
        path.write_text("# singular words\nLocations\n\n", encoding="utf-8")
        exceptions = load_plural_exceptions(path)

        assert exceptions == frozenset({"locations"})
        assert not check_singular_heuristic("Locations", exceptions)
        assert check_singular_heuristic("Status", exceptions)

    def test_missing_file(self, tmp_path):
        """Test an unreadable list raises OSError."""
        with pytest.raises(OSError):
            load_plural_exceptions(tmp_path / "missing.txt")
