"""Rule catalog and the diagnostic record produced by the validator."""

from enum import Enum
from typing import Dict, NamedTuple, Optional

from .source import SourceSpan


class Severity(str, Enum):
    """Severity of a diagnostic."""

    ERROR = "Error"
    WARNING = "Warning"


class Rule(NamedTuple):
    """A catalog entry.

    Attributes:
        rule_id: Published identifier, e.g. ``R-KEY-1``.
        severity: Severity of every diagnostic of this rule.
        fixable: Whether the fixer repairs it.
        summary: One-line statement of the rule.
    """

    rule_id: str
    severity: Severity
    fixable: bool
    summary: str


RULE_CATALOG: Dict[str, Rule] = {
    rule.rule_id: rule
    for rule in (
        Rule(
            "R-REG-1",
            Severity.ERROR,
            False,
            "A regular entity type that is not a subtype has at least one key attribute.",
        ),
        Rule(
            "R-REG-2",
            Severity.ERROR,
            False,
            "A key attribute is atomic: it is never multivalued.",
        ),
        Rule(
            "R-REG-3",
            Severity.ERROR,
            False,
            "A key is a single attribute, never a combination of attributes.",
        ),
        Rule(
            "R-REG-4",
            Severity.ERROR,
            False,
            "Entity type names are pairwise distinct.",
        ),
        Rule(
            "R-SUB-1",
            Severity.ERROR,
            False,
            "A subtype owns an attribute or participates in a relationship.",
        ),
        Rule(
            "R-SUB-2",
            Severity.ERROR,
            False,
            "A subtype is connected to a declared supertype.",
        ),
        Rule(
            "R-WEAK-1",
            Severity.ERROR,
            False,
            "A weak entity type has no key attributes; partial keys are allowed.",
        ),
        Rule(
            "R-WEAK-2",
            Severity.ERROR,
            False,
            "A weak entity type takes part in exactly one identifying relationship with an owner.",
        ),
        Rule(
            "R-KEY-1",
            Severity.ERROR,
            True,
            "The most desired key is named with its entity type's unique prefix.",
        ),
        Rule(
            "R-NAME-1",
            Severity.ERROR,
            True,
            "Every word of a name is a capital letter followed by lower-case letters.",
        ),
        Rule(
            "R-NAME-2",
            Severity.WARNING,
            False,
            "Nouns are singular.",
        ),
        Rule(
            "R-NAME-3",
            Severity.ERROR,
            True,
            "Names contain letters only.",
        ),
        Rule(
            "R-NAME-4",
            Severity.ERROR,
            True,
            "Multi-word names are concatenated without spaces.",
        ),
        Rule(
            "R-CARD-1",
            Severity.ERROR,
            False,
            "A finite cardinality satisfies min <= max and max >= 1.",
        ),
        Rule(
            "R-REL-ARITY",
            Severity.ERROR,
            False,
            "A relationship type has at least two participants.",
        ),
    )
}

FIXABLE_RULES = frozenset(r.rule_id for r in RULE_CATALOG.values() if r.fixable)


class Diagnostic(NamedTuple):
    """One rule violation.

    Attributes:
        rule_id: Catalog identifier.
        severity: Severity taken from the catalog.
        location: Element path, e.g. ``entity:Employee/attr:EmpNo``.
        span: Source span of the element, None for JSON input.
        message: Human-readable description.
        fixable: Whether the fixer can repair it.
    """

    rule_id: str
    severity: Severity
    location: str
    span: Optional[SourceSpan]
    message: str
    fixable: bool

    @classmethod
    def create(
        cls,
        rule_id: str,
        location: str,
        message: str,
        span: Optional[SourceSpan] = None,
    ) -> "Diagnostic":
        """Build a diagnostic, taking severity and fixability from the catalog.

        Raises:
            KeyError: If ``rule_id`` is not in the catalog.
        """
        rule = RULE_CATALOG[rule_id]
        return cls(rule_id, rule.severity, location, span, message, rule.fixable)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_dict(self) -> Dict[str, object]:
        """Convert to the JSON Lines object form."""
        return {
            "ruleId": self.rule_id,
            "severity": self.severity.value,
            "location": self.location,
            "span": self.span.to_dict() if self.span else None,
            "message": self.message,
            "fixable": self.fixable,
        }

    def format_text(self, file: str = "") -> str:
        """Format as ``file:line:col: severity ruleId message``."""
        severity = self.severity.value.lower()
        if self.span is not None:
            return (
                f"{self.span.file}:{self.span.line}:{self.span.column}: "
                f"{severity} {self.rule_id} {self.message}"
            )
        return f"{file}: {severity} {self.rule_id} {self.message}"
