"""Error hierarchy for the toolkit.

Every error is a ``ValueError`` so callers that only care about bad input
can catch one class; each may carry the source span it refers to.
"""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .source import SourceSpan


class ModelError(ValueError):
    """Base class for all model, parse and pipeline errors.

    Attributes:
        message: Human-readable description.
        span: Source location of the offending text, if known.
    """

    def __init__(self, message: str, span: Optional["SourceSpan"] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class ParseSyntaxError(ModelError):
    """Token or grammar violation in ERDL source."""


class UnresolvedReferenceError(ModelError):
    """A name refers to an entity or attribute that is not declared."""


class IsaCycleError(ModelError):
    """The Is-A graph contains a cycle."""


class DuplicateDeclarationError(ModelError):
    """Two declarations share a name within the same scope."""


class JsonFormatError(ModelError):
    """JSON input is malformed or violates the canonical model format."""


class UnknownEntityError(ModelError):
    """An operation was asked about an entity the model does not contain."""


class ArityError(ModelError):
    """A relationship has the wrong number of participants for an operation."""


class CollisionError(ModelError):
    """A rename would duplicate an existing name in the same scope."""


class PreconditionError(ModelError):
    """A pipeline stage was called on a model it cannot accept."""


class CyclicDependencyError(ModelError):
    """Foreign keys form a cycle and deferral was not allowed."""
