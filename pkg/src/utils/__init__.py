"""Utility modules for session state management."""

from .session import (
    clear_source,
    get_options,
    get_source,
    init_session_state,
    set_options,
    set_source,
    validate_session_state,
)

__all__ = [
    "init_session_state",
    "set_source",
    "get_source",
    "clear_source",
    "set_options",
    "get_options",
    "validate_session_state",
]
