"""Session state management for the Streamlit workbench."""

import logging
from typing import Any, Optional, Tuple

logger = logging.getLogger(__name__)

# Session state keys
KEY_SOURCE = "source_text"
KEY_FILENAME = "source_name"
KEY_RANK_DIRECTION = "rank_direction"
KEY_SHOW_CARDINALITIES = "show_cardinalities"
KEY_STRICT = "strict"
KEY_PREV_UPLOAD = "prev_uploaded_file"

DEFAULT_RANK_DIRECTION = "LR"


def init_session_state(config: Optional[Any] = None) -> None:
    """Initialize all session state keys with default values.

    This should be called at the start of the Streamlit app
    to ensure all session state keys exist.

    Args:
        config: Toolkit configuration supplying option defaults; built-in
            defaults are used when None.
    """
    import streamlit as st

    defaults = {
        KEY_SOURCE: "",
        KEY_FILENAME: "",
        KEY_RANK_DIRECTION: (
            config.erdl_rank_direction if config is not None else DEFAULT_RANK_DIRECTION
        ),
        KEY_SHOW_CARDINALITIES: (
            config.erdl_show_cardinalities if config is not None else True
        ),
        KEY_STRICT: config.erdl_strict if config is not None else False,
    }
    for key, value in defaults.items():
        if key not in st.session_state:
            st.session_state[key] = value


def set_source(text: str, filename: str) -> None:
    """Store the current model source.

    Args:
        text: ERDL or JSON source text.
        filename: Name of the uploaded file; its suffix selects the loader.
    """
    import streamlit as st

    st.session_state[KEY_SOURCE] = text
    st.session_state[KEY_FILENAME] = filename
    logger.info(f"Loaded source '{filename}' ({len(text)} characters)")


def get_source() -> Tuple[str, str]:
    """Get the current model source.

    Returns:
        Tuple[str, str]: Source text and file name (both empty when unset).
    """
    import streamlit as st

    return st.session_state.get(KEY_SOURCE, ""), st.session_state.get(KEY_FILENAME, "")


def clear_source() -> None:
    """Forget the current model source."""
    import streamlit as st

    st.session_state[KEY_SOURCE] = ""
    st.session_state[KEY_FILENAME] = ""
    logger.info("Source cleared")


def set_options(rank_direction: str, show_cardinalities: bool, strict: bool) -> None:
    """Store the diagram and lint options.

    Args:
        rank_direction: LR or TB.
        show_cardinalities: Label participation edges with (min,max).
        strict: Let warnings block DDL generation.
    """
    import streamlit as st

    st.session_state[KEY_RANK_DIRECTION] = rank_direction
    st.session_state[KEY_SHOW_CARDINALITIES] = show_cardinalities
    st.session_state[KEY_STRICT] = strict
    logger.debug(
        f"Options: rankdir={rank_direction}, cardinalities={show_cardinalities}, "
        f"strict={strict}"
    )


def get_options() -> Tuple[str, bool, bool]:
    """Get the diagram and lint options.

    Returns:
        Tuple[str, bool, bool]: Rank direction, cardinality labels, strict mode.
    """
    import streamlit as st

    return (
        st.session_state.get(KEY_RANK_DIRECTION, DEFAULT_RANK_DIRECTION),
        st.session_state.get(KEY_SHOW_CARDINALITIES, True),
        st.session_state.get(KEY_STRICT, False),
    )


def validate_session_state() -> bool:
    """Validate session state integrity and recover from corruption.

    Checks that the session state keys that exist have valid types and
    values. Resets any corrupted values to defaults.

    Returns:
        bool: True if session state was valid, False if corruption was detected and fixed.
    """
    import streamlit as st

    corruption_detected = False

    for key in (KEY_SOURCE, KEY_FILENAME):
        if key in st.session_state and not isinstance(st.session_state[key], str):
            logger.warning(f"Session state corruption: {key} is not a string, resetting")
            st.session_state[key] = ""
            corruption_detected = True

    if KEY_RANK_DIRECTION in st.session_state:
        if st.session_state[KEY_RANK_DIRECTION] not in ("LR", "TB"):
            logger.warning(
                f"Session state corruption: {KEY_RANK_DIRECTION} is not LR or TB, resetting"
            )
            st.session_state[KEY_RANK_DIRECTION] = DEFAULT_RANK_DIRECTION
            corruption_detected = True

    for key, default in ((KEY_SHOW_CARDINALITIES, True), (KEY_STRICT, False)):
        if key in st.session_state and not isinstance(st.session_state[key], bool):
            logger.warning(f"Session state corruption: {key} is not a bool, resetting")
            st.session_state[key] = default
            corruption_detected = True

    # Reason: The sidebar tracks the last upload name, or None
    if KEY_PREV_UPLOAD in st.session_state:
        prev = st.session_state[KEY_PREV_UPLOAD]
        if prev is not None and not isinstance(prev, str):
            logger.warning(
                f"Session state corruption: {KEY_PREV_UPLOAD} is not a string, resetting"
            )
            st.session_state[KEY_PREV_UPLOAD] = None
            corruption_detected = True

    if corruption_detected:
        logger.warning("Session state corruption detected and fixed")
    else:
        logger.debug("Session state validation passed")

    return not corruption_detected
