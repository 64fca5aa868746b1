"""Streamlit sidebar component for model upload and options."""

import logging
from typing import Any, Callable, Optional

import streamlit as st

from src.utils.session import KEY_PREV_UPLOAD

logger = logging.getLogger(__name__)

RANK_DIRECTIONS = ["LR", "TB"]


def render_sidebar(
    rank_direction: str,
    show_cardinalities: bool,
    strict: bool,
    on_file_upload: Optional[Callable[[Optional[Any]], None]] = None,
    on_options_change: Optional[Callable[[str, bool, bool], None]] = None,
    on_clear: Optional[Callable[[], None]] = None,
    has_source: bool = False,
) -> Optional[Any]:
    """Render the sidebar with model upload and options.

    Args:
        rank_direction: Current diagram direction (LR or TB).
        show_cardinalities: Current cardinality-label setting.
        strict: Current strict-mode setting.
        on_file_upload: Callback with the uploaded file, or None when removed.
        on_options_change: Callback with the new (direction, labels, strict).
        on_clear: Callback when clear is clicked.
        has_source: Whether a model is currently loaded.

    Returns:
        Optional[Any]: The uploaded file object, if any.
    """
    with st.sidebar:
        st.header("Model")

        uploaded = st.file_uploader(
            "Upload a model",
            type=["erdl", "json"],
            accept_multiple_files=False,
            help="ERDL source (.erdl) or canonical JSON (.json).",
        )

        # Reason: Track previous upload to detect new uploads and removals
        if KEY_PREV_UPLOAD not in st.session_state:
            st.session_state[KEY_PREV_UPLOAD] = None

        current_name = uploaded.name if uploaded is not None else None
        if on_file_upload and current_name != st.session_state[KEY_PREV_UPLOAD]:
            on_file_upload(uploaded)
            st.session_state[KEY_PREV_UPLOAD] = current_name
            st.rerun()

        if uploaded is not None:
            st.caption(f"📄 {uploaded.name}")
        else:
            st.info("No model uploaded yet.")

        st.divider()

        st.header("Options")
        direction_input = st.selectbox(
            "Rank direction",
            options=RANK_DIRECTIONS,
            index=RANK_DIRECTIONS.index(rank_direction)
            if rank_direction in RANK_DIRECTIONS
            else 0,
            help="LR: left to right | TB: top to bottom",
        )
        cardinalities_input = st.checkbox(
            "Show cardinalities",
            value=show_cardinalities,
            help="Label participation edges with (min,max)",
        )
        strict_input = st.checkbox(
            "Strict mode",
            value=strict,
            help="Warnings also block DDL generation",
        )

        new_options = (direction_input, cardinalities_input, strict_input)
        if on_options_change and new_options != (
            rank_direction,
            show_cardinalities,
            strict,
        ):
            on_options_change(*new_options)

        st.divider()

        st.header("Actions")
        if st.button("Clear Model", use_container_width=True, disabled=not has_source):
            if on_clear:
                on_clear()
                st.rerun()

        with st.expander("💡 ERDL Quick Reference"):
            st.markdown("""
            ```
            model Company

            entity Employee {
              key EmpNo
              Name
              multi Phone
            }

            weak entity Dependent {
              partialkey Name
            }

            identifying rel DependentOf {
              Dependent (1,1),
              Employee (0,N)
            }
            ```
            `key!` picks the most desired key; `#` starts a comment.
            """)

        st.divider()
        st.caption("Built with Streamlit + Graphviz")

    return uploaded
