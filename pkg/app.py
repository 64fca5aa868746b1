"""Main Streamlit application for the ERDL workbench."""

import logging
import sys
from pathlib import Path
from typing import Any, Optional

import streamlit as st

# Reason: Add src directory to path for imports
src_path = Path(__file__).parent / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

from src.config import get_config
from src.naming import load_plural_exceptions
from src.ui import render_sidebar, render_workbench, run_pipeline
from src.ui.workbench import options_from_session
from src.utils import (
    clear_source,
    get_options,
    get_source,
    init_session_state,
    set_options,
    set_source,
    validate_session_state,
)

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    encoding="utf-8",
    force=True,
)
logger = logging.getLogger(__name__)


def main() -> None:
    """Main application entry point."""
    # Reason: Load configuration
    try:
        config = get_config()
    except Exception as e:
        st.error(f"Configuration error: {e}")
        logger.error(f"Configuration error: {e}", exc_info=True)
        st.stop()

    logging.getLogger().setLevel(config.erdl_log_level)

    st.set_page_config(
        page_title=config.app_title,
        page_icon="🧩",
        layout="wide",
        initial_sidebar_state="expanded",
    )

    validate_session_state()
    init_session_state(config)

    plural_exceptions = None
    if config.erdl_plural_exceptions_file is not None:
        try:
            plural_exceptions = load_plural_exceptions(config.erdl_plural_exceptions_file)
        except OSError as e:
            st.warning(f"⚠️ Could not read plural exceptions: {e}")
            logger.warning(f"Could not read plural exceptions: {e}")

    def on_file_upload(uploaded: Optional[Any]) -> None:
        """Handle file upload or removal.

        Args:
            uploaded: The uploaded file, or None when it was removed.
        """
        if uploaded is None:
            clear_source()
            return
        try:
            set_source(uploaded.getvalue().decode("utf-8"), uploaded.name)
        except UnicodeDecodeError as e:
            st.error(f"❌ '{uploaded.name}' is not valid UTF-8 text")
            logger.error(f"Failed to decode '{uploaded.name}': {e}")

    source, filename = get_source()
    rank_direction, show_cardinalities, strict = get_options()

    render_sidebar(
        rank_direction=rank_direction,
        show_cardinalities=show_cardinalities,
        strict=strict,
        on_file_upload=on_file_upload,
        on_options_change=set_options,
        on_clear=clear_source,
        has_source=bool(source),
    )

    st.title(f"🧩 {config.app_title}")
    st.caption("Lint, fix, transform and draw entity-relationship models")

    if not source:
        render_welcome_message()
        return

    st.subheader(f"📄 {filename}")
    try:
        with st.spinner("Analyzing model..."):
            result = run_pipeline(
                source,
                filename,
                options_from_session(rank_direction, show_cardinalities),
                strict=strict,
                plural_exceptions=plural_exceptions,
                column_type=config.erdl_column_type,
            )
    except Exception as e:
        st.error(f"Failed to analyze the model: {e}")
        logger.error(f"Pipeline error: {e}", exc_info=True)
        return

    render_workbench(result)


def render_welcome_message() -> None:
    """Render the welcome message."""
    st.info("""
    👋 Welcome to the ERDL Workbench!

    To get started:
    1. 📤 Upload an `.erdl` or `.json` model using the sidebar
    2. 🩺 Review the diagnostics and the suggested fixes
    3. 🗄️ Copy the generated DDL once the model conforms
    4. 🧩 Inspect the diagram
    """)


if __name__ == "__main__":
    main()
