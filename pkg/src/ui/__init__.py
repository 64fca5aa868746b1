"""Streamlit UI components."""

from .sidebar import render_sidebar
from .workbench import render_workbench, run_pipeline

__all__ = ["render_sidebar", "render_workbench", "run_pipeline"]
