"""Main workbench area: diagnostics, fixes, schema and diagram tabs."""

import logging
from typing import FrozenSet, List, NamedTuple, Optional

import pandas as pd
import streamlit as st

from src.ddl import emit_ddl
from src.errors import ModelError
from src.fixer import FixReport, fix
from src.printer import print_model
from src.renderer import RankDirection, RenderOptions, render
from src.rules import Diagnostic
from src.serialization import load_located
from src.source import LocatedModel
from src.transformer import transform
from src.validator import count_by_severity, has_errors, validate

logger = logging.getLogger(__name__)


class WorkbenchResult(NamedTuple):
    """Everything the workbench shows for one source.

    Attributes:
        located: The loaded model, None when loading failed.
        diagnostics: Validator output.
        fixed_source: ERDL of the fixed model.
        report: Fix ledger.
        ddl: DDL text, None while the model has blocking diagnostics.
        dot: DOT source of the diagram.
        error: Load error message, if any.
    """

    located: Optional[LocatedModel]
    diagnostics: List[Diagnostic]
    fixed_source: str = ""
    report: Optional[FixReport] = None
    ddl: Optional[str] = None
    dot: str = ""
    error: Optional[str] = None


def run_pipeline(
    source: str,
    filename: str,
    options: RenderOptions,
    strict: bool = False,
    plural_exceptions: Optional[FrozenSet[str]] = None,
    column_type: str = "TEXT",
) -> WorkbenchResult:
    """Run load, lint, fix, transform and render over one source.

    Args:
        source: ERDL or JSON text.
        filename: File name; a ``.json`` suffix selects the JSON loader.
        options: Diagram options.
        strict: Let warnings block DDL generation.
        plural_exceptions: Word list for R-NAME-2.
        column_type: Placeholder SQL type.

    Returns:
        WorkbenchResult: The outputs; ``error`` is set when loading failed.
    """
    try:
        located = load_located(source, filename, lenient=True)
    except ModelError as e:
        logger.warning(f"Could not load '{filename}': {e}")
        return WorkbenchResult(located=None, diagnostics=[], error=str(e))

    diagnostics = validate(located, plural_exceptions)
    fixed, report = fix(located.model, plural_exceptions)

    ddl: Optional[str] = None
    if not has_errors(diagnostics, strict):
        try:
            ddl = emit_ddl(transform(located.model, plural_exceptions), column_type)
        except ModelError as e:
            logger.warning(f"Could not transform '{filename}': {e}")

    return WorkbenchResult(
        located=located,
        diagnostics=diagnostics,
        fixed_source=print_model(fixed),
        report=report,
        ddl=ddl,
        dot=render(located.model, options),
    )


def diagnostics_frame(diagnostics: List[Diagnostic]) -> pd.DataFrame:
    """Tabulate diagnostics for display.

    Args:
        diagnostics: Validator output.

    Returns:
        pd.DataFrame: One row per diagnostic.
    """
    columns = ["Line", "Column", "Severity", "Rule", "Location", "Message", "Fixable"]
    rows = [
        {
            "Line": d.span.line if d.span else None,
            "Column": d.span.column if d.span else None,
            "Severity": d.severity.value,
            "Rule": d.rule_id,
            "Location": d.location,
            "Message": d.message,
            "Fixable": d.fixable,
        }
        for d in diagnostics
    ]
    return pd.DataFrame(rows, columns=columns)


def renames_frame(report: FixReport) -> pd.DataFrame:
    """Tabulate the renames of a fix report."""
    columns = ["Rule", "Location", "Old Name", "New Name"]
    rows = [
        {
            "Rule": r.rule_id,
            "Location": r.location,
            "Old Name": r.old_name,
            "New Name": r.new_name,
        }
        for r in report.renames
    ]
    return pd.DataFrame(rows, columns=columns)


def render_workbench(result: WorkbenchResult) -> None:
    """Render the tabs for a pipeline result.

    Args:
        result: Output of :func:`run_pipeline`.
    """
    if result.error is not None:
        st.error(f"Could not load the model: {result.error}")
        return

    counts = count_by_severity(result.diagnostics)
    diag_tab, fix_tab, schema_tab, diagram_tab = st.tabs(
        ["🩺 Diagnostics", "🔧 Fix", "🗄️ Schema", "🧩 Diagram"]
    )

    with diag_tab:
        if not result.diagnostics:
            st.success("✅ The model conforms to every rule.")
        else:
            st.caption(f"{counts['Error']} error(s), {counts['Warning']} warning(s)")
            st.dataframe(
                diagnostics_frame(result.diagnostics), use_container_width=True
            )

    with fix_tab:
        report = result.report
        if report is None or not report.renames:
            st.info("Nothing to fix automatically.")
        else:
            st.dataframe(renames_frame(report), use_container_width=True)
        if report is not None:
            for skipped in report.skipped:
                st.warning(f"⚠️ Skipped {skipped.rule_id} at {skipped.location}: {skipped.reason}")
        st.code(result.fixed_source, language="text")

    with schema_tab:
        if result.ddl is None:
            st.warning("Fix the errors first: DDL is generated for conforming models only.")
        else:
            st.code(result.ddl, language="sql")

    with diagram_tab:
        st.graphviz_chart(result.dot, use_container_width=True)


def options_from_session(rank_direction: str, show_cardinalities: bool) -> RenderOptions:
    """Build render options from session values."""
    return RenderOptions(
        rank_direction=RankDirection(rank_direction),
        show_cardinalities=show_cardinalities,
    )
