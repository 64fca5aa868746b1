"""Pytest fixtures for testing."""

import logging
from pathlib import Path
from unittest.mock import Mock

import pytest

logging.basicConfig(level=logging.INFO)

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def corpus_dir():
    """Directory holding figure1.erdl and the mutant files.

    Returns:
        Path: The corpus directory.
    """
    return CORPUS_DIR


@pytest.fixture
def golden_dir():
    """Directory holding the golden DDL and DOT files.

    Returns:
        Path: The golden directory.
    """
    return GOLDEN_DIR


@pytest.fixture
def figure1_path():
    """Path of the reference model.

    Returns:
        Path: corpus/figure1.erdl.
    """
    return CORPUS_DIR / "figure1.erdl"


@pytest.fixture
def figure1_source(figure1_path):
    """ERDL text of the reference model.

    Returns:
        str: File contents.
    """
    return figure1_path.read_text(encoding="utf-8")


@pytest.fixture
def figure1_located(figure1_source):
    """Parsed reference model with spans.

    Returns:
        LocatedModel: The parsed corpus file.
    """
    from src.parser import parse

    return parse(figure1_source, "figure1.erdl")


@pytest.fixture
def figure1(figure1_located):
    """The reference model.

    Returns:
        ERModel: The parsed model.
    """
    return figure1_located.model


@pytest.fixture
def parse_text():
    """Parse ERDL text given inline.

    Returns:
        Callable[[str], LocatedModel]: Parser bound to the file name "test.erdl".
    """
    from src.parser import parse

    def _parse(text: str):
        return parse(text, "test.erdl")

    return _parse


@pytest.fixture
def mock_config():
    """Create a mock configuration.

    Returns:
        Mock: Mock configuration object.
    """
    config = Mock()
    config.app_title = "Test Workbench"
    config.erdl_log_level = "INFO"
    config.erdl_rank_direction = "TB"
    config.erdl_show_cardinalities = False
    config.erdl_strict = True
    config.erdl_column_type = "TEXT"
    config.erdl_plural_exceptions_file = None
    return config
