"""Unit tests for mini-pandas-ai-txt2sql."""
