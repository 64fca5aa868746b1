"""ERDL toolkit: entity-relationship models as a compilable language."""

__version__ = "0.1.0"
