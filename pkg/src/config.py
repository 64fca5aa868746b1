"""Configuration management for the toolkit."""

from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class ToolkitConfig(BaseSettings):
    """Toolkit configuration loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Linting
    erdl_log_level: str = Field(
        default="INFO",
        description="Log level for the CLI and the workbench",
    )
    erdl_plural_exceptions_file: Optional[Path] = Field(
        default=None,
        description="Word list replacing the shipped R-NAME-2 exceptions",
    )
    erdl_strict: bool = Field(
        default=False,
        description="Treat warnings as exit-relevant",
    )

    # Rendering and DDL
    erdl_rank_direction: str = Field(
        default="LR",
        description="Default diagram rank direction (LR or TB)",
    )
    erdl_show_cardinalities: bool = Field(
        default=True,
        description="Label participation edges with (min,max)",
    )
    erdl_column_type: str = Field(
        default="TEXT",
        description="Placeholder column type used in generated DDL",
    )

    # Workbench
    app_title: str = Field(
        default="ERDL Workbench",
        description="Workbench title",
    )

    @field_validator("erdl_log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the allowed values."""
        allowed_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in allowed_levels:
            raise ValueError(f"log_level must be one of {allowed_levels}")
        return v.upper()

    @field_validator("erdl_rank_direction")
    @classmethod
    def validate_rank_direction(cls, v: str) -> str:
        """Validate the rank direction."""
        allowed = {"LR", "TB"}
        if v.upper() not in allowed:
            raise ValueError(f"rank_direction must be one of {allowed}")
        return v.upper()

    @field_validator("erdl_column_type")
    @classmethod
    def validate_column_type(cls, v: str) -> str:
        """Validate the column type is a single bare SQL word."""
        if not v or not v.replace("_", "").isalnum():
            raise ValueError("column_type must be a single SQL type word")
        return v.upper()


# Global configuration instance
_config: Optional[ToolkitConfig] = None


def get_config() -> ToolkitConfig:
    """Get the global configuration instance.

    Returns:
        ToolkitConfig: The toolkit configuration.

    Raises:
        ValueError: If an environment variable holds an invalid value.
    """
    global _config
    if _config is None:
        _config = ToolkitConfig()
    return _config


def reload_config() -> ToolkitConfig:
    """Reload configuration from environment variables.

    Returns:
        ToolkitConfig: The newly loaded configuration.
    """
    global _config
    load_dotenv(override=True)
    _config = ToolkitConfig()
    return _config
