"""Configuration management using pydantic-settings."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="GDLZ_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    log_level: str = "WARNING"
    color: bool = True

    # Path enumeration
    max_depth: int = Field(default=64, ge=0)
    workers: int = Field(default=1, ge=1)

    # Translation
    bounds_warning_span: int = Field(default=10_000, ge=1)

    # Data paths
    data_dir: str = "data"


# Global settings instance
settings = Settings()
