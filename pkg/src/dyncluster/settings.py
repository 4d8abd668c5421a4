"""Runtime settings management using Pydantic."""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    threads: int = Field(
        default=1,
        alias="DYNCLUSTER_THREADS",
        description="Worker threads for independent (algorithm, sweep point) cells",
    )

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        """Validate thread count is positive."""
        if v < 1:
            raise ValueError("DYNCLUSTER_THREADS must be >= 1")
        return v


@lru_cache()
def get_settings() -> Settings:
    """Get runtime settings instance."""
    return Settings()
