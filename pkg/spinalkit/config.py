from pydantic_settings import BaseSettings

from spinalkit.errors import ConfigInvalid

LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


class Settings(BaseSettings):
    DEGREE_CAP: int = 1000
    ORDER_WORK_CAP: int = 10**9
    BFS_STEP_CAP: int = 12
    DEFAULT_SEED: int = 1
    THETA_SAMPLES: int = 200
    THETA_MAX_LENGTH: int = 8
    SECTION_SAMPLES: int = 1000
    SECTION_MAX_LENGTH: int = 10
    ORACLE_SAMPLES: int = 500
    ORACLE_MAX_DEPTH: int = 4
    WORD_SAMPLES: int = 1000
    NORMALIZE_SAMPLES: int = 100
    QUOTIENT_DEPTH: int = 3
    TORSION_DEPTH: int = 5
    RETRY_CAP: int = 1000
    LOG_LEVEL: str = "INFO"

    model_config = {"env_prefix": "SPINALKIT_", "env_file": ".env", "extra": "ignore"}


def get_settings() -> Settings:
    settings = Settings()
    caps = settings.model_dump(exclude={"LOG_LEVEL", "DEFAULT_SEED"})
    bad = sorted(name for name, value in caps.items() if value <= 0)
    if bad:
        raise ConfigInvalid(f"caps must be positive: {', '.join(bad)}")
    if settings.LOG_LEVEL.upper() not in LOG_LEVELS:
        raise ConfigInvalid(f"unknown LOG_LEVEL {settings.LOG_LEVEL!r}")
    settings.LOG_LEVEL = settings.LOG_LEVEL.upper()
    return settings


settings = get_settings()
