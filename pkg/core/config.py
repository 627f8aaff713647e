"""
Environment-backed settings.

Values are read once from the process environment after loading an optional
`.env` file with python-dotenv. Anything a user might want to tune between
runs without touching code (caps, tolerance, seed, log level) lives here.
"""
import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

from core.errors import ConfigurationError

logger = logging.getLogger(__name__)

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """
    Process-wide settings.

    Attributes:
        max_ball_length (int): Largest L accepted by `enumerate_ball`.
        max_tree_radius (int): Largest radius of an explicitly built TreeBall.
        tolerance (float): Relative tolerance for floating comparisons.
        seed (int): Default seed for every random choice.
        log_level (str): Level name used by the CLI.
    """
    max_ball_length: int = 14
    max_tree_radius: int = 16
    tolerance: float = 1e-9
    seed: int = 0
    log_level: str = "INFO"


def _read_int(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        logger.error("Environment variable %s is not an integer: %r", name, raw)
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def _read_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError as e:
        logger.error("Environment variable %s is not a number: %r", name, raw)
        raise ConfigurationError(f"{name} must be a number, got {raw!r}") from e
    if not value > 0:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Loads `.env` (if present) and builds the Settings object.

    Returns:
        Settings: The cached settings.

    Raises:
        ConfigurationError: If a variable is present but malformed.
    """
    load_dotenv()
    level = os.getenv("HECKE_LOG_LEVEL", "INFO").strip().upper() or "INFO"
    if level not in _LOG_LEVELS:
        raise ConfigurationError(f"HECKE_LOG_LEVEL must be one of {_LOG_LEVELS}, got {level!r}")
    return Settings(
        max_ball_length=_read_int("HECKE_MAX_BALL_LENGTH", 14),
        max_tree_radius=_read_int("HECKE_MAX_TREE_RADIUS", 16),
        tolerance=_read_float("HECKE_TOLERANCE", 1e-9),
        seed=_read_int("HECKE_SEED", 0),
        log_level=level,
    )
