"""Application configuration using Pydantic Settings."""

from pathlib import Path
from typing import Dict, Optional, Union

from pydantic_settings import BaseSettings, SettingsConfigDict

from app.api.exceptions import ConfigurationException


class Settings(BaseSettings):
    """Application configuration."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="allow"
    )

    # Application Configuration
    APP_NAME: str = "Squeezed DQPT"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    ENV: str = "production"  # development, production

    # Momentum Grid
    DEFAULT_SITES: int = 2000

    # Root Finding & Minimization
    ROOT_RESOLUTION: int = 4096
    ROOT_XTOL: float = 1e-12
    ALL_CRITICAL_TOL: float = 1e-10

    # Numerical Guards
    LOG_FLOOR: float = 1e-300
    AMPLITUDE_FLOOR: float = 1e-12
    GAP_FLOOR: float = 1e-12
    PHS_TOL: float = 1e-15

    # Rate Function
    PEAK_PROMINENCE: float = 1e-2
    PEAK_SLOPE_WINDOW: int = 8

    # Pairing Amplitude Quadrature
    QUADRATURE_PANELS: int = 4096
    QUADRATURE_TOL: float = 1e-10
    QUADRATURE_MAX_PANELS: int = 4096 * 2**8

    # Phases
    WINDING_RESIDUE_TOL: float = 0.1

    # Delta Scan
    SCAN_R_STEPS: int = 128
    SCAN_PHI_STEPS: int = 128
    SCAN_WORKERS: int = 1

    # Exact Diagonalization
    ED_MIN_SITES: int = 4
    ED_MAX_SITES: int = 12
    ED_KERNEL: str = "discrete"  # discrete, integral

    # Validation
    FOCK_ORACLE_TOL: float = 1e-10
    ED_ORACLE_TOL: float = 1e-8
    ED_ORACLE_LOOSE_TOL: float = 1e-6
    ED_SINGULARITY_GUARD: float = 1e-3
    VALIDATION_SEED: int = 20240607
    VALIDATION_SAMPLES: int = 10000

    # Output
    CSV_FLOAT_FORMAT: str = ".17g"

    # Log Configuration
    LOG_LEVEL: str = "WARNING"
    LOG_FILE: Optional[str] = None
    LOG_ROTATION: str = "10 MB"
    LOG_RETENTION: str = "30 days"


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Parse a plain-text run file of ``key = value`` lines.

    Blank lines and ``#`` comments are skipped. Keys are normalised to the
    argparse destination form (``r-steps`` becomes ``r_steps``).

    Args:
        path: Path to the run file

    Returns:
        Mapping of normalised keys to raw string values

    Raises:
        ConfigurationException: If the file is missing or a line is malformed
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigurationException(str(config_path), "config file not found")

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(config_path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationException(
                str(config_path), f"line {lineno}: expected 'key = value', got {raw!r}"
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigurationException(str(config_path), f"line {lineno}: empty key or value")
        values[key.lstrip("-").replace("-", "_")] = value
    return values


# Global settings instance
settings = Settings()

__all__ = ["Settings", "settings", "load_config_file"]
