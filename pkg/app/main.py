"""Process entry point for the squeezed-dqpt command."""

import sys
from typing import Optional, Sequence

from app.api.cli import run
from app.config import settings
from app.utils.logger import get_logger, setup_logger

logger = get_logger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Configure logging, run the command line and exit with its code."""
    setup_logger(
        log_file=settings.LOG_FILE,
        log_level=settings.LOG_LEVEL,
        rotation=settings.LOG_ROTATION,
        retention=settings.LOG_RETENTION,
    )
    logger.debug(f"Starting {settings.APP_NAME} v{settings.APP_VERSION} ({settings.ENV})")
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
