"""Logging configuration utilities."""

import logging
import sys
from typing import Optional

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str = "INFO", format: Optional[str] = None) -> None:
    """Setup logging configuration.

    Logs go to stderr so that reports printed on stdout stay machine-readable.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
        format: Log format string (optional)
    """
    if format is None:
        format = DEFAULT_FORMAT

    numeric = getattr(logging, level.upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"Invalid log level: {level}")

    logging.basicConfig(
        level=numeric,
        format=format,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    # Third-party chatter
    for name in ("joblib", "matplotlib", "numba"):
        logging.getLogger(name).setLevel(logging.WARNING)
