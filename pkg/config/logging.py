"""Logging setup shared by the CLI and the verification runs."""

import logging
from typing import Optional

from config.settings import settings

DEFAULT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """Configure the root logger once per process."""
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format=fmt or settings.log_format or DEFAULT_FORMAT,
        force=True,
    )
