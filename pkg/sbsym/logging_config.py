from __future__ import annotations

import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from platformdirs import user_log_dir

LOGGER_NAME = "sbsym"
LOG_FILENAME = "sbsym.log"
FILE_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
CONSOLE_FORMAT = "%(levelname)s | %(name)s | %(message)s"


def _resolve_log_dir(config_log_dir: Optional[str] = None) -> Path:
    # env > config > platform default
    env_dir = os.getenv("SBSYM_LOG_DIR")
    chosen = Path(
        env_dir or config_log_dir or user_log_dir(appname=LOGGER_NAME, appauthor=LOGGER_NAME)
    )
    chosen.mkdir(parents=True, exist_ok=True)
    return chosen


def log_file_path(config_log_dir: Optional[str] = None) -> Path:
    return _resolve_log_dir(config_log_dir) / LOG_FILENAME


def _is_ours(handler: logging.Handler) -> bool:
    return getattr(handler, "_sbsym_tag", False)


def setup_logging(config_log_dir: Optional[str] = None) -> logging.Logger:
    """
    File-only logging for the 'sbsym' logger tree, appended under the log dir.
    Standard output stays reserved for payloads; nothing reaches the root logger.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False
    if not any(_is_ours(h) for h in logger.handlers):
        fh = logging.FileHandler(log_file_path(config_log_dir), mode="a", encoding="utf-8")
        fh.setFormatter(logging.Formatter(FILE_FORMAT))
        fh._sbsym_tag = True  # type: ignore[attr-defined]
        logger.addHandler(fh)
    return logger


def teardown_logging() -> None:
    """Close the file handler so the next setup may pick another directory."""
    logger = logging.getLogger(LOGGER_NAME)
    for h in [h for h in logger.handlers if _is_ours(h)]:
        logger.removeHandler(h)
        h.close()


@contextmanager
def verbose_console(logger: logging.Logger, enabled: bool = True) -> Iterator[None]:
    """Mirror ``logger``'s debug records to stderr while the block runs (``-v``)."""
    if not enabled:
        yield
        return
    ch = logging.StreamHandler()
    ch.setLevel(logging.DEBUG)
    ch.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    logger.addHandler(ch)
    try:
        yield
    finally:
        logger.removeHandler(ch)
        ch.close()
