from __future__ import annotations

import logging
from typing import Iterable, Optional

import numpy as np

DEFAULT_TOL = 1e-8
GRID = 1e-6
CLEAN = 1e-12


def log_msg(
    log: Optional[logging.Logger], msg: str, log_type: str = "info", to_print: bool = False
):
    if log:
        if "err" in log_type.lower():
            log.error(msg=msg)
        elif "warn" in log_type.lower():
            log.warning(msg=msg)
        elif "debug" in log_type.lower():
            log.debug(msg=msg)
        else:
            log.info(msg=msg)
    else:
        if to_print:
            print(msg)


def core_logger(area: str) -> logging.Logger:
    """Child of the package logger, e.g. ``sbsym.group_core``."""
    return logging.getLogger("sbsym").getChild(area)


def grid_key(values: Iterable[float] | np.ndarray, grid: float = GRID) -> tuple:
    """Hashable key of a float array snapped to ``grid`` (``-0.0`` folded to ``0.0``)."""
    arr = np.asarray(values, dtype=float).ravel()
    snapped = np.round(arr / grid) + 0.0
    return tuple(int(v) for v in snapped)


def snap(values: np.ndarray, grid: float = GRID) -> np.ndarray:
    return np.round(np.asarray(values, dtype=float) / grid) * grid + 0.0

