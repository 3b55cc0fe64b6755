import logging
import os
import sys
from typing import Optional

import numpy as np

from .config import LOG_FILE, THREADS_ENV, Fore, Style

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False, log_file: Optional[str] = LOG_FILE):
    """Configure root logging: a file handler plus stderr (stdout carries results only)."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
        handlers=handlers,
        force=True,
    )


def status(message: str, ok: bool = True):
    """Print a coloured one-line status on stderr."""
    mark = f"{Fore.GREEN}✓" if ok else f"{Fore.RED}✗"
    print(f"{mark} {message}{Style.RESET_ALL}", file=sys.stderr)


def warn(message: str):
    print(f"{Fore.YELLOW}! {message}{Style.RESET_ALL}", file=sys.stderr)


def resolve_threads(configured: Optional[int] = None) -> int:
    """Worker count: SUPERFOURIER_THREADS wins, then the configured value, then 4."""
    env = os.getenv(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning(f"Ignoring {THREADS_ENV}={env!r}: not an integer")
    return max(1, int(configured or 4))


def max_abs(a) -> float:
    """Max-norm of an array (0.0 for empty input)."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0
