import logging
import os
from pathlib import Path

import yaml

try:
    from colorama import init, Fore, Style
    init(autoreset=True)
except ImportError:
    class FakeColor:
        def __getattr__(self, name):
            return ""
    Fore = Style = FakeColor()

logger = logging.getLogger(__name__)

# Configuration
APP_NAME = "superfourier"
LOG_FILE = "superfourier.log"
CONFIG_DIR = Path.home() / ".config" / APP_NAME
CONFIG_FILE = CONFIG_DIR / "config.yaml"
THREADS_ENV = "SUPERFOURIER_THREADS"
SCHEMA_VERSION = 1

# Guardrails
CLOSURE_CAP = 10**6
GL_CANDIDATE_CAP = 10**8
VECTOR_CAP = 10**7
PERMUTATION_DIM_CAP = 10
COUNTING_CAP = 10**9
ALGEBRA_CLASS_CAP = 200
FACTORIAL_CAP = 34

# Numerics
TOLERANCE_SCALE = 1e-9
SUPPORT_THRESHOLD = 1e-8
IMAG_TOLERANCE = 1e-9

DEFAULT_CONFIG = {
    "tolerance": TOLERANCE_SCALE,
    "support_threshold": SUPPORT_THRESHOLD,
    "seed": 0,
    "random_functions": 1000,
    "parallel": 4,
    "closure_cap": CLOSURE_CAP,
    "gl_cap": GL_CANDIDATE_CAP,
    "vector_cap": VECTOR_CAP,
}


def tolerance(size: int, scale: float = TOLERANCE_SCALE) -> float:
    """Matrix-identity tolerance for an N-class theory: scale * max(1, N)."""
    return scale * max(1, size)


def load_config() -> dict:
    """Load configuration from yaml file or return defaults."""
    config = DEFAULT_CONFIG.copy()
    if CONFIG_FILE.exists():
        try:
            with open(CONFIG_FILE, "r") as f:
                user_config = yaml.safe_load(f) or {}
            config.update(user_config)
        except Exception as e:
            logger.warning(f"Failed to load config: {e}. Using defaults.")
            config = DEFAULT_CONFIG.copy()

    threads = os.getenv(THREADS_ENV)
    if threads:
        try:
            config["parallel"] = max(1, int(threads))
        except ValueError:
            logger.warning(f"Ignoring {THREADS_ENV}={threads!r}: not an integer")
    return config


def save_default_config() -> Path:
    """Create default config file if it doesn't exist."""
    if not CONFIG_FILE.exists():
        CONFIG_DIR.mkdir(parents=True, exist_ok=True)
        with open(CONFIG_FILE, "w") as f:
            yaml.dump(DEFAULT_CONFIG, f)
        logger.info(f"Created default config at {CONFIG_FILE}")
    return CONFIG_FILE
