import logging
import sys
from typing import Optional

from config import constants

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


def initialize_logging(level: Optional[str] = None) -> bool:
    """
    Initializes process-wide logging for the engine.

    This function:
    - Attaches a single stderr handler to the root logger (stdout is reserved for data)
    - Skips handler creation if one was already attached by an earlier call
    - Applies the requested level, falling back to constants.LOG_LEVEL

    Args:
        level: Logging level name such as "DEBUG" or "INFO".

    Returns:
        bool: True if the level was applied, False if the level name is unknown.
    """
    level_name = (level or constants.LOG_LEVEL).upper()
    numeric = logging.getLevelName(level_name)
    if not isinstance(numeric, int):
        return False

    root = logging.getLogger()
    if not any(getattr(h, "_verma_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._verma_handler = True
        root.addHandler(handler)
    root.setLevel(numeric)
    return True
