"""
🖥️ Logging and terminal helpers shared by the library and the CLI.
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

# Optional UI enhancements
try:
    from colorama import Fore, Style, init as colorama_init
    from tqdm import tqdm

    colorama_init()
    HAS_UI_LIBS = True
except ImportError:
    # Fallback for systems without UI libraries
    class MockColor:
        RED = GREEN = YELLOW = BLUE = MAGENTA = CYAN = WHITE = ""
        RESET_ALL = BRIGHT = ""

    Fore = Style = MockColor()

    def tqdm(iterable=None, **kwargs):
        """Fallback tqdm that just returns the iterable"""
        return iterable

    HAS_UI_LIBS = False

LOGGER_NAME = "depmod"
LOG_FORMAT = "[%(asctime)s] %(message)s"


def setup_logging(verbose=0, log_file=None):
    """Configure the package logger: stderr console handler plus optional rotating file."""
    logger = logging.getLogger(LOGGER_NAME)
    log_file = log_file or os.getenv("DEPMOD_LOG_FILE")

    # Prevent duplicate handlers
    if logger.handlers:
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()

    logger.setLevel(logging.DEBUG)
    console_level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    logger.addHandler(console_handler)

    if log_file:
        # 5MB max, keep 3 backups
        file_handler = RotatingFileHandler(log_file, maxBytes=5 * 1024 * 1024, backupCount=3)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(file_handler)

    # Prevent propagation to root logger
    logger.propagate = False
    return logger


def colored_status(status, text, stream=None):
    """Prefix text with a status marker, colored only when stream is a terminal."""
    stream = stream or sys.stdout
    markers = {"good": "✅", "warning": "⚠️", "error": "❌"}
    marker = markers.get(status, "ℹ️")
    colors = {"good": Fore.GREEN, "warning": Fore.YELLOW, "error": Fore.RED}
    color = colors.get(status, "")
    if HAS_UI_LIBS and color and hasattr(stream, "isatty") and stream.isatty():
        return f"{color}{marker} {text}{Style.RESET_ALL}"
    return f"{marker} {text}"
