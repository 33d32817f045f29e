"""
Logging utilities
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
import colorlog

# Loggers created through setup_logger, so the CLI can re-level them at once
_registry = {}


def _file_handler(log_file, level):
    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=10*1024*1024,  # 10MB
        backupCount=5
    )
    file_handler.setLevel(level)
    file_handler.setFormatter(logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    ))
    return file_handler


def setup_logger(name, log_file=None, level=logging.INFO):
    """
    Setup logger with console and file handlers

    Console output goes to stderr; stdout is reserved for reports.

    Args:
        name: Logger name
        log_file: Log file path (optional)
        level: Log level

    Returns:
        Logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    # Remove existing handlers
    logger.handlers = []

    console_handler = colorlog.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(colorlog.ColoredFormatter(
        '%(log_color)s%(asctime)s - %(levelname)s - %(message)s%(reset)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        log_colors={
            'DEBUG': 'cyan',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        }
    ))
    logger.addHandler(console_handler)

    if log_file:
        logger.addHandler(_file_handler(log_file, level))

    _registry[name] = logger
    return logger


def configure_logging(level=logging.INFO, log_file=None):
    """
    Re-level every toolkit logger and optionally attach a shared log file

    Args:
        level: Log level name or number
        log_file: Log file path (optional)
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    shared_file = _file_handler(log_file, level) if log_file else None

    for logger in _registry.values():
        logger.setLevel(level)
        for handler in logger.handlers:
            if not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)
        if shared_file is not None:
            logger.handlers = [h for h in logger.handlers if not isinstance(h, RotatingFileHandler)]
            logger.addHandler(shared_file)
