"""
Utilidades del toolkit
"""

from .logging_config import (LoggerMixin, get_logger, init_logging, log_timed,
                             setup_logging)

__all__ = [
    "setup_logging",
    "init_logging",
    "get_logger",
    "LoggerMixin",
    "log_timed",
]
