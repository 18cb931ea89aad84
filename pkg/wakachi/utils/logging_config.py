"""
Configuración de logging para el toolkit

La consola siempre escribe en stderr; stdout queda para la salida de los comandos.
"""

import json
import logging
import logging.handlers
import sys
import time
from datetime import datetime, timezone
from functools import wraps
from pathlib import Path
from typing import Optional

from ..envs import settings

# Atributos `extra` que los formateadores incluyen en la salida
_EXTRA_FIELDS = (
    "operation",
    "duration_ms",
    "iteration",
    "objective",
    "active",
    "species",
    "generation",
    "sentences",
)

# Umbral a partir del cual una operación se reporta como lenta
SLOW_OPERATION_MS = 60_000


def _extras(record: logging.LogRecord) -> dict:
    return {f: getattr(record, f) for f in _EXTRA_FIELDS if hasattr(record, f)}


def _created_utc(record: logging.LogRecord) -> datetime:
    return datetime.fromtimestamp(record.created, timezone.utc)


class JSONFormatter(logging.Formatter):
    """Una línea JSON por registro, con los campos extra del dominio"""

    def format(self, record):
        entry = {
            "timestamp": _created_utc(record).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
        }
        entry.update(_extras(record))
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


class ColoredFormatter(logging.Formatter):
    """Formato compacto con color por nivel para la terminal"""

    LEVEL_COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record):
        color = self.LEVEL_COLORS.get(record.levelname, self.RESET)
        line = (
            f"{color}{_created_utc(record):%H:%M:%S} {record.levelname:<8}{self.RESET}"
            f" {record.name}: {record.getMessage()}"
        )
        extras = _extras(record)
        if "duration_ms" in extras:
            extras["duration_ms"] = f"{extras['duration_ms']:.0f}"
        if extras:
            line += " [" + " ".join(f"{k}={v}" for k, v in extras.items()) + "]"
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def _file_handler(log_file: str, level: int) -> logging.Handler:
    Path(log_file).parent.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        log_file, maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8"
    )
    handler.setLevel(level)
    # Los archivos siempre en JSON
    handler.setFormatter(JSONFormatter())
    return handler


def setup_logging(
    log_level: str = "WARNING",
    log_file: Optional[str] = None,
    enable_json_logs: bool = False,
) -> None:
    """
    Configura el logger raíz

    Args:
        log_level: Nivel de logging (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Archivo de log rotativo en JSON (opcional)
        enable_json_logs: Consola en JSON en lugar de color
    """
    level = getattr(logging, log_level.upper(), logging.WARNING)
    root = logging.getLogger()
    root.setLevel(level)
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level)
    console.setFormatter(JSONFormatter() if enable_json_logs else ColoredFormatter())
    root.addHandler(console)
    if log_file:
        root.addHandler(_file_handler(log_file, level))

    # numexpr (vía pandas) anuncia sus hilos en INFO
    logging.getLogger("numexpr").setLevel(logging.WARNING)
    logging.debug(f"Logging configurado - Nivel: {log_level}, Archivo: {log_file}")


class LoggerMixin:
    """Mixin con un logger por clase y helpers de rendimiento"""

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger(f"{type(self).__module__}.{type(self).__name__}")

    def log_performance(self, operation: str, duration_ms: float, **kwargs) -> None:
        """Duración de una operación, en WARNING si supera el umbral de lentitud"""
        extra = {"operation": operation, "duration_ms": duration_ms, **kwargs}
        if duration_ms > SLOW_OPERATION_MS:
            self.logger.warning(f"Operación lenta: {operation}", extra=extra)
        else:
            self.logger.info(f"Operación completada: {operation}", extra=extra)

    def log_iteration(self, iteration: int, objective: float, active: int) -> None:
        """Una línea por iteración del optimizador"""
        self.logger.info(
            f"Iteración {iteration}: objetivo={objective:.6f}",
            extra={"iteration": iteration, "objective": objective, "active": active},
        )


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def log_timed(operation: str):
    """
    Decorador que registra inicio y fin de una función con su duración

    Args:
        operation: Nombre de la operación en el campo `operation`
    """

    def decorator(func):
        logger = logging.getLogger(func.__module__)

        @wraps(func)
        def wrapper(*args, **kwargs):
            logger.info(f"Iniciando {operation}", extra={"operation": operation})
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                logger.info(
                    f"Finalizado {operation}",
                    extra={
                        "operation": operation,
                        "duration_ms": (time.perf_counter() - start_time) * 1000,
                    },
                )

        return wrapper

    return decorator


def init_logging(verbose: bool = False) -> None:
    """Inicializa el logging a partir de `Settings`; `verbose` fuerza INFO"""
    setup_logging(
        log_level="INFO" if (settings.debug or verbose) else settings.log_level,
        log_file=settings.log_file,
        enable_json_logs=settings.json_logs and not settings.debug,
    )
