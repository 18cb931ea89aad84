"""
Manejo centralizado de errores de los comandos
"""

import time
from functools import wraps
from typing import Callable, Tuple

import click
import typer
from pydantic import ValidationError

from ..exceptions import EXIT_FAILURE, EXIT_IO, EXIT_USAGE, WakachiError
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


def _first_line(text: str) -> str:
    lines = [line for line in str(text).splitlines() if line.strip()]
    return lines[0] if lines else ""


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(p) for p in error.get("loc", ())) or "config"
        parts.append(f"{location}: {error.get('msg', '')}")
    return "; ".join(parts)


def classify_exception(exc: Exception) -> Tuple[int, str, str]:
    """
    Traduce una excepción a código de salida

    Args:
        exc: Excepción capturada

    Returns:
        (código de salida, tipo de error, mensaje de una línea)
    """
    if isinstance(exc, WakachiError):
        return exc.exit_code, type(exc).__name__, _first_line(exc)
    if isinstance(exc, ValidationError):
        return EXIT_USAGE, "validation_error", _format_validation(exc)
    if isinstance(exc, OSError):
        return EXIT_IO, "io_error", _first_line(exc)
    return EXIT_FAILURE, "internal_error", _first_line(exc) or type(exc).__name__


def handle_errors(func: Callable) -> Callable:
    """
    Decorador para comandos: cualquier error termina con un diagnóstico de una
    línea en stderr y el código de salida de su familia
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            raise
        except Exception as exc:
            duration_ms = (time.perf_counter() - start_time) * 1000
            code, error_type, message = classify_exception(exc)
            if code == EXIT_FAILURE:
                logger.critical(
                    f"Error inesperado en {func.__name__}",
                    extra={"operation": func.__name__, "duration_ms": duration_ms},
                    exc_info=True,
                )
            else:
                logger.error(
                    f"Error en {func.__name__}: {error_type}",
                    extra={"operation": func.__name__, "duration_ms": duration_ms},
                )
            typer.echo(f"error: {message}", err=True)
            raise typer.Exit(code)

    return wrapper
