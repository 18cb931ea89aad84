"""
Comandos de la interfaz de línea de comandos
"""

from .error_handler import classify_exception, handle_errors

__all__ = ["classify_exception", "handle_errors"]
