"""
Configuración de ejecución de la CLI
"""

from .run import RunConfig

__all__ = ["RunConfig"]
