"""
Módulo de configuración de variables de entorno.
Exporta todas las variables de entorno validadas como constantes.
"""

from .env import (BATCH_SIZE, DEBUG, DEFAULT_ALPHA, DEFAULT_L1, DEFAULT_L2,
                  DEFAULT_MAX_ITER, DEFAULT_TOL, JSON_LOGS, LBFGS_MEMORY,
                  LOG_FILE, LOG_LEVEL, WORKERS, Settings, settings)

__all__ = [
    "settings",
    "Settings",
    # Logging
    "DEBUG",
    "LOG_LEVEL",
    "LOG_FILE",
    "JSON_LOGS",
    # Hiperparámetros
    "DEFAULT_ALPHA",
    "DEFAULT_L1",
    "DEFAULT_L2",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    # Entrenamiento
    "LBFGS_MEMORY",
    "BATCH_SIZE",
    "WORKERS",
]
