"""
Configuración centralizada de variables de entorno usando Pydantic.
Este módulo proporciona validación de tipos y valores por defecto
para los parámetros del toolkit.
"""

from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración del proceso con validación de tipos usando Pydantic.

    Las variables de entorno (prefijo WAKACHI_) se cargan automáticamente y se validan
    según los tipos definidos. Ninguna es obligatoria.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="WAKACHI_",
        case_sensitive=False,
        extra="ignore",
    )

    # Configuración de logging
    debug: bool = Field(default=False, description="Modo debug (logs en color)")

    log_level: str = Field(default="WARNING", description="Nivel de logging")

    log_file: Optional[str] = Field(
        default=None, description="Archivo de log rotativo (JSON)"
    )

    json_logs: bool = Field(default=False, description="Logs de consola en JSON")

    # Hiperparámetros por defecto
    default_alpha: float = Field(
        default=0.325, ge=0.0, le=1.0, description="Peso OOV de la interpolación"
    )

    default_l1: float = Field(default=0.000015, ge=0.0, description="Coeficiente L1")

    default_l2: float = Field(default=0.0025, ge=0.0, description="Coeficiente L2")

    default_tol: float = Field(
        default=1e-6, gt=0.0, lt=1.0, description="Tolerancia relativa del objetivo"
    )

    default_max_iter: int = Field(
        default=500, ge=1, description="Máximo de iteraciones del optimizador"
    )

    # Configuración del entrenamiento
    lbfgs_memory: int = Field(
        default=10, ge=1, le=100, description="Pares de corrección de L-BFGS"
    )

    batch_size: int = Field(
        default=256, ge=1, description="Oraciones por lote de forward-backward"
    )

    workers: int = Field(
        default=1, ge=1, le=64, description="Hilos para decodificación y escalas"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        """Valida que el nivel de logging sea uno de los estándar."""
        level = str(v).upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Nivel de logging inválido: {v}")
        return level


# Instancia global de configuración
settings = Settings()

# Constantes exportables para importación directa
DEBUG = settings.debug
LOG_LEVEL = settings.log_level
LOG_FILE = settings.log_file
JSON_LOGS = settings.json_logs

DEFAULT_ALPHA = settings.default_alpha
DEFAULT_L1 = settings.default_l1
DEFAULT_L2 = settings.default_l2
DEFAULT_TOL = settings.default_tol
DEFAULT_MAX_ITER = settings.default_max_iter

LBFGS_MEMORY = settings.lbfgs_memory
BATCH_SIZE = settings.batch_size
WORKERS = settings.workers
