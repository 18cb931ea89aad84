"""
Modelos Pydantic para operaciones sobre el léxico
"""

from typing import Dict, List

from pydantic import BaseModel, Field


class ExpansionSummary(BaseModel):
    """Resumen de una expansión de léxico"""

    generation: int = Field(..., ge=0, description="Generación resultante")
    added: int = Field(0, ge=0, description="Lexemas nuevos")
    already_present: int = Field(0, ge=0, description="Altas que ya existían")
    removed: int = Field(0, ge=0, description="Lexemas eliminados")
    ignored_removals: List[str] = Field(
        default_factory=list, description="Bajas de lexemas inexistentes"
    )
    size: int = Field(..., ge=0, description="Tamaño final")


class LexiconStats(BaseModel):
    """Estadísticas de un léxico"""

    size: int = Field(..., ge=0)
    generation: int = Field(..., ge=0)
    fingerprint: str
    length_buckets: Dict[str, int] = Field(
        default_factory=dict, description="Bucket de longitud → número de lexemas"
    )
