"""
Modelos Pydantic para estadísticas de corpus
"""

from typing import Dict, FrozenSet

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Vocab(BaseModel):
    """Vocabulario de entrenamiento (base de la distinción IV/OOV)"""

    model_config = ConfigDict(frozen=True)

    types: FrozenSet[str] = Field(
        default_factory=frozenset, description="Tipos de palabra"
    )
    token_count: int = Field(default=0, ge=0, description="Total de tokens")

    @field_validator("types")
    @classmethod
    def validate_types(cls, v):
        if any(not w for w in v):
            raise ValueError("El vocabulario no admite palabras vacías")
        return v

    def __contains__(self, word: str) -> bool:
        return word in self.types

    def __len__(self) -> int:
        return len(self.types)


class CoverageTable(BaseModel):
    """Cobertura acumulada de tokens por longitud de palabra"""

    rows: Dict[int, float] = Field(
        ..., description="Umbral k → porcentaje de tokens con longitud ≤ k"
    )
    total_tokens: int = Field(..., ge=1, description="Tokens contados")
    longest_word: int = Field(..., ge=1, description="Longitud máxima observada")
