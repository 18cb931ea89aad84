"""
Modelos Pydantic para las escalas por especie de feature
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class ScaleMode(str, Enum):
    """Origen de las escalas de features"""

    NONE = "none"
    BOOST = "boost"
    LEARNED = "learned"


class ScoreKind(str, Enum):
    """Medida usada para la interpolación IV/OOV"""

    RECALL = "recall"
    F1 = "f1"


class SpeciesScale(BaseModel):
    """Escala de una especie calculada con su modelo individual"""

    species: str = Field(..., description="Identificador de la especie (p. ej. C:u0)")
    recall_iv: float = Field(..., ge=0.0, le=1.0)
    recall_oov: float = Field(..., ge=0.0, le=1.0)
    f1_iv: float = Field(0.0, ge=0.0, le=1.0)
    f1_oov: float = Field(0.0, ge=0.0, le=1.0)
    interpolated: float = Field(..., description="(1-α)·IV + α·OOV")
    standardized: float = Field(..., description="Valor estandarizado entre especies")
    alpha: float = Field(..., ge=0.0, le=1.0)
    zero_support: bool = Field(
        False, description="El dev no tiene palabras OOV; recall_oov se fija en 0"
    )


class ScaleTable(BaseModel):
    """Tabla de escalas aplicada a los valores de las features"""

    mode: ScaleMode = Field(..., description="Origen de la tabla")
    alpha: Optional[float] = Field(None, ge=0.0, le=1.0)
    score: ScoreKind = Field(ScoreKind.RECALL)
    entries: List[SpeciesScale] = Field(default_factory=list)
    values: Dict[str, float] = Field(
        default_factory=dict, description="Especie → valor aplicado"
    )

    def value_of(self, species_id: str) -> float:
        """Valor de escala de una especie (1.0 si no figura en la tabla)"""
        return self.values.get(species_id, 1.0)

    def report_lines(self) -> List[str]:
        """Reporte de texto: una línea por especie, separada por tabuladores"""
        lines = ["species\trecall_iv\trecall_oov\tinterpolated\tstandardized\talpha"]
        for entry in self.entries:
            lines.append(
                f"{entry.species}\t{entry.recall_iv:.6f}\t{entry.recall_oov:.6f}\t"
                f"{entry.interpolated:.6f}\t{entry.standardized:.6f}\t{entry.alpha:.6f}"
            )
        return lines
