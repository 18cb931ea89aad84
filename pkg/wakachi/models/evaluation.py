"""
Modelos Pydantic para reportes de evaluación
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class LabelStats(BaseModel):
    """Estadísticas por etiqueta a nivel de carácter"""

    label: str = Field(..., description="Nombre textual de la etiqueta")
    gold: int = Field(0, ge=0, description="Posiciones con esta etiqueta en gold")
    system: int = Field(0, ge=0, description="Posiciones con esta etiqueta en sistema")
    correct: int = Field(0, ge=0, description="Posiciones coincidentes")
    precision: float = Field(0.0, ge=0.0, le=1.0)
    recall: float = Field(0.0, ge=0.0, le=1.0)
    f1: float = Field(0.0, ge=0.0, le=1.0)


class EvalReport(BaseModel):
    """Reporte completo de evaluación de segmentación"""

    sentences: int = Field(..., ge=0, description="Oraciones evaluadas")
    gold_words: int = Field(..., ge=0)
    system_words: int = Field(..., ge=0)
    correct_words: int = Field(..., ge=0)
    word_precision: float = Field(..., ge=0.0, le=1.0)
    word_recall: float = Field(..., ge=0.0, le=1.0)
    word_f1: float = Field(..., ge=0.0, le=1.0)

    characters: int = Field(..., ge=0)
    correct_labels: int = Field(..., ge=0)
    char_label_accuracy: float = Field(..., ge=0.0, le=1.0)
    per_label: List[LabelStats] = Field(default_factory=list)

    gold_iv_words: int = Field(0, ge=0)
    gold_oov_words: int = Field(0, ge=0)
    correct_iv_words: int = Field(0, ge=0)
    correct_oov_words: int = Field(0, ge=0)
    recall_iv: Optional[float] = Field(None, ge=0.0, le=1.0)
    recall_oov: Optional[float] = Field(
        None, ge=0.0, le=1.0, description="Ausente si no hay palabras OOV"
    )
    f1_iv: Optional[float] = Field(None, ge=0.0, le=1.0)
    f1_oov: Optional[float] = Field(None, ge=0.0, le=1.0)

    def porcelain_items(self) -> List[Tuple[str, str]]:
        """
        Pares clave/valor para la salida legible por máquina

        Returns:
            Lista ordenada de (clave, valor formateado); los valores ausentes se
            emiten como "NA"
        """

        def fmt(value) -> str:
            if value is None:
                return "NA"
            if isinstance(value, float):
                return f"{value:.6f}"
            return str(value)

        items = [
            ("sentences", self.sentences),
            ("gold_words", self.gold_words),
            ("system_words", self.system_words),
            ("correct_words", self.correct_words),
            ("word_precision", self.word_precision),
            ("word_recall", self.word_recall),
            ("word_f1", self.word_f1),
            ("characters", self.characters),
            ("correct_labels", self.correct_labels),
            ("char_label_accuracy", self.char_label_accuracy),
            ("gold_iv_words", self.gold_iv_words),
            ("gold_oov_words", self.gold_oov_words),
            ("recall_iv", self.recall_iv),
            ("recall_oov", self.recall_oov),
            ("f1_iv", self.f1_iv),
            ("f1_oov", self.f1_oov),
        ]
        for stats in self.per_label:
            items.append((f"label.{stats.label}.correct", stats.correct))
            items.append((f"label.{stats.label}.f1", stats.f1))
        return [(key, fmt(value)) for key, value in items]
