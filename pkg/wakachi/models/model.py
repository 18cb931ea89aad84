"""
Modelos Pydantic para los metadatos del archivo de modelo
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from .scales import ScaleTable


class TemplatePreset(str, Enum):
    """Conjuntos predefinidos de plantillas"""

    VANILLA = "vanilla"
    FULL = "full"


class Hyper(BaseModel):
    """Hiperparámetros de regularización y convergencia"""

    l1: float = Field(..., ge=0.0, description="Coeficiente L1 (λ1)")
    l2: float = Field(..., ge=0.0, description="Coeficiente L2 (λ2)")
    tol: float = Field(1e-6, gt=0.0, lt=1.0, description="Cambio relativo mínimo")
    max_iter: int = Field(500, ge=1, description="Máximo de iteraciones")


class TemplateConfig(BaseModel):
    """Plantillas de features del modelo"""

    preset: TemplatePreset = Field(TemplatePreset.FULL)
    families: List[str] = Field(default_factory=lambda: ["C", "LC", "WC"])
    species: List[str] = Field(..., description="Identificadores de especie en orden")
    wc_include_char: bool = Field(True, description="WC concatena el carácter")


class SchemeSpec(BaseModel):
    """Descripción serializable de un esquema de etiquetas"""

    name: str
    positional_tags: List[str]
    max_explicit_position: int = Field(..., ge=1)
    use_length_flag: bool
    use_type_flag: bool
    length_flag_threshold: int = Field(5, ge=1)


class ModelMetadata(BaseModel):
    """Metadatos embebidos en el archivo de modelo"""

    format_version: int = Field(..., ge=1)
    scheme: SchemeSpec
    templates: TemplateConfig
    scales: Optional[ScaleTable] = None
    hyper: Hyper
    lexicon_fingerprint: str = Field(..., description="sha256 del léxico de entrenamiento")
    lexicon_size: int = Field(..., ge=0)
    vocab_size: int = Field(..., ge=0)
    vocab_tokens: int = Field(0, ge=0)
    train_sentences: int = Field(..., ge=0)
    num_labels: int = Field(..., ge=1)
    num_features: int = Field(..., ge=0)
    num_parameters: int = Field(..., ge=0)
    iterations: int = Field(0, ge=0)
    final_objective: Optional[float] = None
    converged: bool = False
