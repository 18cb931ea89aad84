"""
Configuración validada de una ejecución de la CLI
"""

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..envs import (BATCH_SIZE, DEFAULT_ALPHA, DEFAULT_L1, DEFAULT_L2,
                    DEFAULT_MAX_ITER, DEFAULT_TOL, LBFGS_MEMORY, WORKERS)
from ..models.model import Hyper, TemplateConfig, TemplatePreset
from ..models.scales import ScaleMode, ScoreKind
from ..services.features import FAMILIES, species_for_preset
from ..services.labels import SCHEME_PRESETS, LabelScheme


class RunConfig(BaseModel):
    """
    Parámetros de una ejecución

    Se valida completa antes de leer cualquier archivo; un valor fuera de rango
    termina el comando con código de uso.
    """

    model_config = ConfigDict(extra="forbid")

    # Esquema y plantillas
    scheme: str = Field(default="final", description="Preset de esquema de etiquetas")
    templates: TemplatePreset = Field(default=TemplatePreset.FULL)
    families: List[str] = Field(default_factory=lambda: list(FAMILIES))
    wc_include_char: bool = Field(default=True)

    # Escalas
    scale: ScaleMode = Field(default=ScaleMode.NONE)
    scale_file: Optional[Path] = Field(
        default=None, description="Tabla de escalas JSON ya calculada"
    )
    score: ScoreKind = Field(default=ScoreKind.RECALL)
    alpha: float = Field(default=DEFAULT_ALPHA, ge=0.0, le=1.0)

    # Regularización y convergencia
    l1: float = Field(default=DEFAULT_L1, ge=0.0, le=1e6)
    l2: float = Field(default=DEFAULT_L2, ge=0.0, le=1e6)
    tol: float = Field(default=DEFAULT_TOL, gt=0.0, lt=1.0)
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=1, le=100000)

    batch_size: int = Field(default=BATCH_SIZE, ge=1, le=1000000)
    lbfgs_memory: int = Field(default=LBFGS_MEMORY, ge=1, le=100)
    workers: int = Field(default=WORKERS, ge=1, le=64)

    # Rutas
    train: Optional[Path] = None
    dev: Optional[Path] = None
    test: Optional[Path] = None
    input: Optional[Path] = None
    lexicon: Optional[Path] = None
    model: Optional[Path] = None
    extra_lexicon: Optional[Path] = None

    @field_validator("scheme")
    @classmethod
    def validate_scheme(cls, v: str) -> str:
        name = v.lower()
        if name not in SCHEME_PRESETS:
            raise ValueError(
                f"Esquema desconocido: {v} (opciones: {', '.join(SCHEME_PRESETS)})"
            )
        return name

    @field_validator("families")
    @classmethod
    def validate_families(cls, v: List[str]) -> List[str]:
        if not v:
            raise ValueError("Se requiere al menos una familia de features")
        unknown = [f for f in v if f not in FAMILIES]
        if unknown:
            raise ValueError(f"Familias desconocidas: {unknown}")
        # Orden canónico y sin duplicados
        return [f for f in FAMILIES if f in v]

    @model_validator(mode="after")
    def check_scale_sources(self) -> "RunConfig":
        if self.scale == ScaleMode.LEARNED and self.dev is None and self.scale_file is None:
            raise ValueError("Las escalas aprendidas requieren --dev o --scale-file")
        if self.scale_file is not None and self.scale != ScaleMode.LEARNED:
            raise ValueError("--scale-file solo aplica con --scale learned")
        if not species_for_preset(self.templates, self.families):
            raise ValueError("La combinación de preset y familias no tiene especies")
        return self

    def label_scheme(self) -> LabelScheme:
        return SCHEME_PRESETS[self.scheme]

    def hyper(self) -> Hyper:
        return Hyper(l1=self.l1, l2=self.l2, tol=self.tol, max_iter=self.max_iter)

    def template_config(self) -> TemplateConfig:
        """Plantillas resultantes del preset y las familias elegidas"""
        species = species_for_preset(self.templates, self.families)
        return TemplateConfig(
            preset=self.templates,
            families=self.families,
            species=[s.id for s in species],
            wc_include_char=self.wc_include_char,
        )
