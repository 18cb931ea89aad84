"""
Modelos Pydantic del toolkit
"""

from .corpus import CoverageTable, Vocab
from .evaluation import EvalReport, LabelStats
from .lexicon import ExpansionSummary, LexiconStats
from .model import (Hyper, ModelMetadata, SchemeSpec, TemplateConfig,
                    TemplatePreset)
from .scales import ScaleMode, ScaleTable, ScoreKind, SpeciesScale

__all__ = [
    "CoverageTable",
    "Vocab",
    "EvalReport",
    "LabelStats",
    "ExpansionSummary",
    "LexiconStats",
    "Hyper",
    "ModelMetadata",
    "SchemeSpec",
    "TemplateConfig",
    "TemplatePreset",
    "ScaleMode",
    "ScaleTable",
    "ScoreKind",
    "SpeciesScale",
]
