"""
Persistencia de modelos, léxicos y tablas de escalas
"""

from .lexicon_file import read_lexemes, read_lexicon, write_lexicon
from .model_file import FORMAT_VERSION, ModelFile, load_model, save_model
from .scale_file import read_scale_table, write_scale_report, write_scale_table

__all__ = [
    "FORMAT_VERSION",
    "ModelFile",
    "load_model",
    "save_model",
    "read_lexemes",
    "read_lexicon",
    "write_lexicon",
    "read_scale_table",
    "write_scale_table",
    "write_scale_report",
]
