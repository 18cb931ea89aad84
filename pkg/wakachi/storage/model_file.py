"""
Persistencia del modelo en un contenedor ZIP determinista
"""

import io
import json
import logging
import zipfile
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from ..exceptions import (CorpusIOError, LabelEncodingError, ModelFormatError,
                          UsageError)
from ..models.corpus import Vocab
from ..models.model import ModelMetadata
from ..services.crf import CrfModel
from ..services.labels import LabelScheme
from ..services.lexicon import Lexicon
from .lexicon_file import format_lexemes

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

# Fecha fija para que dos guardados del mismo modelo sean idénticos byte a byte
ZIP_DATE_TIME = (1980, 1, 1, 0, 0, 0)

METADATA_ENTRY = "metadata.json"
LABELS_ENTRY = "labels.json"
FEATURES_ENTRY = "features.json"
VOCAB_ENTRY = "vocab.txt"
LEXICON_ENTRY = "lexicon.txt"
STATE_ENTRY = "state_weights.npy"
TRANSITION_ENTRY = "transition_weights.npy"
SUPPORT_ENTRY = "state_support.npy"


def build_metadata(model: CrfModel) -> ModelMetadata:
    """Metadatos serializables de un modelo"""
    if model.templates is None:
        raise ModelFormatError("El modelo no tiene configuración de plantillas")
    return ModelMetadata(
        format_version=FORMAT_VERSION,
        scheme=model.scheme.to_spec(),
        templates=model.templates,
        scales=model.scales,
        hyper=model.hyper,
        lexicon_fingerprint=model.lexicon.fingerprint,
        lexicon_size=len(model.lexicon),
        vocab_size=len(model.vocab),
        vocab_tokens=model.vocab.token_count,
        train_sentences=model.train_sentences,
        num_labels=model.num_labels,
        num_features=model.num_features,
        num_parameters=int(model.parameters().size),
        iterations=model.iterations,
        final_objective=model.final_objective,
        converged=model.converged,
    )


def _npy_bytes(array: np.ndarray) -> bytes:
    buffer = io.BytesIO()
    np.save(buffer, np.ascontiguousarray(array), allow_pickle=False)
    return buffer.getvalue()


def _npy_load(data: bytes) -> np.ndarray:
    return np.load(io.BytesIO(data), allow_pickle=False)


class ModelFile:
    """Lectura y escritura de archivos de modelo"""

    @staticmethod
    def dumps(model: CrfModel) -> bytes:
        """
        Serializa un modelo

        Args:
            model: Modelo entrenado

        Returns:
            Bytes del contenedor ZIP
        """
        metadata = build_metadata(model)
        entries = [
            (METADATA_ENTRY, metadata.model_dump_json(indent=2).encode("utf-8")),
            (
                LABELS_ENTRY,
                json.dumps(model.scheme.label_names(), ensure_ascii=False).encode("utf-8"),
            ),
            (
                FEATURES_ENTRY,
                json.dumps(model.features, ensure_ascii=False).encode("utf-8"),
            ),
            (VOCAB_ENTRY, format_lexemes(model.vocab.types).encode("utf-8")),
            (LEXICON_ENTRY, format_lexemes(model.lexicon.entries).encode("utf-8")),
            (STATE_ENTRY, _npy_bytes(model.state_weights)),
            (TRANSITION_ENTRY, _npy_bytes(model.transition_weights)),
            (SUPPORT_ENTRY, _npy_bytes(np.asarray(model.state_support, dtype=np.int64))),
        ]
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w") as archive:
            for name, data in entries:
                info = zipfile.ZipInfo(name, date_time=ZIP_DATE_TIME)
                info.compress_type = zipfile.ZIP_DEFLATED
                info.external_attr = 0o644 << 16
                archive.writestr(info, data)
        return buffer.getvalue()

    @staticmethod
    def loads(data: bytes) -> CrfModel:
        """
        Reconstruye un modelo desde los bytes del contenedor

        Raises:
            ModelFormatError: Contenedor corrupto o versión de formato distinta
        """
        try:
            with zipfile.ZipFile(io.BytesIO(data)) as archive:
                metadata = ModelMetadata.model_validate_json(archive.read(METADATA_ENTRY))
                if metadata.format_version != FORMAT_VERSION:
                    raise ModelFormatError(
                        f"Versión de formato {metadata.format_version} no soportada "
                        f"(se esperaba {FORMAT_VERSION})"
                    )
                labels = json.loads(archive.read(LABELS_ENTRY).decode("utf-8"))
                features = json.loads(archive.read(FEATURES_ENTRY).decode("utf-8"))
                vocab_text = archive.read(VOCAB_ENTRY).decode("utf-8")
                lexicon_text = archive.read(LEXICON_ENTRY).decode("utf-8")
                state = _npy_load(archive.read(STATE_ENTRY))
                transitions = _npy_load(archive.read(TRANSITION_ENTRY))
                support = _npy_load(archive.read(SUPPORT_ENTRY))
        except ModelFormatError:
            raise
        except (zipfile.BadZipFile, KeyError, ValueError, ValidationError) as e:
            raise ModelFormatError(f"Archivo de modelo inválido: {e}")

        try:
            scheme = LabelScheme.from_spec(metadata.scheme)
            scheme_labels = scheme.label_names()
        except (UsageError, LabelEncodingError) as e:
            raise ModelFormatError(f"Esquema de etiquetas inválido en el modelo: {e}")
        if labels != scheme_labels:
            raise ModelFormatError("Las etiquetas no coinciden con el esquema declarado")
        if len(features) != metadata.num_features:
            raise ModelFormatError("Cantidad de features distinta de la declarada")

        vocab_types = frozenset(w for w in vocab_text.split("\n") if w)
        lexicon = Lexicon(w for w in lexicon_text.split("\n") if w)
        if lexicon.fingerprint != metadata.lexicon_fingerprint:
            raise ModelFormatError("La huella del léxico embebido no coincide")

        model = CrfModel(
            scheme=scheme,
            features=features,
            state_weights=state,
            transition_weights=transitions,
            hyper=metadata.hyper,
            state_support=support,
            templates=metadata.templates,
            scales=metadata.scales,
            vocab=Vocab(types=vocab_types, token_count=metadata.vocab_tokens),
            lexicon=lexicon,
            iterations=metadata.iterations,
            final_objective=metadata.final_objective,
            converged=metadata.converged,
            train_sentences=metadata.train_sentences,
        )
        finite = np.all(np.isfinite(model.state_weights)) and np.all(
            np.isfinite(model.transition_weights)
        )
        if not finite:
            raise ModelFormatError("El modelo contiene pesos no finitos")
        return model

    @staticmethod
    def save(model: CrfModel, path: Union[str, Path]) -> None:
        """Escribe el modelo en disco"""
        data = ModelFile.dumps(model)
        try:
            Path(path).write_bytes(data)
        except OSError as e:
            raise CorpusIOError(f"No se pudo escribir el modelo {path}: {e}")
        logger.info(f"Modelo guardado en {path} ({len(data)} bytes)")

    @staticmethod
    def load(path: Union[str, Path]) -> CrfModel:
        """Lee un modelo desde disco"""
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise CorpusIOError(f"No se pudo leer el modelo {path}: {e}")
        model = ModelFile.loads(data)
        logger.info(
            f"Modelo cargado de {path}: {model.num_features} features, "
            f"{model.num_labels} etiquetas"
        )
        return model


def save_model(model: CrfModel, path: Union[str, Path]) -> None:
    ModelFile.save(model, path)


def load_model(path: Union[str, Path]) -> CrfModel:
    return ModelFile.load(path)
