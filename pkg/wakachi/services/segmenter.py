"""
Segmentación de texto crudo con un modelo entrenado y el léxico activo
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence

from ..envs import WORKERS
from ..utils.logging_config import LoggerMixin
from .corpus import WORD_SEPARATOR, Sentence
from .crf import CrfModel
from .labels import decode_labels
from .lexicon import Lexicon
from .lexicon_store import LexiconStore


class Segmenter(LoggerMixin):
    """
    Segmentador basado en CRF

    Cada oración toma un único snapshot del contenedor de léxico antes de
    extraer features; los pesos del modelo nunca se modifican.
    """

    def __init__(
        self,
        model: CrfModel,
        store: Optional[LexiconStore] = None,
        workers: int = WORKERS,
    ):
        self.model = model
        self.store = store if store is not None else LexiconStore(model.lexicon)
        self.workers = max(1, workers)

    @property
    def lexicon(self) -> Lexicon:
        return self.store.current()

    def segment_chars(self, chars: str, lexicon: Optional[Lexicon] = None) -> Sentence:
        """Segmenta una secuencia sin espacios"""
        if not chars:
            return Sentence("", ())
        snapshot = lexicon if lexicon is not None else self.store.current()
        labels = self.model.decode(chars, snapshot)
        return Sentence(chars, decode_labels(labels))

    def segment_line(self, line: str) -> Sentence:
        """
        Segmenta una línea cruda

        Los espacios ASCII son límites de palabra forzados: cada fragmento sin
        espacios se segmenta por separado con el mismo snapshot.
        """
        snapshot = self.store.current()
        words: List[str] = []
        for chunk in line.split(WORD_SEPARATOR):
            if chunk:
                words.extend(self.segment_chars(chunk, snapshot).words)
        if not words:
            return Sentence("", ())
        return Sentence.from_words(words)

    def _map(self, func, items: Sequence) -> List:
        if self.workers == 1 or len(items) < 2:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(func, items))

    def segment_lines(self, lines: Iterable[str]) -> List[Sentence]:
        """Segmenta líneas crudas preservando el orden"""
        items = list(lines)
        start_time = time.perf_counter()
        result = self._map(self.segment_line, items)
        self.log_performance(
            "segment",
            (time.perf_counter() - start_time) * 1000,
            sentences=len(items),
            generation=self.lexicon.generation,
        )
        return result

    def segment_corpus(self, gold: Sequence[Sentence]) -> List[Sentence]:
        """Resegmenta las secuencias de caracteres de un corpus de referencia"""
        return self._map(lambda s: self.segment_chars(s.chars), list(gold))
