"""
Referencia global al léxico activo con reemplazo atómico
"""

import logging
import threading
from typing import Iterable, Optional

from .lexicon import Lexicon

logger = logging.getLogger(__name__)


class LexiconStore:
    """
    Contenedor del snapshot de léxico usado en inferencia

    Los lectores toman `current()` una vez por oración; `swap` y `expand`
    reemplazan la referencia bajo un lock, así una oración en curso se etiqueta
    completa con una sola generación.
    """

    def __init__(self, lexicon: Optional[Lexicon] = None):
        self._lock = threading.Lock()
        self._lexicon = lexicon if lexicon is not None else Lexicon()
        self._swaps = 0

    def current(self) -> Lexicon:
        """Snapshot activo"""
        return self._lexicon

    def swap(self, lexicon: Lexicon) -> Lexicon:
        """
        Reemplaza el snapshot activo

        Args:
            lexicon: Nuevo snapshot

        Returns:
            El snapshot anterior
        """
        with self._lock:
            previous = self._lexicon
            self._lexicon = lexicon
            self._swaps += 1
        logger.info(
            f"Léxico reemplazado: {len(previous)} → {len(lexicon)} lexemas",
            extra={"generation": lexicon.generation},
        )
        return previous

    def expand(self, add: Iterable[str] = (), remove: Iterable[str] = ()) -> Lexicon:
        """Expande el snapshot activo y lo publica"""
        with self._lock:
            expanded = self._lexicon.expand(add, remove)
            self._lexicon = expanded
            self._swaps += 1
        logger.info(
            f"Léxico expandido: {len(expanded)} lexemas",
            extra={"generation": expanded.generation},
        )
        return expanded

    def get_stats(self) -> dict:
        """Estado del contenedor"""
        lexicon = self._lexicon
        return {
            "generation": lexicon.generation,
            "size": len(lexicon),
            "fingerprint": lexicon.fingerprint,
            "swaps": self._swaps,
        }


# Instancia global del contenedor
_global_store: Optional[LexiconStore] = None
_global_lock = threading.Lock()


def get_lexicon_store() -> LexiconStore:
    """Obtiene la instancia global del contenedor de léxico"""
    global _global_store
    with _global_lock:
        if _global_store is None:
            _global_store = LexiconStore()
        return _global_store


def reset_lexicon_store(lexicon: Optional[Lexicon] = None) -> LexiconStore:
    """Reinicia el contenedor global con un snapshot dado"""
    global _global_store
    with _global_lock:
        _global_store = LexiconStore(lexicon)
        return _global_store
