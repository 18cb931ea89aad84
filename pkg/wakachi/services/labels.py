"""
Esquemas de etiquetas posicionales y conversión segmentación ↔ etiquetas
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Sequence, Tuple

from ..exceptions import AlignmentError, LabelEncodingError, UsageError
from ..models.model import SchemeSpec
from .chartype import CharClass
from .corpus import Sentence

BEGIN = "B"
INSIDE = "I"
END = "E"
SINGLE = "S"

LONG_MARK = "+"
FOREIGN_MARK = "F"

# Longitud por encima de la cual se marca "+"
LENGTH_FLAG_THRESHOLD = 5


class Label(NamedTuple):
    """Etiqueta de carácter: tag posicional y flags de longitud y tipo"""

    positional: str
    long_word: bool = False
    foreign: bool = False

    @property
    def name(self) -> str:
        return (
            self.positional
            + (LONG_MARK if self.long_word else "")
            + (FOREIGN_MARK if self.foreign else "")
        )

    def __str__(self) -> str:
        return self.name


def parse_label(name: str) -> Label:
    """Convierte el nombre textual ("2+F") en Label"""
    foreign = name.endswith(FOREIGN_MARK) and len(name) > 1
    body = name[:-1] if foreign else name
    long_word = body.endswith(LONG_MARK) and len(body) > 1
    positional = body[:-1] if long_word else body
    if not positional:
        raise LabelEncodingError(f"Nombre de etiqueta inválido: {name!r}")
    return Label(positional, long_word, foreign)


@dataclass(frozen=True)
class LabelScheme:
    """
    Esquema de etiquetas

    Los primeros `max_explicit_position` caracteres de una palabra reciben tags
    distintos (B, 2, 3, ...); el resto I y el último E si el esquema la tiene.
    """

    name: str
    positional_tags: Tuple[str, ...]
    max_explicit_position: int
    use_length_flag: bool = False
    use_type_flag: bool = False
    length_flag_threshold: int = LENGTH_FLAG_THRESHOLD

    def __post_init__(self):
        if self.max_explicit_position < 1:
            raise UsageError("max_explicit_position debe ser ≥ 1")
        if BEGIN not in self.positional_tags or INSIDE not in self.positional_tags:
            raise UsageError(f"El esquema {self.name} necesita B e I")
        for k in range(2, self.max_explicit_position + 1):
            if str(k) not in self.positional_tags:
                raise UsageError(f"El esquema {self.name} no declara el tag {k}")

    @property
    def has_single(self) -> bool:
        return SINGLE in self.positional_tags

    @property
    def has_end(self) -> bool:
        return END in self.positional_tags

    def explicit_tag(self, k: int) -> str:
        return BEGIN if k == 0 else str(k + 1)

    def positional_for_word(self, n: int) -> List[str]:
        """Tags posicionales de una palabra de longitud n"""
        if n == 1:
            return [SINGLE if self.has_single else BEGIN]
        explicit = min(self.max_explicit_position, n - 1)
        tags = [self.explicit_tag(k) for k in range(explicit)]
        tags.extend(INSIDE for _ in range(explicit, n - 1))
        tags.append(END if self.has_end else INSIDE)
        return tags

    @cached_property
    def inventory(self) -> Tuple[Label, ...]:
        """Etiquetas alcanzables en orden determinista"""
        reachable = set()
        longest = max(self.length_flag_threshold, self.max_explicit_position) + 3
        for n in range(1, longest + 1):
            long_word = self.use_length_flag and n > self.length_flag_threshold
            for tag in self.positional_for_word(n):
                reachable.add((tag, long_word))

        foreign_values = (False, True) if self.use_type_flag else (False,)
        long_values = (False, True) if self.use_length_flag else (False,)
        labels = []
        for foreign in foreign_values:
            for long_word in long_values:
                for tag in self.positional_tags:
                    if (tag, long_word) in reachable:
                        labels.append(Label(tag, long_word, foreign))
        return tuple(labels)

    @cached_property
    def _index(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.inventory)}

    def index_of(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LabelEncodingError(
                f"Etiqueta {label.name} fuera del inventario de {self.name}"
            )

    def label_names(self) -> List[str]:
        return [label.name for label in self.inventory]

    def to_spec(self) -> SchemeSpec:
        return SchemeSpec(
            name=self.name,
            positional_tags=list(self.positional_tags),
            max_explicit_position=self.max_explicit_position,
            use_length_flag=self.use_length_flag,
            use_type_flag=self.use_type_flag,
            length_flag_threshold=self.length_flag_threshold,
        )

    @classmethod
    def from_spec(cls, spec: SchemeSpec) -> "LabelScheme":
        return cls(
            name=spec.name,
            positional_tags=tuple(spec.positional_tags),
            max_explicit_position=spec.max_explicit_position,
            use_length_flag=spec.use_length_flag,
            use_type_flag=spec.use_type_flag,
            length_flag_threshold=spec.length_flag_threshold,
        )


def _preset(name: str, tags: str, n0: int, flags: bool = False) -> LabelScheme:
    return LabelScheme(name, tuple(tags), n0, flags, flags)


SCHEME_PRESETS: Dict[str, LabelScheme] = {
    "bi": _preset("bi", "BI", 1),
    "bis": _preset("bis", "BIS", 1),
    "bie": _preset("bie", "BIE", 1),
    "bies": _preset("bies", "BIES", 1),
    "b2ies": _preset("b2ies", "B2IES", 2),
    "b23ies": _preset("b23ies", "B23IES", 3),
    "bies-lt2": _preset("bies-lt2", "BIES", 1, flags=True),
    "b23ies-lt2": _preset("b23ies-lt2", "B23IES", 3, flags=True),
    "final": _preset("final", "B23IES", 3, flags=True),
}


def get_scheme(name: str) -> LabelScheme:
    """Obtiene un esquema predefinido por nombre"""
    try:
        return SCHEME_PRESETS[name.lower()]
    except KeyError:
        raise UsageError(
            f"Esquema desconocido: {name}. Disponibles: {', '.join(SCHEME_PRESETS)}"
        )


def scheme_inventory(scheme: LabelScheme) -> List[Label]:
    """Inventario ordenado de etiquetas alcanzables del esquema"""
    return list(scheme.inventory)


def encode_labels(
    sentence: Sentence, scheme: LabelScheme, classes: Sequence[CharClass]
) -> List[Label]:
    """
    Etiqueta cada carácter de una oración segmentada

    Args:
        sentence: Oración con límites de palabra
        scheme: Esquema de etiquetas
        classes: Clase de cada carácter, alineada con sentence.chars

    Returns:
        Secuencia de Label de la misma longitud que la oración
    """
    if len(classes) != len(sentence.chars):
        raise AlignmentError(
            f"{len(classes)} clases para {len(sentence.chars)} caracteres"
        )
    labels = []
    for start, end in sentence.spans():
        n = end - start
        long_word = scheme.use_length_flag and n > scheme.length_flag_threshold
        for k, tag in enumerate(scheme.positional_for_word(n)):
            foreign = scheme.use_type_flag and not classes[start + k].japanese_letter
            labels.append(Label(tag, long_word, foreign))
    return labels


def decode_labels(labels: Sequence[Label]) -> Tuple[int, ...]:
    """
    Límites de palabra a partir de una secuencia de etiquetas

    Una palabra comienza en la posición 0 y donde el tag posicional es B o S;
    los flags se ignoran. La función es total.
    """
    return tuple(
        i
        for i, label in enumerate(labels)
        if i == 0 or label.positional in (BEGIN, SINGLE)
    )


def lt_label_view(
    sentence: Sentence, scheme: LabelScheme, classes: Sequence[CharClass]
) -> List[str]:
    """
    Vista de etiquetas abierta para análisis de asociación

    Cada carácter se etiqueta con su tag posicional, el bucket de longitud de su
    palabra y la clase de escritura completa (p. ej. "B|3|K").
    """
    positional = encode_labels(sentence, scheme, classes)
    views = []
    for start, end in sentence.spans():
        n = end - start
        bucket = str(n) if n <= scheme.length_flag_threshold else LONG_MARK
        for i in range(start, end):
            views.append(f"{positional[i].positional}|{bucket}|{classes[i].script}")
    return views
