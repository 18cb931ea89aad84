"""
Especies de features (familia × forma) y extracción por posición
"""

import logging
from typing import (Dict, Iterable, List, NamedTuple, Optional, Sequence,
                    Tuple)

from ..exceptions import BoundsError, UsageError
from ..models.model import TemplateConfig, TemplatePreset
from ..models.scales import ScaleMode, ScaleTable
from .lexicon import Lexicon

logger = logging.getLogger(__name__)

FAMILIES = ("C", "LC", "WC")

# Forma → (offsets admitidos, desplazamientos relativos a partir del offset)
SHAPES: Dict[str, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {
    "u": ((-2, -1, 0, 1, 2), (0,)),
    "b": ((-2, -1, 0, 1), (0, 1)),
    "j": ((-1, 0, 1), (-1, 1)),
    "t": ((-2, -1, 0), (0, 1, 2)),
}

BOS = "⟨BOS⟩"
EOS = "⟨EOS⟩"
VALUE_SEPARATOR = "\x1f"

VANILLA_SPECIES = ("C:u-1", "C:u0", "C:u1", "C:b-1", "C:b0", "C:j0")

BOOST_VALUES = {"C:u0": 2.0, "C:b-1": 3.0, "C:b0": 3.0}


class FeatureSpecies(NamedTuple):
    """Especie de feature: familia, forma y offset de la plantilla"""

    family: str
    shape: str
    offset: int

    @property
    def id(self) -> str:
        return f"{self.family}:{self.shape}{self.offset}"

    @property
    def positions(self) -> Tuple[int, ...]:
        """Desplazamientos respecto de la posición actual"""
        return tuple(self.offset + d for d in SHAPES[self.shape][1])

    def __str__(self) -> str:
        return self.id


def parse_species(species_id: str) -> FeatureSpecies:
    """Convierte "LC:b-1" en FeatureSpecies"""
    try:
        family, template = species_id.split(":", 1)
        shape, offset = template[0], int(template[1:])
    except (ValueError, IndexError):
        raise UsageError(f"Especie inválida: {species_id!r}")
    if family not in FAMILIES or shape not in SHAPES or offset not in SHAPES[shape][0]:
        raise UsageError(f"Especie inválida: {species_id!r}")
    return FeatureSpecies(family, shape, offset)


def enumerate_species(
    families: Optional[Iterable[str]] = None, shapes: Optional[Iterable[str]] = None
) -> List[FeatureSpecies]:
    """
    Enumera especies en orden determinista

    Args:
        families: Subconjunto de C, LC, WC (todas si es None)
        shapes: Subconjunto de u, b, j, t (todas si es None)

    Returns:
        Especies ordenadas por familia, forma y offset
    """
    family_set = set(FAMILIES if families is None else families)
    shape_set = set(SHAPES if shapes is None else shapes)
    unknown = (family_set - set(FAMILIES)) | (shape_set - set(SHAPES))
    if unknown:
        raise UsageError(f"Familias o formas desconocidas: {sorted(unknown)}")
    return [
        FeatureSpecies(family, shape, offset)
        for family in FAMILIES
        if family in family_set
        for shape in SHAPES
        if shape in shape_set
        for offset in SHAPES[shape][0]
    ]


def species_for_preset(
    preset: TemplatePreset, families: Optional[Iterable[str]] = None
) -> List[FeatureSpecies]:
    """Especies de un preset, opcionalmente restringidas a ciertas familias"""
    if preset == TemplatePreset.VANILLA:
        species = [parse_species(s) for s in VANILLA_SPECIES]
        if families is not None:
            species = [s for s in species if s.family in set(families)]
        return species
    return enumerate_species(families)


def boost_preset() -> ScaleTable:
    """Escalas con refuerzo de 2 para C:u0 y de 3 para C:b-1 y C:b0"""
    values = {s.id: BOOST_VALUES.get(s.id, 1.0) for s in enumerate_species()}
    return ScaleTable(mode=ScaleMode.BOOST, values=values)


class FeatureVector(NamedTuple):
    """Features activas de una posición con su valor"""

    items: List[Tuple[str, float]]


class FeatureExtractor:
    """Extractor de features para un conjunto fijo de especies"""

    def __init__(
        self,
        species: Sequence[FeatureSpecies],
        wc_include_char: bool = True,
        scales: Optional[ScaleTable] = None,
    ):
        self.species = list(species)
        self.wc_include_char = wc_include_char
        self.scales = scales
        self.families = {s.family for s in self.species}
        self._values = [
            scales.value_of(s.id) if scales is not None else 1.0 for s in self.species
        ]

    @classmethod
    def from_config(
        cls, templates: TemplateConfig, scales: Optional[ScaleTable] = None
    ) -> "FeatureExtractor":
        return cls(
            [parse_species(s) for s in templates.species],
            wc_include_char=templates.wc_include_char,
            scales=scales,
        )

    def family_values(self, chars: str, lexicon: Optional[Lexicon]) -> Dict[str, List[str]]:
        """Valor de cada familia usada en cada posición"""
        values: Dict[str, List[str]] = {}
        if "C" in self.families:
            values["C"] = list(chars)
        if self.families & {"LC", "WC"} and lexicon is None:
            raise UsageError("Las familias LC/WC requieren un léxico")
        if "LC" in self.families:
            values["LC"] = lexicon.lc_codes(chars)
        if "WC" in self.families:
            values["WC"] = lexicon.wc_codes(chars, self.wc_include_char)
        return values

    def _vector(self, values: Dict[str, List[str]], n: int, i: int) -> FeatureVector:
        items = []
        for species, value in zip(self.species, self._values):
            column = values[species.family]
            parts = []
            for d in species.positions:
                j = i + d
                if j < 0:
                    parts.append(BOS)
                elif j >= n:
                    parts.append(EOS)
                else:
                    parts.append(column[j])
            items.append((f"{species.id}={VALUE_SEPARATOR.join(parts)}", value))
        return FeatureVector(items)

    def sentence_features(
        self, chars: str, lexicon: Optional[Lexicon] = None
    ) -> List[FeatureVector]:
        """FeatureVector de todas las posiciones de la oración"""
        values = self.family_values(chars, lexicon)
        n = len(chars)
        return [self._vector(values, n, i) for i in range(n)]

    def extract(
        self, chars: str, i: int, lexicon: Optional[Lexicon] = None
    ) -> FeatureVector:
        """FeatureVector de la posición i"""
        if not 0 <= i < len(chars):
            raise BoundsError(f"Posición {i} fuera de una oración de {len(chars)}")
        return self._vector(self.family_values(chars, lexicon), len(chars), i)


def extract(
    chars: str,
    i: int,
    species: Sequence[FeatureSpecies],
    lexicon: Optional[Lexicon] = None,
    scales: Optional[ScaleTable] = None,
    wc_include_char: bool = True,
) -> FeatureVector:
    """
    Extrae las features de una posición

    Args:
        chars: Caracteres de la oración
        i: Posición (0 ≤ i < len)
        species: Especies a extraer
        lexicon: Snapshot de léxico para LC/WC
        scales: Tabla de escalas opcional (1.0 si no hay)
        wc_include_char: Si WC concatena el carácter

    Returns:
        FeatureVector con una feature por especie
    """
    return FeatureExtractor(species, wc_include_char, scales).extract(chars, i, lexicon)
