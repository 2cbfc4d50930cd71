"""
Implementaciones de referencia, deliberadamente simples.

Sirven como oráculo para validar los caminos rápidos (matcher vectorizado,
simulador de compuertas, filtro). No usar en el camino de producción.
"""
from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field

from seq.models import BaseHistogram, Sequence
from utils.errors import LengthError

SeqLike = Union[Sequence, str]


class EditDistanceResult(BaseModel):
    """Distancia de Levenshtein (sustituciones + inserciones + borrados)."""
    model_config = ConfigDict(frozen=True)

    distance: int = Field(ge=0)


def _text(s: SeqLike) -> str:
    return s.bases if isinstance(s, Sequence) else s


def edit_distance(s1: SeqLike, s2: SeqLike) -> EditDistanceResult:
    """Levenshtein por programación dinámica, O(|s1|·|s2|) tiempo, O(|s2|) memoria."""
    a, b = _text(s1), _text(s2)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            current[j] = min(
                previous[j] + 1,              # borrado
                current[j - 1] + 1,           # inserción
                previous[j - 1] + (ca != cb)  # sustitución / match
            )
        previous = current
    return EditDistanceResult(distance=previous[-1])


def histogram_l1(h1: BaseHistogram, h2: BaseHistogram) -> int:
    """|A1−A2| + |T1−T2| + |G1−G2| + |C1−C2|"""
    return sum(abs(x - y) for x, y in zip(h1.as_tuple(), h2.as_tuple()))


def hamming_distance(s1: SeqLike, s2: SeqLike) -> int:
    a, b = _text(s1), _text(s2)
    if len(a) != len(b):
        raise LengthError(f"Longitudes distintas: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def brute_force_edits_vector(kmer: SeqLike, query: SeqLike) -> List[int]:
    """
    Bit i = 1 si query[i] no coincide con kmer[i-1], kmer[i] ni kmer[i+1].

    Un vecino fuera de rango cuenta como no-coincidencia.

    Raises:
        LengthError: si las longitudes difieren
    """
    m, q = _text(kmer), _text(query)
    if len(m) != len(q):
        raise LengthError(f"Longitudes distintas: k-mer {len(m)} vs query {len(q)}")
    bits = []
    for i, base in enumerate(q):
        matched = False
        for j in (i - 1, i, i + 1):
            if 0 <= j < len(m) and m[j] == base:
                matched = True
        bits.append(0 if matched else 1)
    return bits
