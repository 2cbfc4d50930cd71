"""
Neighbor matching: cada base de la query se compara con la base co-ubicada
del k-mer y con sus vecinas izquierda y derecha. Es la semántica que calcula
el crossbar; aquí vectorizada con numpy sobre muchas filas a la vez.

La regla es más permisiva que la edit distance: k-mer "CAC" contra query
"AAA" da un Edits Vector 000 (cada A de la query encuentra una A vecina),
aunque la distancia es 2. Ese par lo descarta el filtro de conteo de bases
con eth=1 (L1 = 4 > 2).
"""
from typing import List, NamedTuple, Optional, Sequence as SeqType, Union

import numpy as np

from matcher.models import EditsVector, SaModel
from matcher.sense_amp import decide_hits
from seq.models import KMerRecord, Sequence
from utils.errors import LengthError


class RowMatch(NamedTuple):
    hits: np.ndarray     # bool por fila
    hit_count: int
    edit_counts: np.ndarray


def edits_matrix(rows: np.ndarray, query: np.ndarray) -> np.ndarray:
    """
    Edits Vectors de todas las filas contra una query.

    Args:
        rows: (n, k) códigos uint8 de los k-mers
        query: (k,) códigos uint8 de la query

    Returns:
        (n, k) bool; True = edit en esa posición

    Raises:
        LengthError: si k no coincide
    """
    rows = np.asarray(rows)
    query = np.asarray(query)
    if rows.ndim != 2 or rows.shape[1] != query.shape[0]:
        raise LengthError(f"Filas {rows.shape} incompatibles con query de largo {query.shape[0]}")

    matched = rows == query                                  # co-ubicada
    matched[:, 1:] |= rows[:, :-1] == query[1:]              # vecina izquierda
    matched[:, :-1] |= rows[:, 1:] == query[:-1]             # vecina derecha
    return ~matched


def edit_counts(rows: np.ndarray, query: np.ndarray) -> np.ndarray:
    return edits_matrix(rows, query).sum(axis=1)


def edits_vector(kmer: Sequence, query: Sequence) -> EditsVector:
    """
    Edits Vector de un k-mer contra la query.

    Raises:
        LengthError: si |kmer| != |query|
    """
    if kmer.length != query.length:
        raise LengthError(f"Longitudes distintas: k-mer {kmer.length} vs query {query.length}")
    bits = edits_matrix(kmer.codes[np.newaxis, :], query.codes)[0]
    return EditsVector.from_bits(bits)


def _rows_codes(rows: Union[np.ndarray, SeqType[KMerRecord]]) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return rows
    if not rows:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.stack([r.sequence.codes for r in rows])


def match_query_against_rows(
    rows: Union[np.ndarray, List[KMerRecord]],
    query: Sequence,
    sa: SaModel,
    rng: Optional[np.random.Generator] = None,
) -> RowMatch:
    """Hits por fila y total, decididos por el SaModel."""
    codes = _rows_codes(rows)
    if codes.shape[0] == 0:
        return RowMatch(np.zeros(0, dtype=bool), 0, np.zeros(0, dtype=np.int64))
    counts = edit_counts(codes, query.codes)
    hits = decide_hits(counts, sa, rng)
    return RowMatch(hits, int(hits.sum()), counts)
