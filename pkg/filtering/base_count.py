"""
Filtro por conteo de bases y enumeración de histogramas vecinos.

Dos secuencias a edit distance <= eth tienen histogramas a distancia L1
<= 2*eth, así que todo k-mer cuyo histograma esté más lejos se descarta
sin buscarlo.
"""
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from oracle.reference import histogram_l1
from seq.histogram import all_histograms
from seq.models import BaseHistogram
from utils.errors import ConfigError, LengthError


def base_count_pass(h1: BaseHistogram, h2: BaseHistogram, eth: int) -> bool:
    """True sii histogram_l1(h1, h2) <= 2*eth."""
    return histogram_l1(h1, h2) <= 2 * eth


@lru_cache(maxsize=16)
def neighbor_offsets(eth: int) -> np.ndarray:
    """
    Desplazamientos (dA, dT, dG, dC) de suma cero con L1 <= 2*eth.

    Sumados a un histograma dan todos sus vecinos (antes de descartar conteos
    negativos). Incluye el desplazamiento nulo. Solo lectura.
    """
    if eth < 0:
        raise ConfigError(f"eth debe ser >= 0, recibió {eth}")
    span = np.arange(-2 * eth, 2 * eth + 1)
    da, dt, dg = (m.ravel() for m in np.meshgrid(span, span, span, indexing="ij"))
    dc = -(da + dt + dg)
    offsets = np.stack([da, dt, dg, dc], axis=1)
    offsets = offsets[np.abs(offsets).sum(axis=1) <= 2 * eth]
    offsets.setflags(write=False)
    return offsets


def neighbor_array(counts: np.ndarray, eth: int) -> np.ndarray:
    """Vecinos válidos de un histograma dado como array (4,)."""
    candidates = np.asarray(counts, dtype=np.int64) + neighbor_offsets(eth)
    return candidates[(candidates >= 0).all(axis=1)]


def enumerate_neighbors(h: BaseHistogram, eth: int, k: int) -> List[BaseHistogram]:
    """
    Todos los histogramas válidos de longitud k a L1 <= 2*eth de h (h incluido).

    Raises:
        LengthError: si h no suma k
    """
    if h.k != k:
        raise LengthError(f"Histograma {h.as_tuple()} no suma k={k}")
    return [BaseHistogram.of(*row) for row in neighbor_array(h.as_array(), eth)]


def neighbor_count(h: BaseHistogram, eth: int, k: int) -> int:
    if h.k != k:
        raise LengthError(f"Histograma {h.as_tuple()} no suma k={k}")
    return int(neighbor_array(h.as_array(), eth).shape[0])


def neighbor_counts(k: int, eth: int) -> np.ndarray:
    """Cantidad de vecinos de cada histograma de all_histograms(k), en ese orden."""
    hists = all_histograms(k)
    counts = np.zeros(hists.shape[0], dtype=np.int64)
    for offset in neighbor_offsets(eth):
        counts += ((hists + offset) >= 0).all(axis=1)
    return counts


def max_neighbor_count(k: int, eth: int) -> Tuple[int, BaseHistogram]:
    """Máximo exhaustivo de vecinos sobre todos los histogramas de longitud k."""
    counts = neighbor_counts(k, eth)
    best = int(np.argmax(counts))
    return int(counts[best]), BaseHistogram.of(*all_histograms(k)[best])
