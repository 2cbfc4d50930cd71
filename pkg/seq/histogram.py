"""
Histogramas de bases y su clave empaquetada de 18 bits.

Layout de la clave: #A en los bits 17..12, #T en 11..6, #G en 5..0; #C se
deduce conociendo k.
"""
import math
from functools import lru_cache

import numpy as np

from seq.models import BaseHistogram, Sequence
from utils.errors import KeyOverflow, LengthError

KEY_BITS = 18
FIELD_BITS = 6
FIELD_MAX = (1 << FIELD_BITS) - 1
TABLE_SLOTS = 1 << KEY_BITS

# Slots extra para los histogramas de una sola letra que desbordan 6 bits
# (solo ocurren con k = 64): A -> 2^18, T -> 2^18 + 1, G -> 2^18 + 2.
OVERFLOW_BASE = TABLE_SLOTS


def compute_histogram(seq: Sequence) -> BaseHistogram:
    """Cuenta A, T, G, C de la secuencia."""
    counts = np.bincount(seq.codes, minlength=4)
    return BaseHistogram.of(*counts[:4])


def pack_histogram_key(h: BaseHistogram) -> int:
    """
    Empaqueta (#A, #T, #G) en 18 bits.

    Raises:
        KeyOverflow: si algún conteo guardado supera 63
    """
    a, t, g, _ = h.as_tuple()
    if a > FIELD_MAX or t > FIELD_MAX or g > FIELD_MAX:
        raise KeyOverflow(f"Histograma {h.as_tuple()} no cabe en 6 bits por campo")
    return (a << 12) | (t << 6) | g


def unpack_histogram_key(key: int, k: int) -> BaseHistogram:
    """Inversa de pack_histogram_key, conociendo k."""
    if not 0 <= key < TABLE_SLOTS:
        raise KeyOverflow(f"Clave fuera de rango: {key}")
    a = (key >> 12) & FIELD_MAX
    t = (key >> 6) & FIELD_MAX
    g = key & FIELD_MAX
    c = k - a - t - g
    if c < 0:
        raise LengthError(f"Clave {key} inconsistente con k={k}")
    return BaseHistogram.of(a, t, g, c)


def slot_key(h: BaseHistogram) -> int:
    """Clave de slot de la tracing table (clave de 18 bits o slot de overflow)."""
    try:
        return pack_histogram_key(h)
    except KeyOverflow:
        a, t, g, _ = h.as_tuple()
        if t == 0 and g == 0 and a == h.k:
            return OVERFLOW_BASE
        if a == 0 and g == 0 and t == h.k:
            return OVERFLOW_BASE + 1
        if a == 0 and t == 0 and g == h.k:
            return OVERFLOW_BASE + 2
        raise


def slot_keys(counts: np.ndarray) -> np.ndarray:
    """Versión vectorizada de slot_key sobre una matriz (n, 4) de conteos."""
    counts = np.asarray(counts, dtype=np.int64)
    a, t, g = counts[:, 0], counts[:, 1], counts[:, 2]
    keys = (a << 12) | (t << 6) | g
    overflow = (a > FIELD_MAX) | (t > FIELD_MAX) | (g > FIELD_MAX)
    if overflow.any():
        k = counts.sum(axis=1)
        keys = np.where(overflow & (a == k), OVERFLOW_BASE, keys)
        keys = np.where(overflow & (t == k), OVERFLOW_BASE + 1, keys)
        keys = np.where(overflow & (g == k), OVERFLOW_BASE + 2, keys)
        bad = overflow & (a != k) & (t != k) & (g != k)
        if bad.any():
            raise KeyOverflow(f"{int(bad.sum())} histogramas no representables")
    return keys


def histogram_from_slot(key: int, k: int) -> BaseHistogram:
    if key >= OVERFLOW_BASE:
        counts = [0, 0, 0, 0]
        counts[key - OVERFLOW_BASE] = k
        return BaseHistogram.of(*counts)
    return unpack_histogram_key(key, k)


def count_valid_histograms(k: int) -> int:
    """Composiciones de k en 4 partes: C(k+3, 3)."""
    if k < 0:
        raise LengthError("k debe ser >= 0")
    return math.comb(k + 3, 3)


@lru_cache(maxsize=8)
def all_histograms(k: int) -> np.ndarray:
    """
    Todos los histogramas válidos de longitud k como matriz (n, 4) int64,
    ordenados lexicográficamente por (#A, #T, #G).
    """
    rows = [
        (a, t, g, k - a - t - g)
        for a in range(k + 1)
        for t in range(k + 1 - a)
        for g in range(k + 1 - a - t)
    ]
    out = np.array(rows, dtype=np.int64).reshape(-1, 4)
    out.setflags(write=False)
    return out


def window_histograms(codes: np.ndarray, k: int) -> np.ndarray:
    """
    Histogramas de todas las ventanas de longitud k (stride 1) vía sumas
    acumuladas. Retorna (len - k + 1, 4).
    """
    codes = np.asarray(codes, dtype=np.uint8)
    n = codes.shape[0] - k + 1
    if n <= 0:
        return np.zeros((0, 4), dtype=np.int64)
    onehot = np.zeros((codes.shape[0] + 1, 4), dtype=np.int64)
    onehot[np.arange(1, codes.shape[0] + 1), codes] = 1
    cums = np.cumsum(onehot, axis=0)
    return cums[k:k + n] - cums[:n]
