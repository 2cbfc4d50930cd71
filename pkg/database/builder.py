"""
Construcción de la base de datos: extracción de k-mers, agrupado por
(especie, histograma) y empaquetado en crossbars.

Los k-mers de una misma especie con el mismo histograma van juntos; un grupo
de más de `crossbar_rows` k-mers continúa en crossbars consecutivos. Los
índices se asignan en orden (especie, clave), así el resultado no depende del
orden de entrada.
"""
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from database.models import CrossbarDescriptor, DatabaseLayout
from filtering.tracing_table import CrossbarRange
from seq.histogram import slot_keys, window_histograms
from seq.models import KMerRecord, Sequence
from utils.errors import BuildError, TooShort
from utils.logger import setup_logger

logger = setup_logger(__name__)


def kmer_windows(genome: Sequence, k: int, stride: int = 1,
                 dedup: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Ventanas de k bases como arrays.

    Returns:
        (codes (n, k) uint8, offsets (n,) int64), omitiendo ventanas que tocan
        posiciones enmascaradas

    Raises:
        TooShort: si |genome| < k
    """
    if genome.length < k:
        raise TooShort(f"Genoma de largo {genome.length} < k={k}")

    codes = sliding_window_view(genome.codes, k)
    offsets = np.arange(codes.shape[0], dtype=np.int64)
    keep = np.zeros(codes.shape[0], dtype=bool)
    keep[::stride] = True

    if genome.is_masked:
        clean = genome.clean_windows(k)
        skipped = int((keep & ~clean).sum())
        if skipped:
            logger.warning(f"Skipped {skipped} windows overlapping ambiguity codes")
        keep &= clean

    codes, offsets = codes[keep], offsets[keep]
    if dedup and codes.shape[0]:
        _, first = np.unique(codes, axis=0, return_index=True)
        first.sort()
        codes, offsets = codes[first], offsets[first]
    return np.ascontiguousarray(codes), offsets


def extract_kmers(genome: Sequence, k: int, species_id: int = 0,
                  stride: int = 1, dedup: bool = False) -> List[KMerRecord]:
    """
    Todos los k-mers del genoma (ventana deslizante).

    Raises:
        TooShort: si |genome| < k
    """
    codes, offsets = kmer_windows(genome, k, stride, dedup)
    return [
        KMerRecord(sequence=Sequence.from_codes(c), species_id=species_id, source_offset=int(o))
        for c, o in zip(codes, offsets)
    ]


def _species_groups(genome: Sequence, k: int, stride: int, dedup: bool):
    codes, offsets = kmer_windows(genome, k, stride, dedup)
    hists = window_histograms(genome.codes, k)[offsets]
    return codes, offsets, slot_keys(hists)


def placements_from_crossbars(crossbars: Iterable[CrossbarDescriptor]) -> Dict[int, List[CrossbarRange]]:
    """Un rango por tramo consecutivo de crossbars con igual (especie, clave)."""
    placements: Dict[int, List[CrossbarRange]] = defaultdict(list)
    run_start = None
    prev = None
    for xb in crossbars:
        group = (xb.species_id, xb.histogram_key)
        if group != prev:
            if prev is not None:
                placements[prev[1]].append(CrossbarRange(start=run_start, end=xb.index - 1))
            run_start, prev = xb.index, group
    if prev is not None:
        placements[prev[1]].append(CrossbarRange(start=run_start, end=xb.index))
    return {key: sorted(ranges, key=lambda r: r.start) for key, ranges in sorted(placements.items())}


def build_layout(
    genomes: List[Tuple[int, Sequence]],
    k: int,
    crossbar_rows: int = 128,
    stride: int = 1,
    dedup: bool = False,
    species_names: Optional[Mapping[int, str]] = None,
) -> DatabaseLayout:
    """
    Empaqueta los k-mers de todos los genomas en crossbars.

    Raises:
        BuildError: sin genomas
        TooShort: algún genoma más corto que k
    """
    if not genomes:
        raise BuildError("Se necesita al menos un genoma para construir la base de datos")

    per_species: Dict[int, List[Tuple[np.ndarray, np.ndarray, np.ndarray]]] = defaultdict(list)
    for species_id, genome in genomes:
        per_species[species_id].append(_species_groups(genome, k, stride, dedup))

    crossbars: List[CrossbarDescriptor] = []
    for species_id in sorted(per_species):
        parts = per_species[species_id]
        codes = np.concatenate([p[0] for p in parts])
        offsets = np.concatenate([p[1] for p in parts])
        keys = np.concatenate([p[2] for p in parts])
        if dedup and len(parts) > 1 and codes.shape[0]:
            _, first = np.unique(codes, axis=0, return_index=True)
            first.sort()
            codes, offsets, keys = codes[first], offsets[first], keys[first]

        order = np.lexsort((np.arange(keys.shape[0]), keys))
        codes, offsets, keys = codes[order], offsets[order], keys[order]
        bounds = np.flatnonzero(np.diff(keys)) + 1
        for lo, hi in zip(np.concatenate([[0], bounds]), np.concatenate([bounds, [keys.shape[0]]])):
            for start in range(lo, hi, crossbar_rows):
                stop = min(start + crossbar_rows, hi)
                crossbars.append(CrossbarDescriptor(
                    index=len(crossbars),
                    species_id=species_id,
                    histogram_key=int(keys[start]),
                    codes=codes[start:stop],
                    offsets=offsets[start:stop],
                ))

    layout = DatabaseLayout(
        k=k,
        crossbar_rows=crossbar_rows,
        crossbars=crossbars,
        placements=placements_from_crossbars(crossbars),
        species_names=dict(species_names or {}),
    )
    logger.info(
        f"Layout built: {layout.total_kmers} k-mers in {layout.crossbar_count} crossbars "
        f"({len(layout.placements)} histograms, utilization {layout.utilization:.1%})"
    )
    return layout
