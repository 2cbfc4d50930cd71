"""
Métricas de calidad (sensitivity, precision, F1) y eficiencia del filtro.
"""
from typing import Collection, Iterable, Optional, Tuple

import numpy as np

from database.models import DatabaseLayout
from pipeline.models import ClassificationResult, QualityMetrics
from seq.histogram import compute_histogram, histogram_from_slot
from seq.models import Sequence


def compute_metrics(results: Iterable[Tuple[ClassificationResult, Optional[int]]],
                    database_species: Optional[Collection[int]] = None) -> QualityMetrics:
    """
    TP: asignado a la especie verdadera.
    FP: asignado a otra especie (incluye reads de especies fuera de la base).
    FN: sin clasificar cuando la especie verdadera está en la base.

    Reads con verdad desconocida (None) no cuentan. Sin `database_species` se
    asume que toda verdad está en la base.
    """
    tp = fp = fn = 0
    for result, truth in results:
        if truth is None:
            continue
        in_database = database_species is None or truth in database_species
        if result.assigned_species is None:
            fn += in_database
        elif result.assigned_species == truth:
            tp += 1
        else:
            fp += 1
    return QualityMetrics.from_counts(tp, fp, fn)


def compute_detection_metrics(results: Iterable[Tuple[bool, bool]]) -> QualityMetrics:
    """(detected, is_target) por read: TP detectado objetivo, FP detectado no objetivo, FN objetivo perdido."""
    tp = fp = fn = 0
    for detected, is_target in results:
        if detected and is_target:
            tp += 1
        elif detected:
            fp += 1
        elif is_target:
            fn += 1
    return QualityMetrics.from_counts(tp, fp, fn)


def filter_pass_fraction(layout: DatabaseLayout, queries: Iterable[Sequence], eth: int) -> float:
    """
    Fracción de pares (query, k-mer) que pasan el filtro de conteo de bases.
    Las queries con posiciones enmascaradas no se cuentan.
    """
    if not layout.crossbars:
        return 0.0
    hists = np.array(
        [histogram_from_slot(xb.histogram_key, layout.k).as_tuple() for xb in layout.crossbars],
        dtype=np.int64,
    )
    sizes = np.array([xb.rows for xb in layout.crossbars], dtype=np.int64)
    passed = total = 0
    for query in queries:
        if query.is_masked:
            continue
        h = compute_histogram(query).as_array()
        close = np.abs(hists - h).sum(axis=1) <= 2 * eth
        passed += int(sizes[close].sum())
        total += layout.total_kmers
    return passed / total if total else 0.0
