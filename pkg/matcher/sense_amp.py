"""
Decisión de hit del sense amplifier: escalón ideal o tabla de confianza.

La tabla por defecto son las series medidas por Monte Carlo (umbrales 1-9,
1 a 13 edits por fila), en data/config/sa_confidence.txt.
"""
from pathlib import Path
from typing import Optional, Union

import numpy as np

from config.settings import Config, SaMode
from matcher.models import ConfidenceTable, EditsVector, SaModel
from utils.errors import ConfigError
from utils.logger import setup_logger

logger = setup_logger(__name__)

_warned_thresholds = set()


def load_confidence_table(path: Optional[Union[str, Path]] = None) -> ConfidenceTable:
    """
    Lee `threshold edit_count probability` por línea (separado por espacios).

    Raises:
        ConfigError: línea mal formada o probabilidad fuera de [0, 1]
    """
    path = Path(path) if path else Config().CONFIDENCE_TABLE_PATH
    table: ConfidenceTable = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ConfigError(f"{path}:{lineno}: se esperaban 3 columnas")
            try:
                thr, count, p = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as e:
                raise ConfigError(f"{path}:{lineno}: {e}") from e
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{path}:{lineno}: probabilidad fuera de [0,1]: {p}")
            table[(thr, count)] = p
    logger.debug(f"Loaded {len(table)} confidence points from {path}")
    return table


def build_sa_model(mode: SaMode, threshold: int, seed: int = 0,
                   table_path: Optional[Union[str, Path]] = None) -> SaModel:
    """SaModel listo para usar; en modo ideal no hace falta la tabla."""
    table = load_confidence_table(table_path) if mode == SaMode.STOCHASTIC else {}
    sa = SaModel(mode=mode, threshold=threshold, confidence_table=table, rng_seed=seed)
    if mode == SaMode.STOCHASTIC and not sa.has_measured_series():
        _warn_unmeasured(threshold)
    return sa


def _warn_unmeasured(threshold: int) -> None:
    if threshold not in _warned_thresholds:
        _warned_thresholds.add(threshold)
        logger.warning(f"No measured SA series for threshold {threshold}; using the ideal step")


def hit_probability(edit_count: int, sa: SaModel) -> float:
    """Probabilidad de hit para una fila con `edit_count` bits en 1."""
    ideal = 1.0 if edit_count <= sa.threshold else 0.0
    if sa.mode == SaMode.IDEAL:
        return ideal
    return sa.confidence_table.get((sa.threshold, int(edit_count)), ideal)


def hit_probabilities(counts: np.ndarray, sa: SaModel) -> np.ndarray:
    counts = np.asarray(counts)
    probs = (counts <= sa.threshold).astype(np.float64)
    if sa.mode == SaMode.STOCHASTIC:
        for (thr, c), p in sa.confidence_table.items():
            if thr == sa.threshold:
                probs[counts == c] = p
    return probs


def decide_hits(counts: np.ndarray, sa: SaModel,
                rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Decisión de hit para un vector de conteos (una fila por elemento).

    En modo estocástico consume exactamente una muestra uniforme por fila, en
    el orden de las filas. El modo ideal no consume muestras.
    """
    counts = np.asarray(counts)
    if sa.mode == SaMode.IDEAL:
        return counts <= sa.threshold
    rng = rng if rng is not None else sa.rng
    draws = rng.random(counts.shape[0])
    return draws < hit_probabilities(counts, sa)


def is_hit(ev: Union[EditsVector, int], sa: SaModel,
           rng: Optional[np.random.Generator] = None) -> bool:
    """Hit para un único Edits Vector (o directamente su edit_count)."""
    count = ev.edit_count if isinstance(ev, EditsVector) else int(ev)
    if sa.mode == SaMode.IDEAL:
        return count <= sa.threshold
    rng = rng if rng is not None else sa.rng
    return bool(rng.random() < hit_probability(count, sa))
