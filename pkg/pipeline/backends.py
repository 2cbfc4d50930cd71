"""
Backends de búsqueda sobre un conjunto de crossbars.

Ambos recorren los crossbars en el orden recibido y las filas en orden
ascendente, consumiendo una muestra del generador por fila poblada en modo
estocástico, así que con la misma semilla producen las mismas decisiones.
"""
import threading
from typing import Optional

import numpy as np

from config.settings import Backend
from crossbar.search_program import SearchStats, load_kmers, run_search_program
from crossbar.state import CrossbarState
from database.models import DatabaseLayout
from matcher.models import SaModel
from matcher.sense_amp import decide_hits
from matcher.neighbor import edit_counts
from seq.models import Sequence
from utils.errors import ConfigError


class FunctionalBackend:
    """Neighbor matching vectorizado sobre las filas de los crossbars candidatos."""

    name = Backend.FUNCTIONAL

    def __init__(self, layout: DatabaseLayout):
        self.layout = layout
        self._sizes = np.array([xb.rows for xb in layout.crossbars], dtype=np.int64)
        self._all_rows: Optional[np.ndarray] = None
        self._lock = threading.Lock()

    def _rows(self, indices: np.ndarray) -> np.ndarray:
        # full scan: se reutiliza la matriz completa
        if indices.size == self.layout.crossbar_count and np.array_equal(indices, np.arange(indices.size)):
            with self._lock:
                if self._all_rows is None:
                    self._all_rows = self.layout.rows_of(indices)
            return self._all_rows
        return self.layout.rows_of(indices)

    def search(self, indices: np.ndarray, query: Sequence, sa: SaModel,
               rng: Optional[np.random.Generator] = None) -> np.ndarray:
        """Hits por crossbar (alineado con `indices`)."""
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size == 0:
            return np.zeros(0, dtype=np.int64)
        hits = decide_hits(edit_counts(self._rows(indices), query.codes), sa, rng)
        owner = np.repeat(np.arange(indices.size), self._sizes[indices])
        return np.bincount(owner, weights=hits, minlength=indices.size).astype(np.int64)


class SearchTally:
    """Acumulado thread-safe de SearchStats para el reporte de performance."""

    def __init__(self):
        self._lock = threading.Lock()
        self.searches = 0
        self.magic_cycles = 0
        self.writes = 0
        self.rows = 0
        self.sa_reads = 0
        self.last: Optional[SearchStats] = None

    def add(self, stats: SearchStats) -> None:
        with self._lock:
            self.searches += 1
            self.magic_cycles += stats.magic_cycles
            self.writes += stats.writes
            self.rows += stats.active_rows
            self.sa_reads += stats.sa_reads
            self.last = stats

    @property
    def writes_per_row(self) -> float:
        return self.writes / self.rows if self.rows else 0.0


class GateLevelBackend:
    """
    Simula cada crossbar candidato a nivel de compuertas MAGIC. Cada búsqueda
    usa un CrossbarState propio, así que es seguro entre threads.
    """

    name = Backend.GATE_LEVEL

    def __init__(self, layout: DatabaseLayout, num_sas: int = 32, columns: int = 512):
        self.layout = layout
        self.num_sas = num_sas
        self.columns = columns
        self.tally = SearchTally()

    def search(self, indices: np.ndarray, query: Sequence, sa: SaModel,
               rng: Optional[np.random.Generator] = None) -> np.ndarray:
        rng = rng if rng is not None else sa.rng
        out = np.zeros(len(indices), dtype=np.int64)
        for pos, index in enumerate(indices):
            xb = CrossbarState(rows=self.layout.crossbar_rows, columns=self.columns, k=self.layout.k)
            load_kmers(xb, self.layout.crossbars[int(index)].codes)
            hits, stats = run_search_program(xb, query, sa, self.num_sas, rng)
            self.tally.add(stats)
            out[pos] = int(hits.sum())
        return out


def make_backend(kind: Backend, layout: DatabaseLayout, num_sas: int = 32, columns: int = 512):
    try:
        kind = Backend(kind)
    except ValueError as e:
        raise ConfigError(f"Backend desconocido: {kind}") from e
    if kind == Backend.GATE_LEVEL:
        return GateLevelBackend(layout, num_sas=num_sas, columns=columns)
    return FunctionalBackend(layout)
