"""
Estado del crossbar: celdas, contadores de escritura por celda y ciclos.

Internamente las matrices se guardan columna-mayor (columnas x filas) porque
todas las compuertas MAGIC operan sobre columnas completas en paralelo.
"""
from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np

from crossbar.layout import ColumnLayout
from utils.helpers import ensure_parent


class CrossbarState:
    """
    Sustrato de la simulación a nivel de compuertas.

    Attributes:
        layout: mapeo de columnas
        cycle_counter: ciclos transcurridos (escrituras + programa MAGIC)
        active_rows: filas con un k-mer cargado
    """

    def __init__(self, rows: int = 128, columns: int = 512, k: int = 64, trace: bool = False):
        self.rows = rows
        self.columns = columns
        self.layout = ColumnLayout(k=k, columns=columns)
        self._cells = np.zeros((columns, rows), dtype=bool)
        self._writes = np.zeros((columns, rows), dtype=np.int64)
        self.cycle_counter = 0
        self.active_rows = np.zeros(rows, dtype=bool)
        self.trace_enabled = trace
        self.trace: List[str] = []

    # ────────────────────────────────────────────────────────────────────
    # VISTAS (filas x columnas)
    # ────────────────────────────────────────────────────────────────────

    @property
    def cells(self) -> np.ndarray:
        return self._cells.T

    @property
    def write_counts(self) -> np.ndarray:
        return self._writes.T

    @property
    def k(self) -> int:
        return self.layout.k

    @property
    def populated(self) -> int:
        return int(self.active_rows.sum())

    def utilization(self) -> float:
        return self.populated / self.rows

    # ────────────────────────────────────────────────────────────────────
    # PRIMITIVAS
    # ────────────────────────────────────────────────────────────────────

    def column(self, col: int) -> np.ndarray:
        return self._cells[col]

    def drive(self, col: int, values: np.ndarray, rows: Optional[np.ndarray] = None) -> None:
        """
        Fuerza `values` en la columna para las filas indicadas (default: activas).
        Cuenta una escritura por celda conducida, cambie o no su valor.
        """
        mask = self.active_rows if rows is None else rows
        self._cells[col] = np.where(mask, values, self._cells[col])
        self._writes[col] += mask

    def tick(self, op: str, out_cols: Union[int, Iterable[int]], in_cols: Iterable[int] = ()) -> None:
        """Avanza un ciclo y, si corresponde, lo registra en la traza."""
        self.cycle_counter += 1
        if self.trace_enabled:
            outs = [out_cols] if isinstance(out_cols, (int, np.integer)) else list(out_cols)
            ins = list(in_cols)
            out_txt = ",".join(str(c) for c in outs) if outs else "-"
            in_txt = ",".join(str(c) for c in ins) if ins else "-"
            self.trace.append(f"{self.cycle_counter} {op} {out_txt} {in_txt}")

    def dump_trace(self, path: Union[str, Path]) -> Path:
        """Una línea por ciclo: `cycle op out_cols in_cols`."""
        path = ensure_parent(path)
        with open(path, "w", encoding="utf-8") as f:
            for line in self.trace:
                f.write(line + "\n")
        return path

    def snapshot_writes(self) -> np.ndarray:
        return self._writes.copy()
