"""
Mapeo de columnas dentro de una fila del crossbar.

    [0, 2k)        k-mer guardado, 2 bits por base (bit alto primero)
    [2k, 4k)       query, mismo formato
    [4k, 5k)       Edits Vector
    [5k, ...)      slots de trabajo: por slot 3 celdas M (MC, ML, MR) y
                   30 celdas de XOR (3 comparaciones x 2 bits x 5 celdas)

Cada slot procesa una base; con k=64 y 512 columnas hay 192 columnas libres,
o sea 5 slots de 33 celdas.
"""
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.errors import LayoutError

CENTER, LEFT, RIGHT = 0, 1, 2
COMPARISON_OFFSET = {CENTER: 0, LEFT: -1, RIGHT: 1}
XOR_CELLS = 5                      # not_a, not_b, and, nor, out
CELLS_PER_BASE = 3 + 3 * 2 * XOR_CELLS


class ColumnLayout(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int = Field(default=64, ge=1)
    columns: int = Field(default=512, ge=1)

    @model_validator(mode="after")
    def _fits(self) -> "ColumnLayout":
        if self.slots < 1:
            raise LayoutError(
                f"{self.columns} columnas no alcanzan para k={self.k}: "
                f"se necesitan al menos {5 * self.k + CELLS_PER_BASE}"
            )
        return self

    # ────────────────────────────────────────────────────────────────────
    # SPANS
    # ────────────────────────────────────────────────────────────────────

    @property
    def slots(self) -> int:
        return (self.columns - 5 * self.k) // CELLS_PER_BASE

    @property
    def kmer_cols(self) -> range:
        return range(0, 2 * self.k)

    @property
    def query_cols(self) -> range:
        return range(2 * self.k, 4 * self.k)

    @property
    def edits_cols(self) -> range:
        return range(4 * self.k, 5 * self.k)

    @property
    def mc_cols(self) -> range:
        start = 5 * self.k
        return range(start, start + self.slots)

    @property
    def ml_cols(self) -> range:
        start = 5 * self.k + self.slots
        return range(start, start + self.slots)

    @property
    def mr_cols(self) -> range:
        start = 5 * self.k + 2 * self.slots
        return range(start, start + self.slots)

    @property
    def scratch_cols(self) -> range:
        start = 5 * self.k + 3 * self.slots
        return range(start, start + self.slots * 3 * 2 * XOR_CELLS)

    def spans(self) -> List[Tuple[str, range]]:
        return [
            ("kmer", self.kmer_cols),
            ("query", self.query_cols),
            ("edits", self.edits_cols),
            ("mc", self.mc_cols),
            ("ml", self.ml_cols),
            ("mr", self.mr_cols),
            ("scratch", self.scratch_cols),
        ]

    # ────────────────────────────────────────────────────────────────────
    # DIRECCIONES
    # ────────────────────────────────────────────────────────────────────

    def kmer_bit_col(self, base: int, bit: int) -> int:
        return 2 * base + bit

    def query_bit_col(self, base: int, bit: int) -> int:
        return 2 * self.k + 2 * base + bit

    def edits_col(self, base: int) -> int:
        return 4 * self.k + base

    def m_col(self, slot: int, comparison: int) -> int:
        return (self.mc_cols, self.ml_cols, self.mr_cols)[comparison][slot]

    def xor_cols(self, slot: int, comparison: int, bit: int) -> Tuple[int, int, int, int, int]:
        """(not_a, not_b, and, nor, out) de la XOR del bit `bit`."""
        base = self.scratch_cols.start + slot * 3 * 2 * XOR_CELLS + (comparison * 2 + bit) * XOR_CELLS
        return tuple(range(base, base + XOR_CELLS))

    def comparisons(self, base: int) -> List[int]:
        """Comparaciones presentes para la base (los bordes omiten al vecino ausente)."""
        out = [CENTER]
        if base > 0:
            out.append(LEFT)
        if base < self.k - 1:
            out.append(RIGHT)
        return out

    def base_groups(self) -> List[List[int]]:
        """Bases agrupadas de a `slots`: cada grupo reutiliza las mismas celdas."""
        return [list(range(s, min(s + self.slots, self.k))) for s in range(0, self.k, self.slots)]
