"""
Modelos de la base de datos de referencia: crossbars y su ubicación.
"""
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from filtering.tracing_table import CrossbarRange
from seq.models import KMerRecord, Sequence


class CrossbarDescriptor(BaseModel):
    """
    Un crossbar poblado: k-mers de una única especie y un único histograma.

    `codes` es (filas, k) uint8; `offsets` la posición de cada k-mer en su
    genoma de origen.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int = Field(ge=0)
    species_id: int = Field(ge=0)
    histogram_key: int = Field(ge=0, description="Clave de slot del histograma común")
    codes: np.ndarray
    offsets: np.ndarray

    @property
    def rows(self) -> int:
        return int(self.codes.shape[0])

    def records(self) -> List[KMerRecord]:
        return [
            KMerRecord(
                sequence=Sequence.from_codes(codes),
                species_id=self.species_id,
                source_offset=int(offset),
                crossbar=self.index,
                row=row,
            )
            for row, (codes, offset) in enumerate(zip(self.codes, self.offsets))
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossbarDescriptor):
            return NotImplemented
        return (
            (self.index, self.species_id, self.histogram_key)
            == (other.index, other.species_id, other.histogram_key)
            and np.array_equal(self.codes, other.codes)
            and np.array_equal(self.offsets, other.offsets)
        )


class DatabaseLayout(BaseModel):
    """Crossbars ordenados por (especie, clave) y sus rangos por histograma."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    k: int = Field(ge=1)
    crossbar_rows: int = Field(default=128, ge=1)
    crossbars: List[CrossbarDescriptor] = Field(default_factory=list)
    placements: Dict[int, List[CrossbarRange]] = Field(default_factory=dict)
    species_names: Dict[int, str] = Field(default_factory=dict)

    @property
    def crossbar_count(self) -> int:
        return len(self.crossbars)

    @property
    def total_kmers(self) -> int:
        return sum(xb.rows for xb in self.crossbars)

    @property
    def utilization(self) -> float:
        if not self.crossbars:
            return 0.0
        return self.total_kmers / (self.crossbar_count * self.crossbar_rows)

    @property
    def species(self) -> List[int]:
        return sorted({xb.species_id for xb in self.crossbars} | set(self.species_names))

    def crossbar_species(self) -> np.ndarray:
        return np.array([xb.species_id for xb in self.crossbars], dtype=np.int64)

    def crossbars_of(self, species_id: int) -> np.ndarray:
        return np.flatnonzero(self.crossbar_species() == species_id)

    def rows_of(self, indices: np.ndarray) -> np.ndarray:
        """Concatena los k-mers de los crossbars indicados, en ese orden."""
        if len(indices) == 0:
            return np.zeros((0, self.k), dtype=np.uint8)
        return np.concatenate([self.crossbars[int(i)].codes for i in indices])

    def chips_required(self, crossbars_per_chip: int) -> int:
        return -(-self.crossbar_count // crossbars_per_chip)

    def species_name(self, species_id: Optional[int]) -> str:
        if species_id is None:
            return "unclassified"
        return self.species_names.get(species_id, str(species_id))
