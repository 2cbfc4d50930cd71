"""
Modelos del matcher: Edits Vector y modelo del sense amplifier (SA).
"""
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from config.settings import SaMode

ConfidenceTable = Dict[Tuple[int, int], float]


class EditsVector(BaseModel):
    """Vector de k bits; bit i = 1 si la base i de la query cuenta como edit."""
    model_config = ConfigDict(frozen=True)

    bits: Tuple[int, ...] = Field(description="0/1 por posición de la query")
    edit_count: int = Field(ge=0, description="popcount(bits)")

    @model_validator(mode="after")
    def _count_matches_bits(self) -> "EditsVector":
        if self.edit_count != sum(self.bits):
            raise ValueError("edit_count debe ser igual al número de bits en 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits solo admite 0/1")
        return self

    @classmethod
    def from_bits(cls, bits) -> "EditsVector":
        bits = tuple(int(b) for b in bits)
        return cls(bits=bits, edit_count=sum(bits))

    @property
    def k(self) -> int:
        return len(self.bits)

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=bool)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


class SaModel(BaseModel):
    """
    Modelo del sense amplifier que hace el count-and-compare de una fila.

    - ideal: hit sii edit_count <= threshold
    - stochastic: hit con probabilidad confidence_table[(threshold, edit_count)];
      pares ausentes caen al escalón ideal.

    El generador se deriva de (rng_seed, spawn_key), así cada read/worker tiene
    su propio stream reproducible (ver `spawn`).
    """
    model_config = ConfigDict(frozen=False)

    mode: SaMode = Field(default=SaMode.IDEAL)
    threshold: int = Field(ge=0)
    confidence_table: ConfidenceTable = Field(default_factory=dict)
    rng_seed: int = Field(default=0, ge=0)
    spawn_key: Tuple[int, ...] = Field(default=())

    _rng: Optional[np.random.Generator] = PrivateAttr(default=None)

    @field_validator("confidence_table")
    @classmethod
    def _probabilities_valid(cls, table: ConfidenceTable) -> ConfidenceTable:
        by_threshold: Dict[int, list] = {}
        for (thr, count), p in table.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"Probabilidad fuera de [0,1] en ({thr}, {count}): {p}")
            by_threshold.setdefault(thr, []).append((count, p))
        for thr, points in by_threshold.items():
            points.sort()
            for (c0, p0), (c1, p1) in zip(points, points[1:]):
                if p1 > p0:
                    raise ValueError(
                        f"Confianza creciente para threshold {thr}: "
                        f"{c0}->{p0} y {c1}->{p1}"
                    )
        return table

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = np.random.default_rng(
                np.random.SeedSequence(self.rng_seed, spawn_key=self.spawn_key)
            )
        return self._rng

    def spawn(self, stream_id: int) -> "SaModel":
        """Copia con un generador independiente derivado de stream_id."""
        return SaModel(
            mode=self.mode,
            threshold=self.threshold,
            confidence_table=self.confidence_table,
            rng_seed=self.rng_seed,
            spawn_key=self.spawn_key + (int(stream_id),),
        )

    def with_threshold(self, threshold: int) -> "SaModel":
        return SaModel(
            mode=self.mode,
            threshold=threshold,
            confidence_table=self.confidence_table,
            rng_seed=self.rng_seed,
            spawn_key=self.spawn_key,
        )

    def has_measured_series(self) -> bool:
        return any(thr == self.threshold for thr, _ in self.confidence_table)
