"""
Tipos de dominio para secuencias de ADN e histogramas de bases.

Todos los modelos son inmutables (frozen): se pueden compartir entre workers
sin sincronización.
"""
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from utils.errors import InvalidBase, LengthError

# A=00, T=01, G=10, C=11
ALPHABET = "ATGC"
_CODE_TABLE = bytes.maketrans(b"ATGC", b"\x00\x01\x02\x03")
_BASE_TABLE = bytes.maketrans(b"\x00\x01\x02\x03", b"ATGC")
_CANONICAL = frozenset(ALPHABET)


class Base(str, Enum):
    """Una de las cuatro bases canónicas, con su código de 2 bits."""

    A = "A"
    T = "T"
    G = "G"
    C = "C"

    @property
    def code(self) -> int:
        return ALPHABET.index(self.value)

    @classmethod
    def from_code(cls, code: int) -> "Base":
        return cls(ALPHABET[code])


class Sequence(BaseModel):
    """
    Secuencia de ADN sobre {A, T, G, C}.

    `masked_spans` marca intervalos [start, end) que en el FASTA original tenían
    códigos de ambigüedad (N, R, ...). Esas posiciones guardan una base
    placeholder y ninguna ventana de k-mer que las toque se extrae.
    """
    model_config = ConfigDict(frozen=True)

    bases: str = Field(min_length=1, description="Bases en mayúsculas, solo ATGC")
    masked_spans: Tuple[Tuple[int, int], ...] = Field(
        default=(),
        description="Intervalos [start, end) con códigos de ambigüedad en el origen"
    )

    @field_validator("bases")
    @classmethod
    def _only_canonical(cls, v: str) -> str:
        if not set(v) <= _CANONICAL:
            raise ValueError("Sequence solo admite A, T, G, C")
        return v

    @model_validator(mode="after")
    def _spans_in_range(self) -> "Sequence":
        for start, end in self.masked_spans:
            if not 0 <= start < end <= len(self.bases):
                raise ValueError(f"masked span fuera de rango: ({start}, {end})")
        return self

    # ────────────────────────────────────────────────────────────────────
    # CONSTRUCTORES
    # ────────────────────────────────────────────────────────────────────

    @classmethod
    def from_str(cls, text: str) -> "Sequence":
        """
        Construye desde texto (case-insensitive).

        Raises:
            InvalidBase: si hay un símbolo fuera de ACGT
            LengthError: si el texto está vacío
        """
        bases = text.upper()
        if not bases:
            raise LengthError("Sequence vacía")
        bad = set(bases) - _CANONICAL
        if bad:
            raise InvalidBase(f"Símbolos inválidos: {sorted(bad)}")
        return cls(bases=bases)

    @classmethod
    def from_codes(cls, codes: np.ndarray) -> "Sequence":
        """Construye desde un array de códigos 0..3."""
        raw = np.asarray(codes, dtype=np.uint8).tobytes()
        return cls(bases=raw.translate(_BASE_TABLE).decode("ascii"))

    # ────────────────────────────────────────────────────────────────────
    # ACCESO
    # ────────────────────────────────────────────────────────────────────

    @property
    def length(self) -> int:
        return len(self.bases)

    @property
    def codes(self) -> np.ndarray:
        """Códigos de 2 bits como uint8 (solo lectura)."""
        return np.frombuffer(self.bases.encode("ascii").translate(_CODE_TABLE), dtype=np.uint8)

    @property
    def is_masked(self) -> bool:
        return bool(self.masked_spans)

    def mask_array(self) -> np.ndarray:
        """Array booleano con True en las posiciones enmascaradas."""
        mask = np.zeros(len(self.bases), dtype=bool)
        for start, end in self.masked_spans:
            mask[start:end] = True
        return mask

    def clean_windows(self, k: int) -> np.ndarray:
        """Máscara (len - k + 1,) con True en las ventanas de k bases sin posiciones enmascaradas."""
        n = max(len(self.bases) - k + 1, 0)
        if not self.masked_spans:
            return np.ones(n, dtype=bool)
        masked = np.concatenate([[0], np.cumsum(self.mask_array())])
        return (masked[k:] - masked[:-k]) == 0

    def window(self, start: int, length: int) -> "Sequence":
        """Subsecuencia [start, start + length); conserva los spans enmascarados que caen dentro."""
        stop = min(start + length, len(self.bases))
        spans = tuple(
            (max(s, start) - start, min(e, stop) - start)
            for s, e in self.masked_spans
            if s < stop and e > start
        )
        return Sequence(bases=self.bases[start:stop], masked_spans=spans)

    def __len__(self) -> int:
        return len(self.bases)

    def __str__(self) -> str:
        return self.bases


class BaseHistogram(BaseModel):
    """Conteo (#A, #T, #G, #C) de una secuencia."""
    model_config = ConfigDict(frozen=True)

    count_a: int = Field(ge=0)
    count_t: int = Field(ge=0)
    count_g: int = Field(ge=0)
    count_c: int = Field(ge=0)

    @classmethod
    def of(cls, a: int, t: int, g: int, c: int) -> "BaseHistogram":
        return cls(count_a=int(a), count_t=int(t), count_g=int(g), count_c=int(c))

    @property
    def k(self) -> int:
        return self.count_a + self.count_t + self.count_g + self.count_c

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.count_a, self.count_t, self.count_g, self.count_c)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=np.int64)


class KMerRecord(BaseModel):
    """Un k-mer de la base de datos con su especie y su ubicación."""
    model_config = ConfigDict(frozen=True)

    sequence: Sequence
    species_id: int = Field(ge=0)
    source_offset: int = Field(ge=0, description="Posición en el genoma de origen")
    crossbar: Optional[int] = Field(default=None, description="Índice de crossbar asignado")
    row: Optional[int] = Field(default=None, description="Fila dentro del crossbar")

    @property
    def k(self) -> int:
        return self.sequence.length


__all__ = ["ALPHABET", "Base", "Sequence", "BaseHistogram", "KMerRecord"]
