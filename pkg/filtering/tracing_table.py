"""
Tracing table: para cada clave de histograma, la lista precomputada de rangos
de crossbars cuyos k-mers pasan el filtro de conteo de bases.

Formato binario (little-endian):

    magic    4s   b"CLTT"
    version  u16
    k        u8
    eth      u8
    count    u32                 entradas que siguen, ordenadas por clave
    por entrada:
        key      u32
        n        u32
        n x (start u24, end u24)
"""
import struct
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence as SeqType, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from filtering.base_count import neighbor_array
from seq.histogram import TABLE_SLOTS, compute_histogram, count_valid_histograms, histogram_from_slot, slot_key, slot_keys
from seq.models import Sequence
from utils.errors import BuildError, KeyOverflow, LengthError, LoadError
from utils.helpers import ensure_parent
from utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_CROSSBAR_INDEX = (1 << 24) - 1
POINTER_BYTES = 4
RANGE_BYTES = 6

TABLE_MAGIC = b"CLTT"
TABLE_VERSION = 1
_HEADER = struct.Struct("<4sHBBI")
_ENTRY = struct.Struct("<II")


class CrossbarRange(BaseModel):
    """Crossbars consecutivos [start, end], ambos inclusive."""
    model_config = ConfigDict(frozen=True)

    start: int = Field(ge=0, le=MAX_CROSSBAR_INDEX)
    end: int = Field(ge=0, le=MAX_CROSSBAR_INDEX)

    @model_validator(mode="after")
    def _ordered(self) -> "CrossbarRange":
        if self.start > self.end:
            raise ValueError(f"Rango invertido: {self.start} > {self.end}")
        return self

    @property
    def count(self) -> int:
        return self.end - self.start + 1

    def indices(self) -> range:
        return range(self.start, self.end + 1)

    def __contains__(self, index: int) -> bool:
        return self.start <= index <= self.end


def merge_ranges(ranges: Iterable[CrossbarRange]) -> List[CrossbarRange]:
    """Ordena y une rangos solapados o contiguos."""
    merged: List[List[int]] = []
    for r in sorted(ranges, key=lambda r: (r.start, r.end)):
        if merged and r.start <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], r.end)
        else:
            merged.append([r.start, r.end])
    return [CrossbarRange(start=s, end=e) for s, e in merged]


def crossbar_indices(ranges: Iterable[CrossbarRange]) -> np.ndarray:
    """Índices de crossbar cubiertos por los rangos, ordenados y sin repetidos."""
    parts = [np.arange(r.start, r.end + 1) for r in ranges]
    if not parts:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(parts))


class TracingTable:
    """
    Tabla inmutable clave de slot -> rangos de crossbars.

    Se guarda dispersa (solo slots poblados); `memory_footprint` reporta lo que
    ocuparía el arreglo denso de 2^18 punteros más las listas.
    """

    def __init__(self, k: int, eth: int, entries: Mapping[int, SeqType[CrossbarRange]]):
        self.k = k
        self.eth = eth
        self._entries: Dict[int, Tuple[CrossbarRange, ...]] = {
            key: tuple(ranges) for key, ranges in sorted(entries.items())
        }

    def lookup(self, key: int) -> List[CrossbarRange]:
        return list(self._entries.get(int(key), ()))

    def keys(self) -> List[int]:
        return list(self._entries)

    def items(self):
        return self._entries.items()

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TracingTable):
            return NotImplemented
        return (self.k, self.eth, self._entries) == (other.k, other.eth, other._entries)

    @property
    def total_ranges(self) -> int:
        return sum(len(r) for r in self._entries.values())

    def memory_footprint(self) -> int:
        """Bytes: arreglo de punteros denso + 6 bytes por rango."""
        return TABLE_SLOTS * POINTER_BYTES + self.total_ranges * RANGE_BYTES


def footprint_bound(k: int, eth: int, max_neighbors: int) -> int:
    """Cota superior: cada histograma válido con `max_neighbors` rangos."""
    return TABLE_SLOTS * POINTER_BYTES + count_valid_histograms(k) * max_neighbors * RANGE_BYTES


def build_tracing_table(placements: Mapping[int, SeqType[CrossbarRange]], eth: int, k: int) -> TracingTable:
    """
    Cada histograma h' con placements empuja sus rangos a todos sus vecinos h;
    por simetría del vecindario, la lista de h termina siendo la unión de los
    rangos de todos los h' a L1 <= 2*eth.

    Raises:
        BuildError: clave inválida para k
    """
    if eth < 0:
        raise BuildError(f"eth debe ser >= 0, recibió {eth}")
    lists: Dict[int, List[CrossbarRange]] = defaultdict(list)
    for key, ranges in placements.items():
        try:
            h = histogram_from_slot(int(key), k)
            valid = slot_key(h) == key
        except (KeyOverflow, LengthError, IndexError):
            valid = False
        if not valid:
            raise BuildError(f"Clave de histograma inválida para k={k}: {key}")
        for neighbor_key in slot_keys(neighbor_array(h.as_array(), eth)):
            lists[int(neighbor_key)].extend(ranges)

    entries = {key: merge_ranges(ranges) for key, ranges in lists.items()}
    table = TracingTable(k=k, eth=eth, entries=entries)
    logger.info(
        f"Tracing table built: {len(table)} populated slots, "
        f"{table.total_ranges} ranges, {table.memory_footprint() / 1e6:.2f} MB"
    )
    return table


def trace_query(table: TracingTable, query: Sequence) -> List[CrossbarRange]:
    """
    Rangos candidatos para la query; [] si no hay hits posibles. Una query con
    posiciones enmascaradas no tiene histograma válido y no se traza.

    Raises:
        LengthError: si |query| != k de la tabla
    """
    if query.length != table.k:
        raise LengthError(f"Query de largo {query.length}, la tabla es para k={table.k}")
    if query.is_masked:
        return []
    return table.lookup(slot_key(compute_histogram(query)))


# ════════════════════════════════════════════════════════════════════════
# PERSISTENCIA
# ════════════════════════════════════════════════════════════════════════

def _pack_u24(values: np.ndarray) -> bytes:
    return np.asarray(values, dtype="<u4").view(np.uint8).reshape(-1, 4)[:, :3].tobytes()


def _unpack_u24(raw: bytes) -> np.ndarray:
    triples = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3)
    padded = np.zeros((triples.shape[0], 4), dtype=np.uint8)
    padded[:, :3] = triples
    return padded.view("<u4").ravel()


def save_tracing_table(table: TracingTable, path: Union[str, Path]) -> Path:
    path = ensure_parent(path)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(TABLE_MAGIC, TABLE_VERSION, table.k, table.eth, len(table)))
        for key, ranges in table.items():
            f.write(_ENTRY.pack(key, len(ranges)))
            bounds = np.array([(r.start, r.end) for r in ranges], dtype=np.uint32).ravel()
            f.write(_pack_u24(bounds))
    logger.info(f"Tracing table saved: {path}")
    return path


def load_tracing_table(path: Union[str, Path]) -> TracingTable:
    """
    Raises:
        LoadError: magic o versión incorrecta, archivo truncado o corrupto
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise LoadError(f"No se pudo leer la tracing table {path}: {e}") from e

    if len(data) < _HEADER.size:
        raise LoadError(f"Tracing table truncada: {path}")
    magic, version, k, eth, count = _HEADER.unpack_from(data, 0)
    if magic != TABLE_MAGIC:
        raise LoadError(f"No es una tracing table (magic {magic!r}): {path}")
    if version != TABLE_VERSION:
        raise LoadError(f"Versión de tracing table {version} no soportada (se espera {TABLE_VERSION})")

    entries: Dict[int, List[CrossbarRange]] = {}
    pos = _HEADER.size
    try:
        for _ in range(count):
            key, n = _ENTRY.unpack_from(data, pos)
            pos += _ENTRY.size
            end = pos + n * RANGE_BYTES
            if end > len(data):
                raise LoadError(f"Tracing table truncada en la clave {key}")
            bounds = _unpack_u24(data[pos:end]).reshape(-1, 2)
            pos = end
            entries[key] = [CrossbarRange(start=int(s), end=int(e)) for s, e in bounds]
    except LoadError:
        raise
    except struct.error as e:
        raise LoadError(f"Tracing table corrupta: {e}") from e
    except ValueError as e:
        raise LoadError(f"Rango inválido en tracing table: {e}") from e
    if pos != len(data):
        raise LoadError(f"Bytes sobrantes al final de la tracing table: {len(data) - pos}")

    logger.info(f"Tracing table loaded: {path} ({count} slots)")
    return TracingTable(k=k, eth=eth, entries=entries)
