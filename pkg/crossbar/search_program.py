"""
Programa de búsqueda del crossbar: carga de k-mers, escritura de la query,
secuencia de compuertas MAGIC que construye el Edits Vector en cada fila y
lectura por sense amplifiers.

Por grupo de bases (una base por slot):
    1 ciclo   INIT batched de todas las celdas de trabajo y de Edits[i]
    11 ciclos por comparación (2 XOR de 5 NOR + 1 NOR que da M)
    1 ciclo   Edits[i] = NOR(MC, ML, MR)
Con k=64 y 5 slots: 190 comparaciones * 11 + 64 + 13 inits = 2167 ciclos.

Escrituras por fila activa con k=64: 128 (query) + 2*64 (Edits) + 190*22 =
4436 sobre 357 celdas conducidas, unas 12.4 escrituras por celda. El modelo
de energía usa por defecto el valor calibrado de perf.model
(CALIBRATED_WRITES) y la vida útil 7 escrituras por celda; SearchStats
reporta lo medido.
"""
import math
from typing import List, Optional, Sequence as SeqType, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from config.settings import VALID_NUM_SAS
from crossbar.gates import exec_init, exec_nor, exec_xor
from crossbar.layout import COMPARISON_OFFSET
from crossbar.state import CrossbarState
from matcher.models import SaModel
from matcher.sense_amp import is_hit
from seq.encoding import code_bits
from seq.models import KMerRecord, Sequence
from utils.errors import CapacityError, ConfigError, EmptyCrossbar, LengthError
from utils.logger import setup_logger

logger = setup_logger(__name__)

QUERY_WRITE_CYCLES = 1


class SearchStats(BaseModel):
    """Contabilidad de una búsqueda sobre un crossbar."""

    cycles: int = Field(description="Ciclos totales (escritura de query + MAGIC)")
    magic_cycles: int = Field(description="Ciclos del programa MAGIC")
    write_cycles: int = Field(default=QUERY_WRITE_CYCLES)
    sa_reads: int = Field(description="Lecturas secuenciales de los SAs")
    active_rows: int
    writes: int = Field(description="Escrituras sobre las filas activas")
    writes_per_row: float
    driven_cells_per_row: int = Field(description="Celdas distintas conducidas en una fila")
    writes_per_driven_cell: float
    writes_per_cell: float = Field(description="Escrituras por fila / columnas")


def _bit_matrix(codes: np.ndarray) -> np.ndarray:
    """(n, k) códigos -> (n, 2k) bits, bit alto primero."""
    high, low = code_bits(codes)
    out = np.empty((codes.shape[0], 2 * codes.shape[1]), dtype=bool)
    out[:, 0::2] = high
    out[:, 1::2] = low
    return out


def load_kmers(xb: CrossbarState, kmers: Union[np.ndarray, SeqType[KMerRecord]]) -> int:
    """
    Programa los k-mers en las filas 0..n-1 y marca el resto como vacías.

    Returns:
        número de filas pobladas

    Raises:
        CapacityError: más k-mers que filas
        LengthError: k-mer de largo distinto a k
    """
    if isinstance(kmers, np.ndarray):
        codes = kmers
    else:
        if any(r.k != xb.k for r in kmers):
            raise LengthError(f"Todos los k-mers deben medir {xb.k}")
        codes = np.stack([r.sequence.codes for r in kmers]) if kmers else np.zeros((0, xb.k), dtype=np.uint8)

    n = codes.shape[0]
    if n > xb.rows:
        raise CapacityError(f"{n} k-mers no caben en {xb.rows} filas")
    if n and codes.shape[1] != xb.k:
        raise LengthError(f"k-mers de largo {codes.shape[1]}, se esperaba {xb.k}")

    xb.active_rows[:] = False
    xb.active_rows[:n] = True
    bits = np.zeros((xb.rows, 2 * xb.k), dtype=bool)
    if n:
        bits[:n] = _bit_matrix(codes)
    everything = np.ones(xb.rows, dtype=bool)
    for col in xb.layout.kmer_cols:
        xb.drive(col, bits[:, col], rows=everything)
    return n


def write_query(xb: CrossbarState, query: Sequence) -> None:
    """
    Escribe la query en las columnas de query de todas las filas.

    Raises:
        LengthError: si |query| != k
    """
    if query.length != xb.k:
        raise LengthError(f"Query de largo {query.length}, se esperaba {xb.k}")
    bits = _bit_matrix(query.codes[np.newaxis, :])[0]
    everything = np.ones(xb.rows, dtype=bool)
    for offset, col in enumerate(xb.layout.query_cols):
        xb.drive(col, np.full(xb.rows, bits[offset]), rows=everything)
    xb.tick("WRITE", xb.layout.query_cols)


def build_edits_vectors(xb: CrossbarState) -> None:
    """Secuencia MAGIC que deja el Edits Vector de cada fila activa en edits_cols."""
    layout = xb.layout
    for group in layout.base_groups():
        to_init: List[int] = []
        for slot, base in enumerate(group):
            for comp in layout.comparisons(base):
                to_init.extend(layout.xor_cols(slot, comp, 0))
                to_init.extend(layout.xor_cols(slot, comp, 1))
                to_init.append(layout.m_col(slot, comp))
            to_init.append(layout.edits_col(base))
        exec_init(xb, to_init)

        for slot, base in enumerate(group):
            m_cols = []
            for comp in layout.comparisons(base):
                neighbor = base + COMPARISON_OFFSET[comp]
                xor_outs = []
                for bit in (0, 1):
                    cells = layout.xor_cols(slot, comp, bit)
                    exec_xor(
                        xb,
                        layout.query_bit_col(base, bit),
                        layout.kmer_bit_col(neighbor, bit),
                        cells[4],
                        cells[:4],
                        init=False,
                    )
                    xor_outs.append(cells[4])
                # M = 1 sii ambos bits coinciden
                exec_nor(xb, xor_outs, layout.m_col(slot, comp), init=False)
                m_cols.append(layout.m_col(slot, comp))
            exec_nor(xb, m_cols, layout.edits_col(base), init=False)


def read_edits(xb: CrossbarState, row: int) -> np.ndarray:
    return xb.cells[row, xb.layout.edits_cols.start:xb.layout.edits_cols.stop].copy()


def sa_count_and_compare(xb: CrossbarState, row: int, sa: SaModel,
                         rng: Optional[np.random.Generator] = None) -> bool:
    """Cuenta los '1' del Edits Vector de la fila y decide hit con el SaModel."""
    return is_hit(int(read_edits(xb, row).sum()), sa, rng)


def sa_read_count(rows: int, num_sas: int) -> int:
    if num_sas not in VALID_NUM_SAS:
        raise ConfigError(f"num_sas debe ser uno de {VALID_NUM_SAS}, recibió {num_sas}")
    return math.ceil(rows / num_sas)


def run_search_program(
    xb: CrossbarState,
    query: Sequence,
    sa: SaModel,
    num_sas: int = 32,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, SearchStats]:
    """
    Búsqueda completa de una query sobre un crossbar ya cargado.

    Returns:
        (hits, stats): hits es bool por fila (False en filas vacías)

    Raises:
        EmptyCrossbar: sin filas pobladas
        LengthError: query de largo distinto a k
        ConfigError: num_sas inválido
    """
    if xb.populated == 0:
        raise EmptyCrossbar("El crossbar no tiene k-mers cargados")
    sa_reads = sa_read_count(xb.rows, num_sas)
    rng = rng if rng is not None else sa.rng

    writes_before = xb.snapshot_writes()
    cycles_before = xb.cycle_counter

    write_query(xb, query)
    magic_start = xb.cycle_counter
    build_edits_vectors(xb)
    magic_cycles = xb.cycle_counter - magic_start

    # Los SAs leen num_sas filas por vez, en orden ascendente de fila.
    hits = np.zeros(xb.rows, dtype=bool)
    for read in range(sa_reads):
        for row in range(read * num_sas, min((read + 1) * num_sas, xb.rows)):
            if xb.active_rows[row]:
                hits[row] = sa_count_and_compare(xb, row, sa, rng)

    delta = (xb.snapshot_writes() - writes_before)[:, xb.active_rows]
    writes = int(delta.sum())
    active = xb.populated
    writes_per_row = writes / active
    driven = int((delta[:, 0] > 0).sum())
    stats = SearchStats(
        cycles=xb.cycle_counter - cycles_before,
        magic_cycles=magic_cycles,
        sa_reads=sa_reads,
        active_rows=active,
        writes=writes,
        writes_per_row=writes_per_row,
        driven_cells_per_row=driven,
        writes_per_driven_cell=writes_per_row / driven if driven else 0.0,
        writes_per_cell=writes_per_row / xb.columns,
    )
    logger.debug(f"Search done: {int(hits.sum())} hits, {stats.cycles} cycles, {writes} writes")
    return hits, stats
