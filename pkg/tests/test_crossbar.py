# ════════════════════════════════════════════════════════════
# PRUEBAS DEL SIMULADOR DE CROSSBAR (MAGIC)
# ════════════════════════════════════════════════════════════

import numpy as np
import pytest

try:
    from crossbar.gates import exec_init, exec_nor, exec_xor
    from crossbar.layout import CELLS_PER_BASE, ColumnLayout
    from crossbar.search_program import (
        build_edits_vectors,
        load_kmers,
        read_edits,
        run_search_program,
        sa_read_count,
        write_query,
    )
    from crossbar.state import CrossbarState
    from matcher.neighbor import edits_matrix, match_query_against_rows
    from seq.models import KMerRecord, Sequence
    from utils.errors import CapacityError, ConfigError, EmptyCrossbar, LayoutError, LengthError
except ImportError as e:
    pytest.exit(f"Error al importar el simulador de crossbar: {e}", 1)

from tests.conftest import ideal_sa, random_sequence


def _set_inputs(xb: CrossbarState, cols, values):
    """Escribe patrones por fila en columnas de entrada."""
    for col, vals in zip(cols, values):
        xb.drive(col, np.array(vals, dtype=bool))


def _loaded_crossbar(n: int = 128, k: int = 64, columns: int = 512, seed: int = 0, trace: bool = False):
    xb = CrossbarState(rows=128, columns=columns, k=k, trace=trace)
    rows = np.random.default_rng(seed).integers(0, 4, (n, k), dtype=np.uint8)
    load_kmers(xb, rows)
    return xb, rows


# ════════════════════════════════════════════════════════════
# COMPUERTAS
# ════════════════════════════════════════════════════════════

class TestCompuertas:
    """Tablas de verdad evaluadas en filas paralelas."""

    @pytest.fixture
    def xb(self):
        xb = CrossbarState(rows=8, columns=512, k=64)
        xb.active_rows[:] = True
        return xb

    def test_nor_de_dos_entradas(self, xb):
        _set_inputs(xb, [0, 1], [[0, 0, 1, 1] * 2, [0, 1, 0, 1] * 2])
        exec_nor(xb, [0, 1], 2)
        assert xb.column(2)[:4].tolist() == [True, False, False, False]

    def test_nor_de_tres_entradas(self, xb):
        _set_inputs(xb, [0, 1, 2], [[0, 1, 0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0, 0, 0]])
        exec_nor(xb, [0, 1, 2], 3)
        assert xb.column(3).tolist() == [True, False, False, False, True, True, True, True]

    def test_not(self, xb):
        _set_inputs(xb, [0], [[0, 1, 0, 1, 0, 1, 0, 1]])
        exec_nor(xb, [0], 1)
        assert xb.column(1).tolist() == [True, False] * 4

    def test_nor_cuesta_dos_ciclos(self, xb):
        exec_nor(xb, [0, 1], 2)
        assert xb.cycle_counter == 2
        exec_nor(xb, [0, 1], 3, init=False)
        assert xb.cycle_counter == 3

    def test_sin_init_la_salida_solo_baja(self, xb):
        """Evaluar sobre una salida en 0 deja 0 aunque el NOR dé 1."""
        exec_nor(xb, [0], 1, init=False)
        assert not xb.column(1).any()

    def test_xor(self, xb):
        _set_inputs(xb, [0, 1], [[0, 0, 1, 1, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]])
        exec_xor(xb, 0, 1, 2, [10, 11, 12, 13])
        assert xb.column(2).tolist() == [False, True, True, False] * 2
        assert xb.cycle_counter == 6

    def test_salida_entre_entradas(self, xb):
        with pytest.raises(LayoutError):
            exec_nor(xb, [0, 1], 1)

    def test_aridad_invalida(self, xb):
        with pytest.raises(LayoutError):
            exec_nor(xb, [0, 1, 2, 3], 4)
        with pytest.raises(LayoutError):
            exec_nor(xb, [], 4)

    def test_xor_con_scratch_insuficiente(self, xb):
        with pytest.raises(LayoutError):
            exec_xor(xb, 0, 1, 2, [10, 11, 12])

    def test_xor_con_columnas_repetidas(self, xb):
        with pytest.raises(LayoutError):
            exec_xor(xb, 0, 1, 2, [10, 11, 12, 0])

    def test_init_en_un_ciclo(self, xb):
        exec_init(xb, [5, 6, 7, 8])
        assert xb.cycle_counter == 1
        assert all(xb.column(c).all() for c in (5, 6, 7, 8))


# ════════════════════════════════════════════════════════════
# LAYOUT DE COLUMNAS
# ════════════════════════════════════════════════════════════

class TestLayout:

    def test_cinco_slots_con_k64(self):
        layout = ColumnLayout(k=64, columns=512)
        assert layout.slots == 5
        assert CELLS_PER_BASE == 33
        assert len(layout.base_groups()) == 13

    def test_spans_no_se_solapan(self):
        layout = ColumnLayout(k=64, columns=512)
        used = [c for _, span in layout.spans() for c in span]
        assert len(used) == len(set(used))
        assert max(used) < 512

    def test_columnas_insuficientes(self):
        # pydantic envuelve el LayoutError del validador
        with pytest.raises(ValueError, match="no alcanzan"):
            ColumnLayout(k=64, columns=5 * 64 + 10)

    def test_bordes_omiten_vecino(self):
        layout = ColumnLayout(k=8, columns=512)
        assert len(layout.comparisons(0)) == 2
        assert len(layout.comparisons(7)) == 2
        assert len(layout.comparisons(3)) == 3


# ════════════════════════════════════════════════════════════
# PROGRAMA DE BÚSQUEDA
# ════════════════════════════════════════════════════════════

class TestCargaDeKmers:

    def test_crossbar_lleno(self):
        xb, _ = _loaded_crossbar(128)
        assert xb.populated == 128
        assert xb.utilization() == 1.0

    def test_un_kmer(self):
        xb, _ = _loaded_crossbar(1)
        assert xb.active_rows.tolist() == [True] + [False] * 127

    def test_desde_records(self):
        xb = CrossbarState(k=8)
        records = [KMerRecord(sequence=random_sequence(8, seed=i), species_id=0, source_offset=i) for i in range(3)]
        assert load_kmers(xb, records) == 3

    def test_demasiados_kmers(self):
        xb = CrossbarState(k=8)
        with pytest.raises(CapacityError):
            load_kmers(xb, np.zeros((129, 8), dtype=np.uint8))

    def test_kmer_de_otro_largo(self):
        xb = CrossbarState(k=8)
        with pytest.raises(LengthError):
            load_kmers(xb, np.zeros((2, 9), dtype=np.uint8))


class TestBusqueda:

    def test_edits_coinciden_con_el_matcher(self):
        xb, rows = _loaded_crossbar(100, seed=3)
        query = random_sequence(64, seed=4)
        write_query(xb, query)
        build_edits_vectors(xb)
        expected = edits_matrix(rows, query.codes)
        for row in range(100):
            assert read_edits(xb, row).tolist() == expected[row].tolist()

    def test_edits_con_k_chico(self):
        xb, rows = _loaded_crossbar(40, k=12, seed=5)
        query = random_sequence(12, seed=6)
        hits, _ = run_search_program(xb, query, ideal_sa(3))
        counts = edits_matrix(rows, query.codes).sum(axis=1)
        assert hits[:40].tolist() == (counts <= 3).tolist()
        assert not hits[40:].any()

    def test_copias_de_la_query(self):
        query = random_sequence(64, seed=1)
        xb = CrossbarState()
        load_kmers(xb, np.tile(query.codes, (128, 1)))
        hits, _ = run_search_program(xb, query, ideal_sa(0))
        assert hits.sum() == 128

    def test_ciclos_del_programa(self):
        xb, _ = _loaded_crossbar(128)
        _, stats = run_search_program(xb, random_sequence(64, seed=2), ideal_sa(4))
        assert stats.magic_cycles == 2167
        assert stats.cycles == 2168
        assert abs(stats.magic_cycles - 2167) / 2167 <= 0.03

    def test_escrituras_por_fila(self):
        """query 128 + edits 2*64 + 190 comparaciones * 22 escrituras."""
        xb, _ = _loaded_crossbar(128)
        _, stats = run_search_program(xb, random_sequence(64, seed=2), ideal_sa(4))
        assert stats.writes_per_row == 4436
        assert stats.writes == 4436 * 128
        assert stats.driven_cells_per_row == 357
        assert stats.writes_per_cell == pytest.approx(4436 / 512)

    def test_filas_vacias_no_se_cuentan(self):
        xb, _ = _loaded_crossbar(10)
        _, stats = run_search_program(xb, random_sequence(64, seed=2), ideal_sa(4))
        assert stats.active_rows == 10
        assert stats.writes == 4436 * 10

    @pytest.mark.parametrize("num_sas,reads", [(1, 128), (32, 4), (128, 1)])
    def test_lecturas_de_sa(self, num_sas, reads):
        xb, _ = _loaded_crossbar(128)
        _, stats = run_search_program(xb, random_sequence(64), ideal_sa(4), num_sas=num_sas)
        assert stats.sa_reads == reads

    def test_num_sas_invalido(self):
        with pytest.raises(ConfigError):
            sa_read_count(128, 3)

    def test_crossbar_vacio(self):
        with pytest.raises(EmptyCrossbar):
            run_search_program(CrossbarState(), random_sequence(64), ideal_sa(0))

    def test_query_de_otro_largo(self):
        xb, _ = _loaded_crossbar(4)
        with pytest.raises(LengthError):
            run_search_program(xb, random_sequence(63), ideal_sa(0))

    def test_traza(self, tmp_path):
        xb, _ = _loaded_crossbar(4, k=8, trace=True)
        _, stats = run_search_program(xb, random_sequence(8), ideal_sa(0))
        assert len(xb.trace) == stats.cycles
        assert xb.trace[0].split()[:2] == ["1", "WRITE"]
        ops = {line.split()[1] for line in xb.trace}
        assert ops == {"WRITE", "INIT", "NOR"}
        path = xb.dump_trace(tmp_path / "trace.txt")
        assert path.read_text(encoding="utf-8").count("\n") == stats.cycles


# ════════════════════════════════════════════════════════════
# EQUIVALENCIA CON EL MATCHER FUNCIONAL
# ════════════════════════════════════════════════════════════

def _compare_loads(loads: int, k: int, seed: int):
    """Cargas aleatorias con thresholds 0..9 rotando; cuenta desacuerdos."""
    rng = np.random.default_rng(seed)
    disagreements = 0
    for i in range(loads):
        n = int(rng.integers(1, 129))
        rows = rng.integers(0, 4, (n, k), dtype=np.uint8)
        query = Sequence.from_codes(rng.integers(0, 4, k, dtype=np.uint8))
        sa = ideal_sa(i % 10)
        xb = CrossbarState(rows=128, columns=512, k=k)
        load_kmers(xb, rows)
        hits, _ = run_search_program(xb, query, sa)
        expected = match_query_against_rows(rows, query, sa).hits
        disagreements += int((hits[:n] != expected).sum()) + int(hits[n:].sum())
    return disagreements


class TestEquivalenciaFuncional:

    @pytest.mark.parametrize("k", [8, 64])
    def test_cargas_aleatorias(self, k):
        assert _compare_loads(20, k, seed=k) == 0

    @pytest.mark.slow
    def test_diez_mil_cargas(self):
        assert _compare_loads(10_000, 16, seed=99) == 0
