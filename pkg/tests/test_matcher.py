# ════════════════════════════════════════════════════════════
# PRUEBAS DEL MATCHER (NEIGHBOR MATCHING + SENSE AMPLIFIER)
# ════════════════════════════════════════════════════════════

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

try:
    from config.settings import SaMode
    from matcher.models import EditsVector, SaModel
    from matcher.neighbor import edit_counts, edits_matrix, edits_vector, match_query_against_rows
    from matcher.sense_amp import (
        build_sa_model,
        decide_hits,
        hit_probabilities,
        hit_probability,
        is_hit,
        load_confidence_table,
    )
    from oracle.reference import brute_force_edits_vector
    from seq.models import Sequence
    from utils.errors import ConfigError, LengthError
except ImportError as e:
    pytest.exit(f"Error al importar el matcher: {e}", 1)

from tests.conftest import ideal_sa, random_codes, random_sequence, stochastic_sa


class TestEditsVector:

    def test_bits_y_conteo_deben_coincidir(self):
        with pytest.raises(ValidationError):
            EditsVector(bits=(1, 0, 1), edit_count=1)

    def test_from_bits(self):
        ev = EditsVector.from_bits([0, 1, 1, 0])
        assert ev.edit_count == 2
        assert ev.k == 4
        assert str(ev) == "0110"


class TestNeighborMatching:

    def test_identicos_sin_edits(self):
        seq = random_sequence(64, seed=1)
        assert edits_vector(seq, seq).edit_count == 0

    def test_ejemplo_aata(self):
        ev = edits_vector(Sequence.from_str("AAAA"), Sequence.from_str("AATA"))
        assert str(ev) == "0010"
        assert ev.edit_count == 1

    def test_cac_contra_aaa_no_cuenta_edits(self):
        """
        Cada A de la query coincide con alguna A vecina de "CAC": el matcher
        no ve edits aunque la edit distance real es 2.
        """
        ev = edits_vector(Sequence.from_str("CAC"), Sequence.from_str("AAA"))
        assert ev.edit_count == 0
        assert is_hit(ev, ideal_sa(1))

    def test_longitudes_distintas(self):
        with pytest.raises(LengthError):
            edits_vector(Sequence.from_str("ACGT"), Sequence.from_str("ACG"))

    def test_matriz_coincide_con_fuerza_bruta(self):
        rng = np.random.default_rng(7)
        rows = rng.integers(0, 4, (50, 20), dtype=np.uint8)
        query = random_sequence(20, seed=8)
        matrix = edits_matrix(rows, query.codes)
        for i in range(rows.shape[0]):
            expected = brute_force_edits_vector(Sequence.from_codes(rows[i]), query)
            assert matrix[i].astype(int).tolist() == expected

    def test_matriz_con_k_incompatible(self):
        with pytest.raises(LengthError):
            edits_matrix(np.zeros((3, 8), dtype=np.uint8), np.zeros(7, dtype=np.uint8))

    def test_copias_de_la_query(self):
        query = random_sequence(64, seed=2)
        rows = np.tile(query.codes, (128, 1))
        match = match_query_against_rows(rows, query, ideal_sa(0))
        assert match.hit_count == 128
        assert (match.edit_counts == 0).all()

    def test_sin_filas(self):
        match = match_query_against_rows([], random_sequence(8), ideal_sa(0))
        assert match.hit_count == 0


class TestSenseAmplifier:

    def test_escalon_ideal(self):
        sa = ideal_sa(1)
        assert is_hit(0, sa)
        assert is_hit(1, sa)
        assert not is_hit(2, sa)

    def test_decide_hits_ideal(self):
        counts = np.array([0, 3, 4, 5])
        assert decide_hits(counts, ideal_sa(4)).tolist() == [True, True, True, False]

    def test_probabilidades_desde_tabla(self, confidence_table):
        sa = stochastic_sa(2, confidence_table)
        assert hit_probability(3, sa) == 0.4
        # pares ausentes caen al escalón ideal
        assert hit_probability(0, sa) == 1.0
        assert hit_probability(9, sa) == 0.0
        assert hit_probabilities(np.array([1, 2, 3, 9]), sa).tolist() == [1.0, 0.9, 0.4, 0.0]

    def test_tabla_no_monotona_es_invalida(self):
        with pytest.raises(ValidationError):
            SaModel(mode=SaMode.STOCHASTIC, threshold=2, confidence_table={(2, 1): 0.5, (2, 2): 0.8})

    def test_probabilidad_fuera_de_rango(self):
        with pytest.raises(ValidationError):
            SaModel(mode=SaMode.STOCHASTIC, threshold=2, confidence_table={(2, 1): 1.5})

    def test_estocastico_reproducible(self, confidence_table):
        counts = np.full(1000, 3)
        a = decide_hits(counts, stochastic_sa(2, confidence_table, seed=5))
        b = decide_hits(counts, stochastic_sa(2, confidence_table, seed=5))
        assert np.array_equal(a, b)
        assert 0.3 < a.mean() < 0.5

    def test_spawn_da_streams_independientes(self, confidence_table):
        sa = stochastic_sa(2, confidence_table, seed=5)
        counts = np.full(200, 3)
        first = decide_hits(counts, sa.spawn(0), sa.spawn(0).rng)
        second = decide_hits(counts, sa.spawn(1), sa.spawn(1).rng)
        assert not np.array_equal(first, second)
        assert np.array_equal(first, decide_hits(counts, sa.spawn(0), sa.spawn(0).rng))

    def test_una_muestra_por_fila(self, confidence_table):
        """decide_hits e is_hit consumen el generador igual."""
        sa = stochastic_sa(2, confidence_table, seed=3)
        counts = random_codes(64, seed=4) + 1
        vector = decide_hits(counts, sa, np.random.default_rng(11))
        rng = np.random.default_rng(11)
        scalar = [is_hit(int(c), sa, rng) for c in counts]
        assert vector.tolist() == scalar

    def test_with_threshold(self):
        assert ideal_sa(1).with_threshold(4).threshold == 4


class TestConfidenceTable:

    def test_tabla_incluida_es_valida(self):
        table = load_confidence_table()
        assert table
        assert all(0.0 <= p <= 1.0 for p in table.values())

    def test_linea_mal_formada(self, tmp_path):
        path = tmp_path / "conf.txt"
        path.write_text("# thr count p\n1 1\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_confidence_table(path)

    def test_build_sa_model_estocastico(self, tmp_path):
        path = tmp_path / "conf.txt"
        path.write_text("2 1 1.0\n2 2 0.5\n", encoding="utf-8")
        sa = build_sa_model(SaMode.STOCHASTIC, 2, seed=1, table_path=path)
        assert sa.confidence_table == {(2, 1): 1.0, (2, 2): 0.5}
        assert sa.has_measured_series()

    def test_build_sa_model_ideal_no_lee_tabla(self, tmp_path):
        sa = build_sa_model(SaMode.IDEAL, 3, table_path=tmp_path / "missing.txt")
        assert sa.confidence_table == {}


# ════════════════════════════════════════════════════════════
# EQUIVALENCIA CON EL ORÁCULO Y PROPIEDADES
# ════════════════════════════════════════════════════════════

class TestEquivalenciaConOraculo:

    def test_exhaustivo_k4(self):
        """Los 4^4 x 4^4 pares (k-mer, query)."""
        rows = np.array(list(itertools.product(range(4), repeat=4)), dtype=np.uint8)
        texts = [Sequence.from_codes(row).bases for row in rows]
        for q, query in enumerate(texts):
            matrix = edits_matrix(rows, rows[q])
            expected = [brute_force_edits_vector(kmer, query) for kmer in texts]
            assert matrix.astype(int).tolist() == expected

    def test_pares_aleatorios_k64(self):
        self._check_random_pairs(queries=50, rows_per_query=100, seed=21)

    @pytest.mark.slow
    def test_cien_mil_pares_k64(self):
        self._check_random_pairs(queries=1000, rows_per_query=100, seed=22)

    @staticmethod
    def _check_random_pairs(queries, rows_per_query, seed):
        rng = np.random.default_rng(seed)
        for _ in range(queries):
            rows = rng.integers(0, 4, (rows_per_query, 64), dtype=np.uint8)
            query = Sequence.from_codes(rng.integers(0, 4, 64, dtype=np.uint8))
            matrix = edits_matrix(rows, query.codes)
            for row, bits in zip(rows, matrix):
                assert bits.astype(int).tolist() == brute_force_edits_vector(Sequence.from_codes(row), query)


class TestPropiedadesDelMatcher:

    def test_threshold_mayor_no_pierde_hits(self):
        rng = np.random.default_rng(31)
        for k in (8, 16, 64):
            rows = rng.integers(0, 4, (200, k), dtype=np.uint8)
            query = Sequence.from_codes(rng.integers(0, 4, k, dtype=np.uint8))
            previous = np.zeros(200, dtype=bool)
            for threshold in range(k + 1):
                hits = match_query_against_rows(rows, query, ideal_sa(threshold)).hits
                assert not (previous & ~hits).any()
                previous = hits
            assert previous.all()

    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=2, max_value=64).flatmap(lambda k: st.tuples(
        st.text("ACGT", min_size=k, max_size=k),
        st.integers(min_value=1, max_value=k - 1),
        st.sampled_from("ACGT"),
    )))
    def test_borrado_con_base_agregada(self, case):
        """Un borrado en p >= 1 más una base al final solo puede costar el bit de esa base."""
        text, p, extra = case
        kmer = Sequence.from_str(text)
        query = Sequence.from_str(text[:p] + text[p + 1:] + extra)
        ev = edits_vector(kmer, query)
        appended = brute_force_edits_vector(kmer, query)[-1]
        assert ev.edit_count <= 1 + appended
        assert ev.edit_count == appended
