# ════════════════════════════════════════════════════════════
# PRUEBAS DE SECUENCIAS, HISTOGRAMAS Y FASTA
# ════════════════════════════════════════════════════════════

import itertools

import numpy as np
import pytest
from pydantic import ValidationError

try:
    from seq.encoding import code_bits, decode_base, encode_base
    from seq.fasta import parse_fasta, write_fasta
    from seq.histogram import (
        OVERFLOW_BASE,
        all_histograms,
        compute_histogram,
        count_valid_histograms,
        histogram_from_slot,
        pack_histogram_key,
        slot_key,
        slot_keys,
        unpack_histogram_key,
        window_histograms,
    )
    from seq.models import Base, BaseHistogram, Sequence
    from utils.errors import InvalidBase, KeyOverflow, LengthError, ParseError
except ImportError as e:
    pytest.exit(f"Error al importar el paquete seq: {e}", 1)

from tests.conftest import random_codes, random_sequence


# ════════════════════════════════════════════════════════════
# CODIFICACIÓN
# ════════════════════════════════════════════════════════════

class TestCodificacion:
    """A=00, T=01, G=10, C=11"""

    @pytest.mark.parametrize("symbol,code", [("A", 0), ("T", 1), ("G", 2), ("C", 3), ("g", 2)])
    def test_codigos_de_2_bits(self, symbol, code):
        assert encode_base(symbol) == code
        assert decode_base(code) == Base(symbol.upper())

    @pytest.mark.parametrize("bad", ["N", "", "AC", "x"])
    def test_simbolo_invalido(self, bad):
        with pytest.raises(InvalidBase):
            encode_base(bad)

    def test_codigo_fuera_de_rango(self):
        with pytest.raises(InvalidBase):
            decode_base(4)

    def test_bits_alto_y_bajo(self):
        assert code_bits(3) == (1, 1)
        assert code_bits(2) == (1, 0)
        assert code_bits(1) == (0, 1)


class TestSequence:

    def test_from_str_es_case_insensitive(self):
        assert Sequence.from_str("acgt").bases == "ACGT"

    def test_from_str_rechaza_ambiguedad(self):
        with pytest.raises(InvalidBase):
            Sequence.from_str("ACNT")

    def test_vacia(self):
        with pytest.raises(LengthError):
            Sequence.from_str("")

    def test_codes_y_from_codes(self):
        seq = Sequence.from_str("ATGCA")
        assert seq.codes.tolist() == [0, 1, 2, 3, 0]
        assert Sequence.from_codes(seq.codes) == seq

    def test_es_inmutable(self):
        seq = Sequence.from_str("ACGT")
        with pytest.raises(ValidationError):
            seq.bases = "TTTT"

    def test_masked_span_fuera_de_rango(self):
        with pytest.raises(ValidationError):
            Sequence(bases="ACGT", masked_spans=((2, 9),))

    def test_window_conserva_spans_recortados(self):
        seq = Sequence(bases="ACGTACGTAC", masked_spans=((1, 3), (6, 9)))
        assert seq.window(2, 6).masked_spans == ((0, 1), (4, 6))
        assert seq.window(3, 3).masked_spans == ()

    def test_ventanas_limpias(self):
        seq = Sequence(bases="ACGTACGT", masked_spans=((3, 4),))
        assert seq.clean_windows(3).tolist() == [True, False, False, False, True, True]
        assert Sequence.from_str("ACGTA").clean_windows(3).tolist() == [True] * 3
        assert Sequence.from_str("AC").clean_windows(3).size == 0


# ════════════════════════════════════════════════════════════
# HISTOGRAMAS Y CLAVES
# ════════════════════════════════════════════════════════════

class TestHistogramas:

    @pytest.mark.parametrize("text,expected", [
        ("AAAA", (4, 0, 0, 0)),
        ("CAC", (1, 0, 0, 2)),
        ("ATGC", (1, 1, 1, 1)),
    ])
    def test_conteos(self, text, expected):
        assert compute_histogram(Sequence.from_str(text)).as_tuple() == expected

    def test_suma_es_k(self):
        seq = random_sequence(64, seed=3)
        assert compute_histogram(seq).k == 64

    def test_clave_de_18_bits(self):
        h = BaseHistogram.of(16, 16, 16, 16)
        key = pack_histogram_key(h)
        assert key == (16 << 12) | (16 << 6) | 16
        assert key < 1 << 18
        assert unpack_histogram_key(key, 64) == h

    def test_clave_ignora_c(self):
        assert pack_histogram_key(BaseHistogram.of(0, 0, 0, 64)) == 0

    def test_desborde_de_campo(self):
        with pytest.raises(KeyOverflow):
            pack_histogram_key(BaseHistogram.of(64, 0, 0, 0))

    @pytest.mark.parametrize("counts,offset", [
        ((64, 0, 0, 0), 0),
        ((0, 64, 0, 0), 1),
        ((0, 0, 64, 0), 2),
    ])
    def test_slots_de_overflow(self, counts, offset):
        h = BaseHistogram.of(*counts)
        assert slot_key(h) == OVERFLOW_BASE + offset
        assert histogram_from_slot(OVERFLOW_BASE + offset, 64) == h

    def test_slot_keys_vectorizado_coincide(self):
        hists = all_histograms(8)
        expected = [slot_key(BaseHistogram.of(*row)) for row in hists]
        assert slot_keys(hists).tolist() == expected

    def test_clave_inconsistente_con_k(self):
        key = pack_histogram_key(BaseHistogram.of(10, 10, 10, 0))
        with pytest.raises(LengthError):
            unpack_histogram_key(key, 20)

    def test_cantidad_de_histogramas_validos(self):
        assert count_valid_histograms(64) == 47905
        assert all_histograms(64).shape == (47905, 4)
        assert count_valid_histograms(0) == 1

    @pytest.mark.parametrize("k", [1, 5, 12, 16, 63])
    def test_pack_y_unpack_son_inversas(self, k):
        for row in all_histograms(k):
            h = BaseHistogram.of(*row)
            assert unpack_histogram_key(pack_histogram_key(h), k) == h

    @pytest.mark.parametrize("k", range(13))
    def test_cantidad_coincide_con_fuerza_bruta(self, k):
        brute = sum(
            1 for counts in itertools.product(range(k + 1), repeat=4) if sum(counts) == k
        )
        assert count_valid_histograms(k) == brute
        assert all_histograms(k).shape[0] == brute

    def test_histogramas_de_ventanas(self):
        codes = random_codes(100, seed=5)
        windows = window_histograms(codes, 16)
        assert windows.shape == (85, 4)
        for start in (0, 42, 84):
            expected = compute_histogram(Sequence.from_codes(codes[start:start + 16])).as_tuple()
            assert tuple(windows[start]) == expected

    def test_ventanas_de_secuencia_corta(self):
        assert window_histograms(random_codes(5), 16).shape == (0, 4)


# ════════════════════════════════════════════════════════════
# FASTA
# ════════════════════════════════════════════════════════════

class TestFasta:

    def test_un_registro(self, tmp_path):
        path = tmp_path / "one.fa"
        path.write_text(">x\nACGT\n", encoding="utf-8")
        records = parse_fasta(path)
        assert records == [("x", Sequence.from_str("ACGT"))]

    def test_multi_registro_con_lineas_partidas(self, tmp_path):
        path = tmp_path / "multi.fa"
        path.write_text(">a desc\nACG\nTTA\n\n>b\nggcc\n", encoding="utf-8")
        records = parse_fasta(path)
        assert [name for name, _ in records] == ["a", "b"]
        assert records[0][1].bases == "ACGTTA"
        assert records[1][1].bases == "GGCC"

    def test_ambiguedad_se_enmascara(self, tmp_path):
        path = tmp_path / "amb.fa"
        path.write_text(">x\nACNNGT\n", encoding="utf-8")
        (_, seq), = parse_fasta(path)
        assert seq.masked_spans == ((2, 4),)
        assert seq.mask_array().tolist() == [False, False, True, True, False, False]

    @pytest.mark.parametrize("content", ["", "ACGT\n>x\nAC\n", ">x\n>y\nAC\n", ">x\nAC*T\n", ">\nACGT\n"])
    def test_fasta_mal_formado(self, tmp_path, content):
        path = tmp_path / "bad.fa"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(ParseError):
            parse_fasta(path)

    def test_error_trae_numero_de_linea(self, tmp_path):
        path = tmp_path / "bad.fa"
        path.write_text(">x\nACGT\nAC?T\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            parse_fasta(path)
        assert info.value.line == 3

    def test_escritura_y_lectura(self, tmp_path):
        seq = random_sequence(150, seed=9)
        path = write_fasta([("g", seq)], tmp_path / "out" / "g.fa", line_width=60)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ">g"
        assert [len(line) for line in lines[1:]] == [60, 60, 30]
        assert parse_fasta(path) == [("g", seq)]
