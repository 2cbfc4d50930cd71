# ════════════════════════════════════════════════════════════
# PRUEBAS DEL CLI (build-db → gen-reads → classify / detect)
# ════════════════════════════════════════════════════════════

import json

import pytest

try:
    from config.settings import RunConfig
    from main import build_parser, main
    from readgen.simulator import random_genome
    from seq.fasta import write_fasta
    from utils.errors import EXIT_DATA, EXIT_OK, EXIT_USAGE, ConfigError
except ImportError as e:
    pytest.exit(f"Error al importar el CLI: {e}", 1)


K = 32


@pytest.fixture
def workspace(tmp_path):
    """Genomas de dos especies, base construida y reads sin errores."""
    genomes = tmp_path / "genomes.fa"
    write_fasta([("alpha", random_genome(2000, seed=1)), ("beta", random_genome(2000, seed=2))], genomes)
    out = tmp_path / "out"
    common = ["--k", str(K), "--eth", "0", "--out", str(out)]
    assert main(["build-db", "--genomes", str(genomes), *common]) == EXIT_OK
    assert main(["gen-reads", "--genomes", str(genomes), "--profile", "zero",
                 "--reads-per-genome", "20", "--read-len", "48", *common]) == EXIT_OK
    return tmp_path, out, common


class TestFlujoCompleto:

    def test_build_db_escribe_artefactos(self, workspace):
        _, out, _ = workspace
        for name in ("layout.npz", "tracing_table.cltt", "layout_stats.txt", "layout_stats.json"):
            assert (out / name).exists()
        stats = json.loads((out / "layout_stats.json").read_text(encoding="utf-8"))
        assert stats["kmers"] == 2 * (2000 - K + 1)

    def test_gen_reads(self, workspace):
        _, out, _ = workspace
        lines = (out / "reads.fa").read_text(encoding="utf-8").splitlines()
        headers = [line for line in lines if line.startswith(">")]
        assert len(headers) == 40
        assert headers[0].startswith(">read_0|species=0|pos=")

    def test_classify_sin_errores(self, workspace):
        _, out, common = workspace
        assert main(["classify", "--reads", str(out / "reads.fa"), *common]) == EXIT_OK
        summary = json.loads((out / "metrics.json").read_text(encoding="utf-8"))
        assert summary["reads"] == 40
        assert summary["metrics"]["f1"] == 1.0
        perf = json.loads((out / "perf.json").read_text(encoding="utf-8"))
        assert perf["search_latency_us"] > 0
        rows = (out / "classifications.tsv").read_text(encoding="utf-8").splitlines()
        assert rows[1].split("\t")[2] == "alpha"

    def test_classify_determinista(self, workspace):
        _, out, common = workspace
        reads = str(out / "reads.fa")
        main(["classify", "--reads", reads, *common])
        first = (out / "classifications.tsv").read_text(encoding="utf-8")
        main(["classify", "--reads", reads, "--threads", "3", *common])
        assert (out / "classifications.tsv").read_text(encoding="utf-8") == first

    def test_detect(self, workspace):
        _, out, common = workspace
        assert main(["detect", "--reads", str(out / "reads.fa"), "--target-species", "1", *common]) == EXIT_OK
        summary = json.loads((out / "metrics.json").read_text(encoding="utf-8"))
        assert summary["detected"] == 20
        assert summary["metrics"]["f1"] == 1.0

    def test_perf_cuenta_lecturas_de_sa(self, workspace):
        _, out, common = workspace
        reads = str(out / "reads.fa")
        perf = {}
        for num_sas in (8, 128):
            assert main(["classify", "--reads", reads, "--num-sas", str(num_sas), *common]) == EXIT_OK
            perf[num_sas] = json.loads((out / "perf.json").read_text(encoding="utf-8"))
        assert perf[8]["sa_reads"] == 16
        assert perf[128]["sa_reads"] == 1
        gap = perf[8]["energy_per_search_pj"] - perf[128]["energy_per_search_pj"]
        assert gap == pytest.approx(15 * 11.5 / perf[8]["filter_reduction"])

    def test_sweep(self, workspace):
        _, out, common = workspace
        assert main(["sweep", "--reads", str(out / "reads.fa"), "--eth-max", "1", *common]) == EXIT_OK
        lines = (out / "sweep.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "eth,filter,tp,fp,fn,sensitivity,precision,f1"
        assert len(lines) == 1 + 2 * 2


class TestBench:

    def test_bench_barre_num_sas(self, tmp_path):
        assert main(["bench", "--out", str(tmp_path)]) == EXIT_OK
        rows = json.loads((tmp_path / "bench.json").read_text(encoding="utf-8"))
        assert len(rows) == 16
        by_sas = {r["num_sas"]: r for r in rows if not r["filter"]}
        assert by_sas[32]["search_latency_us"] == pytest.approx(6.645)
        assert by_sas[1]["search_latency_us"] == pytest.approx(11.109)

    def test_energia_depende_de_num_sas(self, tmp_path):
        """Cada lectura secuencial de SA suma 11.5 pJ."""
        assert main(["bench", "--out", str(tmp_path)]) == EXIT_OK
        rows = json.loads((tmp_path / "bench.json").read_text(encoding="utf-8"))
        by_sas = {r["num_sas"]: r for r in rows if not r["filter"]}
        assert by_sas[1]["sa_reads"] == 128
        assert by_sas[128]["sa_reads"] == 1
        gap = by_sas[1]["energy_per_search_pj"] - by_sas[128]["energy_per_search_pj"]
        assert gap == pytest.approx(127 * 11.5)


class TestCodigosDeSalida:

    def test_falta_genomes(self, tmp_path):
        assert main(["build-db", "--out", str(tmp_path)]) == EXIT_USAGE

    def test_detect_sin_especie_objetivo(self, workspace):
        _, out, common = workspace
        assert main(["detect", "--reads", str(out / "reads.fa"), *common]) == EXIT_USAGE

    def test_fasta_mal_formado(self, tmp_path):
        bad = tmp_path / "bad.fa"
        bad.write_text("ACGT\n>x\nACGT\n", encoding="utf-8")
        assert main(["build-db", "--genomes", str(bad), "--out", str(tmp_path)]) == EXIT_DATA

    def test_layout_inexistente(self, tmp_path):
        assert main(["classify", "--reads", str(tmp_path / "r.fa"), "--out", str(tmp_path)]) == EXIT_DATA

    def test_num_sas_invalido(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["bench", "--num-sas", "3"])
        assert exc.value.code == EXIT_USAGE

    def test_eth_negativo(self, tmp_path):
        assert main(["bench", "--eth", "-1", "--out", str(tmp_path)]) == EXIT_USAGE

    def test_k_mayor_a_64(self, tmp_path):
        assert main(["bench", "--k", "65", "--out", str(tmp_path)]) == EXIT_USAGE
        with pytest.raises(ConfigError):
            RunConfig.from_sources(None, None, {"k": 65})
        assert RunConfig.from_sources(None, None, {"k": 64}).k == 64
