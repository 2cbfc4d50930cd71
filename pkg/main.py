# -----------------------------------------------------------------------------
# CLI principal
# Subcomandos: build-db, gen-reads, classify, detect, bench, sweep.
# Todos comparten los flags de RunConfig y el archivo key=value de --config.
# -----------------------------------------------------------------------------

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config.settings import VALID_NUM_SAS, Backend, Config, RunConfig, SaMode
from crossbar.search_program import load_kmers, run_search_program, sa_read_count
from crossbar.state import CrossbarState
from database.builder import build_layout
from database.models import DatabaseLayout
from database.stats import layout_stats, write_layout_report
from database.storage import load_layout, persist_layout
from filtering.batching import plan_batches
from filtering.tracing_table import TracingTable, build_tracing_table, load_tracing_table, save_tracing_table
from matcher.sense_amp import build_sa_model
from perf.model import PerfConstants, build_report, reduction_from_pass_fraction
from pipeline.backends import GateLevelBackend, make_backend
from pipeline.classifier import classify_reads, detect_reads
from pipeline.metrics import compute_detection_metrics, compute_metrics, filter_pass_fraction
from pipeline.output import write_classifications, write_detections
from readgen.profiles import get_profile
from readgen.simulator import generate_sample, random_genome, read_reads_fasta, write_reads_fasta
from seq.fasta import parse_fasta
from seq.models import Sequence
from utils.errors import EXIT_OK, EXIT_USAGE, ConfigError, handle_error
from utils.helpers import ensure_dir, write_json, write_tsv
from utils.logger import setup_logger

logger = setup_logger(__name__)

LAYOUT_FILE = "layout.npz"
TABLE_FILE = "tracing_table.cltt"
# Queries usadas para estimar la fracción que pasa el filtro
PASS_SAMPLE = 1000


class CliParser(argparse.ArgumentParser):
    """argparse con exit 1 para errores de uso."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# ════════════════════════════════════════════════════════════════════════
# ARGUMENTOS
# ════════════════════════════════════════════════════════════════════════

def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="Archivo key=value con la configuración de la corrida")
    p.add_argument("--k", type=int)
    p.add_argument("--eth", type=int, help="Umbral de edit distance")
    p.add_argument("--threshold", type=int, dest="sa_threshold", help="Umbral del SA (default: eth)")
    p.add_argument("--num-sas", type=int, choices=VALID_NUM_SAS)
    p.add_argument("--sa-mode", choices=[m.value for m in SaMode])
    p.add_argument("--backend", choices=[b.value for b in Backend])
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--examine-limit", type=int)
    p.add_argument("--out", type=Path, help="Directorio de salida")
    p.add_argument("--no-filter", dest="use_filter", action="store_const", const=False,
                   help="Full scan sin filtro de conteo de bases")
    p.add_argument("--stride", type=int)
    p.add_argument("--dedup", action="store_const", const=True)
    p.add_argument("--genomes", type=Path, help="FASTA de genomas de referencia")
    p.add_argument("--off-target", type=Path, help="FASTA de genomas fuera de la base (gen-reads)")
    p.add_argument("--reads", type=Path, help="FASTA de reads")
    p.add_argument("--layout", type=Path)
    p.add_argument("--table", type=Path)
    p.add_argument("--confidence-table", type=Path)
    p.add_argument("--reads-per-genome", type=int)
    p.add_argument("--read-len", type=int)
    p.add_argument("--profile", choices=["low", "high", "zero"])
    p.add_argument("--target-species", type=int)
    p.add_argument("--eth-max", type=int)
    p.add_argument("--progress", action="store_true", help="Barra de progreso")
    return p


def build_parser() -> CliParser:
    parser = CliParser(prog="pimclass", description="Clasificador metagenómico con simulación PIM")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()
    sub.add_parser("build-db", parents=[common], help="Construye layout + tracing table")
    sub.add_parser("gen-reads", parents=[common], help="Genera una muestra sintética")
    sub.add_parser("classify", parents=[common], help="Clasifica reads")
    sub.add_parser("detect", parents=[common], help="Detecta reads de una especie objetivo")
    sub.add_parser("bench", parents=[common], help="Barrido de performance (num_sas, filtro)")
    sub.add_parser("sweep", parents=[common], help="Calidad vs eth, con y sin filtro")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "config", "progress"}
    overrides = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    return RunConfig.from_sources(Config(), args.config, overrides)


# ════════════════════════════════════════════════════════════════════════
# HELPERS
# ════════════════════════════════════════════════════════════════════════

def _require(value: Optional[Path], flag: str) -> Path:
    if value is None:
        raise ConfigError(f"Falta {flag}")
    return value


def _load_genomes(path: Path, first_id: int = 0) -> Tuple[List[Tuple[int, Sequence]], Dict[int, str]]:
    records = parse_fasta(path)
    genomes = [(first_id + i, seq) for i, (_, seq) in enumerate(records)]
    names = {first_id + i: name for i, (name, _) in enumerate(records)}
    return genomes, names


def _layout_path(cfg: RunConfig) -> Path:
    return cfg.layout or cfg.out / LAYOUT_FILE


def _table_path(cfg: RunConfig) -> Path:
    return cfg.table or cfg.out / TABLE_FILE


def _load_table(cfg: RunConfig, layout: DatabaseLayout) -> Optional[TracingTable]:
    """Tracing table de disco si coincide en eth; si no, se construye en memoria."""
    if not cfg.use_filter:
        return None
    path = _table_path(cfg)
    if path.exists():
        table = load_tracing_table(path)
        if table.eth == cfg.eth and table.k == layout.k:
            return table
        logger.info(f"Tracing table at {path} has eth={table.eth}; rebuilding for eth={cfg.eth}")
    return build_tracing_table(layout.placements, cfg.eth, layout.k)


def _reads(cfg: RunConfig):
    records = read_reads_fasta(_require(cfg.reads, "--reads"))
    return [(rid, seq) for rid, seq, _ in records], [truth for _, _, truth in records]


def _sample_queries(reads, k: int) -> List[Sequence]:
    """Primera ventana sin posiciones enmascaradas de cada read."""
    queries = []
    for _, seq in reads[:PASS_SAMPLE]:
        if seq.length < k:
            continue
        clean = np.flatnonzero(seq.clean_windows(k))
        if clean.size:
            queries.append(seq.window(int(clean[0]), k))
    return queries


def _perf_report(cfg: RunConfig, layout: DatabaseLayout, reads, backend) -> Dict[str, Any]:
    app = Config()
    constants = PerfConstants.from_settings({**app.PERF, "rows": cfg.crossbar_rows, "columns": cfg.crossbar_columns})
    queries = _sample_queries(reads, layout.k)
    reduction = 1.0
    pass_fraction = None
    if cfg.use_filter and queries:
        pass_fraction = filter_pass_fraction(layout, queries, cfg.eth)
        if pass_fraction > 0:
            reduction = reduction_from_pass_fraction(pass_fraction)

    magic_cycles = int(app.PERF["magic_cycles"])
    sa_reads = sa_read_count(cfg.crossbar_rows, cfg.num_sas)
    writes = None
    if isinstance(backend, GateLevelBackend) and backend.tally.searches:
        magic_cycles = backend.tally.magic_cycles // backend.tally.searches
        sa_reads = math.ceil(backend.tally.sa_reads / backend.tally.searches)
        writes = backend.tally.writes_per_row

    kwargs = dict(
        num_sas=cfg.num_sas,
        magic_cycles=magic_cycles,
        sa_reads=sa_reads,
        filter_reduction=reduction,
        endurance=float(app.PERF["endurance"]),
        writes_per_cell=float(app.PERF["writes_per_cell"]),
        c=constants,
    )
    if writes is not None:
        kwargs["writes"] = writes
    report = build_report(**kwargs).model_dump()
    report["filter_pass_fraction"] = pass_fraction
    return report


# ════════════════════════════════════════════════════════════════════════
# SUBCOMANDOS
# ════════════════════════════════════════════════════════════════════════

def cmd_build_db(cfg: RunConfig) -> Dict[str, Any]:
    genomes, names = _load_genomes(_require(cfg.genomes, "--genomes"))
    layout = build_layout(genomes, cfg.k, crossbar_rows=cfg.crossbar_rows,
                          stride=cfg.stride, dedup=cfg.dedup, species_names=names)
    ensure_dir(cfg.out)
    persist_layout(layout, _layout_path(cfg))
    table = build_tracing_table(layout.placements, cfg.eth, cfg.k)
    save_tracing_table(table, _table_path(cfg))

    stats = layout_stats(layout, Config().CROSSBARS_PER_CHIP)
    write_layout_report(stats, cfg.out / "layout_stats.txt", names)
    summary = stats.model_dump()
    summary["tracing_table_bytes"] = table.memory_footprint()
    summary["tracing_table_slots"] = len(table)
    write_json(cfg.out / "layout_stats.json", summary)
    print(f"✅ {stats.kmers} k-mers en {stats.crossbars} crossbars "
          f"(utilización {stats.utilization:.1%}), tabla {table.memory_footprint() / 1e6:.2f} MB")
    return summary


def cmd_gen_reads(cfg: RunConfig) -> Path:
    genomes, _ = _load_genomes(_require(cfg.genomes, "--genomes"))
    if cfg.off_target is not None:
        extra, _ = _load_genomes(cfg.off_target, first_id=len(genomes))
        genomes += extra
    reads = generate_sample(genomes, cfg.reads_per_genome, cfg.read_len,
                            get_profile(cfg.profile), cfg.seed)
    path = cfg.reads or cfg.out / "reads.fa"
    write_reads_fasta(reads, path)
    print(f"✅ {len(reads)} reads escritos en {path}")
    return path


def cmd_classify(cfg: RunConfig, progress: bool = False) -> Dict[str, Any]:
    layout = load_layout(_layout_path(cfg))
    table = _load_table(cfg, layout)
    reads, truths = _reads(cfg)
    sa = build_sa_model(cfg.sa_mode, cfg.threshold, cfg.seed, cfg.confidence_table)
    backend = make_backend(cfg.backend, layout, cfg.num_sas, cfg.crossbar_columns)

    results = classify_reads(reads, layout, table, sa, cfg.eth, backend=backend,
                             threads=cfg.threads, progress=progress)
    ensure_dir(cfg.out)
    write_classifications(results, cfg.out / "classifications.tsv", layout)

    summary: Dict[str, Any] = {"reads": len(results), "classified": sum(r.is_classified for r in results)}
    if any(t is not None for t in truths):
        metrics = compute_metrics(zip(results, truths), set(layout.species))
        summary["metrics"] = metrics.model_dump()
        print(f"✅ sensitivity={metrics.sensitivity:.4f} precision={metrics.precision:.4f} F1={metrics.f1:.4f}")
    write_json(cfg.out / "metrics.json", summary)
    write_json(cfg.out / "perf.json", _perf_report(cfg, layout, reads, backend))
    return summary


def cmd_detect(cfg: RunConfig, progress: bool = False) -> Dict[str, Any]:
    if cfg.target_species is None:
        raise ConfigError("detect requiere --target-species")
    layout = load_layout(_layout_path(cfg))
    table = _load_table(cfg, layout)
    reads, truths = _reads(cfg)
    sa = build_sa_model(cfg.sa_mode, cfg.threshold, cfg.seed, cfg.confidence_table)
    backend = make_backend(cfg.backend, layout, cfg.num_sas, cfg.crossbar_columns)

    results = detect_reads(reads, layout, table, sa, cfg.eth, cfg.target_species,
                           backend=backend, threads=cfg.threads, progress=progress)
    ensure_dir(cfg.out)
    write_detections(results, cfg.out / "detections.tsv")

    summary: Dict[str, Any] = {"reads": len(results), "detected": sum(r.detected for r in results)}
    if any(t is not None for t in truths):
        pairs = [(r.detected, t == cfg.target_species) for r, t in zip(results, truths) if t is not None]
        metrics = compute_detection_metrics(pairs)
        summary["metrics"] = metrics.model_dump()
        print(f"✅ sensitivity={metrics.sensitivity:.4f} precision={metrics.precision:.4f} F1={metrics.f1:.4f}")
    write_json(cfg.out / "metrics.json", summary)
    return summary


def _measure_search(cfg: RunConfig, num_sas: int) -> Tuple[int, float, int, int]:
    """Una búsqueda gate-level sobre un crossbar lleno de k-mers aleatorios."""
    rng = np.random.default_rng(cfg.seed)
    xb = CrossbarState(rows=cfg.crossbar_rows, columns=cfg.crossbar_columns, k=cfg.k)
    load_kmers(xb, rng.integers(0, 4, (cfg.crossbar_rows, cfg.k), dtype=np.uint8))
    query = random_genome(cfg.k, seed=cfg.seed)
    sa = build_sa_model(SaMode.IDEAL, cfg.threshold, cfg.seed)
    _, stats = run_search_program(xb, query, sa, num_sas)
    return stats.magic_cycles, stats.writes_per_row, stats.driven_cells_per_row, stats.sa_reads


def cmd_bench(cfg: RunConfig, progress: bool = False) -> List[Dict[str, Any]]:
    app = Config()
    constants = PerfConstants.from_settings({**app.PERF, "rows": cfg.crossbar_rows, "columns": cfg.crossbar_columns})
    magic_cycles, writes_per_row, driven, sa_reads = _measure_search(cfg, cfg.num_sas)
    logger.info(f"Measured search: {magic_cycles} cycles, {writes_per_row:.1f} writes/row, "
                f"{driven} driven cells, {sa_reads} SA reads at num_sas={cfg.num_sas}")

    reduction = float(app.PERF["filter_reduction"])
    parallelism = 1.0
    if cfg.reads is not None:
        reads, _ = _reads(cfg)
        queries = _sample_queries(reads, cfg.k)
        if cfg.layout is not None and queries:
            fraction = filter_pass_fraction(load_layout(cfg.layout), queries, cfg.eth)
            if fraction > 0:
                reduction = reduction_from_pass_fraction(fraction)
        if queries:
            sizes = [b.size for b in plan_batches(queries, cfg.eth, cfg.examine_limit)]
            parallelism = float(np.mean(sizes))

    rows = []
    for num_sas in tqdm(VALID_NUM_SAS, desc="bench", disable=not progress):
        for use_filter in (False, True):
            report = build_report(
                num_sas=num_sas,
                magic_cycles=magic_cycles,
                writes=writes_per_row,
                sa_reads=sa_read_count(cfg.crossbar_rows, num_sas),
                batch_parallelism=parallelism if use_filter else 1.0,
                filter_reduction=reduction if use_filter else 1.0,
                endurance=float(app.PERF["endurance"]),
                writes_per_cell=float(app.PERF["writes_per_cell"]),
                c=constants,
            ).model_dump()
            report["filter"] = use_filter
            report["measured_writes_per_driven_cell"] = writes_per_row / driven
            rows.append(report)

    ensure_dir(cfg.out)
    columns = ["num_sas", "filter", "search_latency_us", "throughput_gbases_per_min",
               "energy_per_search_pj", "dynamic_power_uw", "area_efficiency",
               "lifetime_searches", "area_overhead_fraction"]
    write_tsv(cfg.out / "bench.csv", columns, ([r[c] for c in columns] for r in rows), sep=",")
    write_json(cfg.out / "bench.json", rows)
    print(f"✅ bench: {len(rows)} configuraciones en {cfg.out / 'bench.csv'}")
    return rows


def cmd_sweep(cfg: RunConfig, progress: bool = False) -> List[Dict[str, Any]]:
    layout = load_layout(_layout_path(cfg))
    reads, truths = _reads(cfg)
    backend = make_backend(cfg.backend, layout, cfg.num_sas, cfg.crossbar_columns)
    in_database = set(layout.species)

    rows = []
    for eth in range(cfg.eth_max + 1):
        threshold = eth if cfg.sa_threshold is None else cfg.sa_threshold
        sa = build_sa_model(cfg.sa_mode, threshold, cfg.seed, cfg.confidence_table)
        table = build_tracing_table(layout.placements, eth, layout.k)
        for use_filter in (True, False):
            results = classify_reads(reads, layout, table if use_filter else None, sa, eth,
                                     backend=backend, threads=cfg.threads, progress=progress)
            m = compute_metrics(zip(results, truths), in_database)
            rows.append((eth, int(use_filter), m.tp, m.fp, m.fn,
                         f"{m.sensitivity:.6f}", f"{m.precision:.6f}", f"{m.f1:.6f}"))
            logger.info(f"eth={eth} filter={use_filter}: F1={m.f1:.4f}")

    path = write_tsv(cfg.out / "sweep.csv",
                     ["eth", "filter", "tp", "fp", "fn", "sensitivity", "precision", "f1"], rows, sep=",")
    print(f"✅ sweep eth=0..{cfg.eth_max} en {path}")
    return [dict(zip(["eth", "filter", "tp", "fp", "fn", "sensitivity", "precision", "f1"], r)) for r in rows]


COMMANDS = {
    "build-db": lambda cfg, progress: cmd_build_db(cfg),
    "gen-reads": lambda cfg, progress: cmd_gen_reads(cfg),
    "classify": cmd_classify,
    "detect": cmd_detect,
    "bench": cmd_bench,
    "sweep": cmd_sweep,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = run_config_from_args(args)
        logger.info(f"Running '{args.command}' (k={cfg.k}, eth={cfg.eth}, backend={cfg.backend.value})")
        COMMANDS[args.command](cfg, args.progress)
        return EXIT_OK
    except KeyboardInterrupt:
        print("\nInterrumpido por el usuario.", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        code, message = handle_error(e, step=args.command)
        print(f"❌ {message}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
