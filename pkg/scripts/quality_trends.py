"""
Tendencias de calidad de clasificación sobre un benchmark sintético:
4 genomas objetivo en la base + 4 genomas fuera de la base, perfiles low/high.

Verifica:
  a) sensitivity no decrece con eth (SA ideal, threshold = eth)
  b) en el perfil high, el F1 del mejor eth supera al de match exacto (eth=0)
  c) en cada eth, precision con filtro >= precision sin filtro
"""
import argparse
import sys
from pathlib import Path
from typing import Dict, List

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from tqdm import tqdm

from config.settings import SaMode
from database.builder import build_layout
from filtering.tracing_table import build_tracing_table
from matcher.sense_amp import build_sa_model
from pipeline.classifier import classify_reads
from pipeline.metrics import compute_metrics
from readgen.profiles import builtin_profiles
from readgen.simulator import generate_sample, random_genome
from utils.helpers import write_tsv
from utils.logger import setup_logger

logger = setup_logger(__name__)

TARGETS = 4
OFF_TARGETS = 4
COLUMNS = ["profile", "eth", "filter", "tp", "fp", "fn", "sensitivity", "precision", "f1"]


def run_trends(genome_len: int, k: int, reads_per_genome: int, eth_max: int, seed: int,
               threads: int) -> List[Dict]:
    genomes = [(sid, random_genome(genome_len, seed=seed + sid, drift=0.3))
               for sid in range(TARGETS + OFF_TARGETS)]
    layout = build_layout(genomes[:TARGETS], k)
    in_database = set(layout.species)
    logger.info(f"Layout: {layout.crossbar_count} crossbars, {layout.total_kmers} k-mers")

    rows = []
    for profile in builtin_profiles():
        sample = generate_sample(genomes, reads_per_genome, read_len=k, profile=profile, seed=seed)
        reads = [(r.read_id, r.sequence) for r in sample]
        truths = [r.truth_species for r in sample]
        for eth in tqdm(range(eth_max + 1), desc=profile.name):
            sa = build_sa_model(SaMode.IDEAL, eth, seed)
            table = build_tracing_table(layout.placements, eth, k)
            for use_filter in (True, False):
                results = classify_reads(reads, layout, table if use_filter else None, sa, eth,
                                         threads=threads)
                m = compute_metrics(zip(results, truths), in_database)
                rows.append({
                    "profile": profile.name, "eth": eth, "filter": use_filter,
                    "tp": m.tp, "fp": m.fp, "fn": m.fn,
                    "sensitivity": m.sensitivity, "precision": m.precision, "f1": m.f1,
                })
    return rows


def check_trends(rows: List[Dict]) -> Dict[str, bool]:
    checks = {}
    for profile in sorted({r["profile"] for r in rows}):
        filtered = sorted((r for r in rows if r["profile"] == profile and r["filter"]),
                          key=lambda r: r["eth"])
        unfiltered = {r["eth"]: r for r in rows if r["profile"] == profile and not r["filter"]}

        sens = [r["sensitivity"] for r in filtered]
        checks[f"{profile}: sensitivity no decreciente"] = all(b >= a for a, b in zip(sens, sens[1:]))
        checks[f"{profile}: precision con filtro >= sin filtro"] = all(
            r["precision"] >= unfiltered[r["eth"]]["precision"] for r in filtered
        )
        if profile == "high":
            best = max(r["f1"] for r in filtered)
            checks["high: F1 aproximado > F1 exacto"] = best > filtered[0]["f1"]
    return checks


def main():
    parser = argparse.ArgumentParser(description="Tendencias de calidad vs eth")
    parser.add_argument("--genome-len", type=int, default=30_000)
    parser.add_argument("--k", type=int, default=64)
    parser.add_argument("--reads-per-genome", type=int, default=250,
                        help="Reads por genoma y perfil (8 genomas)")
    parser.add_argument("--eth-max", type=int, default=9)
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", type=Path, default=Path("out/quality_trends.csv"))
    args = parser.parse_args()

    rows = run_trends(args.genome_len, args.k, args.reads_per_genome, args.eth_max, args.seed, args.threads)
    write_tsv(args.out, COLUMNS,
              [(r["profile"], r["eth"], int(r["filter"]), r["tp"], r["fp"], r["fn"],
                f"{r['sensitivity']:.6f}", f"{r['precision']:.6f}", f"{r['f1']:.6f}") for r in rows],
              sep=",")

    checks = check_trends(rows)
    for name, ok in checks.items():
        print(f"{'✅' if ok else '❌'} {name}")
    sys.exit(0 if all(checks.values()) else 1)


if __name__ == "__main__":
    main()
