"""
Eficiencia del filtro de conteo de bases sobre un genoma >= 1 Mbase: fracción
de pares (query, k-mer) que sobreviven y su efecto en la energía por búsqueda.
"""
import argparse
import sys
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from database.builder import build_layout
from perf.model import build_report, energy_per_search, reduction_from_pass_fraction
from pipeline.metrics import filter_pass_fraction
from readgen.simulator import generate_sample, random_genome
from utils.helpers import write_json
from utils.logger import setup_logger

logger = setup_logger(__name__)


def filter_efficiency(genome_len: int, k: int, eth: int, queries: int, seed: int,
                      drift: float) -> dict:
    genome = random_genome(genome_len, seed=seed, segment_len=genome_len // 64, drift=drift)
    layout = build_layout([(0, genome)], k)
    sample = generate_sample([(0, genome)], queries, read_len=k, seed=seed + 1)
    fraction = filter_pass_fraction(layout, [r.sequence for r in sample], eth)
    reduction = reduction_from_pass_fraction(fraction)

    without = energy_per_search(4436, 1)
    with_filter = energy_per_search(4436, 1, reduction)
    report = build_report(filter_reduction=reduction)
    result = {
        "genome_len": genome_len,
        "k": k,
        "eth": eth,
        "queries": queries,
        "kmers": layout.total_kmers,
        "pass_fraction": fraction,
        "filter_reduction": reduction,
        "energy_ratio": without / with_filter,
        "energy_with_filter_pj": report.energy_per_search_pj,
    }
    logger.info(f"Pass fraction {fraction:.4%} (reduction {reduction:.1f}x) over {layout.total_kmers} k-mers")
    return result


def main():
    parser = argparse.ArgumentParser(description="Fracción de pares que pasan el filtro")
    parser.add_argument("--genome-len", type=int, default=1_000_000)
    parser.add_argument("--k", type=int, default=64)
    parser.add_argument("--eth", type=int, default=4)
    parser.add_argument("--queries", type=int, default=500)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--drift", type=float, default=0.6,
                        help="Variación de composición por segmento (0 = uniforme)")
    parser.add_argument("--out", type=Path)
    args = parser.parse_args()

    result = filter_efficiency(args.genome_len, args.k, args.eth, args.queries, args.seed, args.drift)
    if args.out:
        write_json(args.out, result)
    print(f"pass fraction: {result['pass_fraction']:.4%}  reduction: {result['filter_reduction']:.1f}x  "
          f"energy ratio: {result['energy_ratio']:.1f}")
    sys.exit(0 if result["pass_fraction"] < 0.05 else 1)


if __name__ == "__main__":
    main()
