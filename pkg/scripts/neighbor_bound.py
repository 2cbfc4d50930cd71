"""
Barrido exhaustivo de histogramas vecinos: máximo de vecinos por histograma y
cota de memoria de la tracing table (k=64, eth=4 por defecto).
"""
import argparse
import sys
import time
from pathlib import Path

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from filtering.base_count import max_neighbor_count, neighbor_counts
from filtering.tracing_table import footprint_bound
from seq.histogram import count_valid_histograms
from utils.helpers import write_json
from utils.logger import setup_logger

logger = setup_logger(__name__)

EXPECTED_MAX = 309
TABLE_BOUND_MB = 90


def neighbor_bound(k: int, eth: int) -> dict:
    start = time.perf_counter()
    counts = neighbor_counts(k, eth)
    best, argmax = max_neighbor_count(k, eth)
    bound = footprint_bound(k, eth, best)
    elapsed = time.perf_counter() - start
    result = {
        "k": k,
        "eth": eth,
        "histograms": count_valid_histograms(k),
        "max_neighbors": best,
        "argmax_histogram": list(argmax.as_tuple()),
        "histograms_at_max": int((counts == best).sum()),
        "min_neighbors": int(counts.min()),
        "table_bound_bytes": bound,
        "seconds": round(elapsed, 3),
    }
    logger.info(f"k={k} eth={eth}: max {best} neighbors over {result['histograms']} histograms "
                f"({result['histograms_at_max']} attain it), table bound {bound / 1e6:.2f} MB")
    return result


def main():
    parser = argparse.ArgumentParser(description="Máximo de histogramas vecinos (barrido exhaustivo)")
    parser.add_argument("--k", type=int, default=64)
    parser.add_argument("--eth", type=int, default=4)
    parser.add_argument("--out", type=Path, help="JSON de salida")
    args = parser.parse_args()

    result = neighbor_bound(args.k, args.eth)
    if args.out:
        write_json(args.out, result)

    print(f"max neighbors: {result['max_neighbors']} (histograma {result['argmax_histogram']})")
    print(f"tracing table bound: {result['table_bound_bytes'] / 1e6:.2f} MB")
    if args.k == 64 and args.eth == 4:
        agree = result["max_neighbors"] == EXPECTED_MAX
        print(f"esperado {EXPECTED_MAX}: {'OK' if agree else 'DISCREPANCIA'}; "
              f"cota < {TABLE_BOUND_MB} MB: {'OK' if result['table_bound_bytes'] < TABLE_BOUND_MB * 1e6 else 'NO'}")
        sys.exit(0 if agree else 1)


if __name__ == "__main__":
    main()
