"""
Clasificación y detección de reads.

Por cada k-mer del read: tracing table -> crossbars candidatos -> búsqueda en
el backend -> hits por especie. La especie asignada es la de más hits (empate:
menor species_id). Sin tracing table se hace un full scan de todos los
crossbars.
"""
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence as SeqType, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from tqdm import tqdm

from database.models import DatabaseLayout
from filtering.tracing_table import TracingTable, crossbar_indices
from matcher.models import SaModel
from pipeline.backends import FunctionalBackend
from pipeline.models import ClassificationResult, DetectionResult
from seq.histogram import slot_keys, window_histograms
from seq.models import Sequence
from utils.errors import ConfigError, TooShort
from utils.logger import setup_logger

logger = setup_logger(__name__)

ReadInput = Tuple[str, Sequence]


def read_windows(read: Sequence, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    k-mers del read (stride 1) y sus claves de histograma. Las ventanas que
    tocan posiciones enmascaradas se omiten, igual que al construir la base.

    Raises:
        TooShort: si |read| < k
    """
    if read.length < k:
        raise TooShort(f"Read de largo {read.length} < k={k}")
    codes = sliding_window_view(read.codes, k)
    keys = slot_keys(window_histograms(read.codes, k))
    if read.is_masked:
        clean = read.clean_windows(k)
        logger.debug(f"Read masked: {int((~clean).sum())} of {clean.size} windows skipped")
        return codes[clean], keys[clean]
    return codes, keys


def assign_species(per_species_hits: Dict[int, int]) -> Optional[int]:
    """Argmax de hits; empates al menor species_id; None si no hay hits."""
    best, best_count = None, 0
    for species_id in sorted(per_species_hits):
        if per_species_hits[species_id] > best_count:
            best, best_count = species_id, per_species_hits[species_id]
    return best


def _check_table(layout: DatabaseLayout, table: Optional[TracingTable], eth: int) -> None:
    if table is None:
        return
    if table.k != layout.k:
        raise ConfigError(f"Tracing table para k={table.k}, layout para k={layout.k}")
    if table.eth != eth:
        raise ConfigError(f"Tracing table construida con eth={table.eth}, se pidió eth={eth}")


class _Search:
    """Estado compartido de una corrida: candidatos y especies por crossbar."""

    def __init__(self, layout: DatabaseLayout, table: Optional[TracingTable], eth: int, backend=None):
        _check_table(layout, table, eth)
        self.layout = layout
        self.table = table
        self.backend = backend if backend is not None else FunctionalBackend(layout)
        self.species = layout.crossbar_species()
        self.everything = np.arange(layout.crossbar_count, dtype=np.int64)

    def candidates(self, key: int) -> np.ndarray:
        if self.table is None:
            return self.everything
        return crossbar_indices(self.table.lookup(key))

    def species_hits(self, read: Sequence, sa: SaModel, rng: np.random.Generator,
                     restrict: Optional[np.ndarray] = None,
                     stop_on_hit: bool = False) -> Tuple[Dict[int, int], int, int]:
        windows, keys = read_windows(read, self.layout.k)
        totals: Dict[int, int] = defaultdict(int)
        searched = 0
        for codes, key in zip(windows, keys):
            idx = self.candidates(int(key))
            if restrict is not None:
                idx = idx[np.isin(idx, restrict)]
            if idx.size == 0:
                continue
            searched += idx.size
            hits = self.backend.search(idx, Sequence.from_codes(codes), sa, rng)
            for species_id, count in zip(self.species[idx], hits):
                if count:
                    totals[int(species_id)] += int(count)
            if stop_on_hit and totals:
                break
        return dict(sorted(totals.items())), len(windows), searched


def classify_read(read: Sequence, layout: DatabaseLayout, table: Optional[TracingTable],
                  sa: SaModel, eth: int, backend=None, read_id: str = "read",
                  rng: Optional[np.random.Generator] = None,
                  _search: Optional[_Search] = None) -> ClassificationResult:
    """
    Raises:
        TooShort: si |read| < k
        ConfigError: tracing table incompatible con el layout o con eth
    """
    search = _search if _search is not None else _Search(layout, table, eth, backend)
    rng = rng if rng is not None else sa.rng
    hits, kmers, searched = search.species_hits(read, sa, rng)
    return ClassificationResult(
        read_id=read_id,
        assigned_species=assign_species(hits),
        per_species_hits=hits,
        kmers=kmers,
        crossbars_searched=searched,
    )


def full_scan(read: Sequence, layout: DatabaseLayout, sa: SaModel, eth: int, backend=None,
              read_id: str = "read", rng: Optional[np.random.Generator] = None) -> ClassificationResult:
    """Clasificación sin filtro: cada k-mer se busca en todos los crossbars."""
    return classify_read(read, layout, None, sa, eth, backend=backend, read_id=read_id, rng=rng)


def detect_read(read: Sequence, layout: DatabaseLayout, table: Optional[TracingTable],
                sa: SaModel, eth: int, target_species: int, backend=None,
                rng: Optional[np.random.Generator] = None,
                _search: Optional[_Search] = None) -> bool:
    """True sii algún k-mer del read tiene hit en algún crossbar de la especie objetivo."""
    search = _search if _search is not None else _Search(layout, table, eth, backend)
    rng = rng if rng is not None else sa.rng
    hits, _, _ = search.species_hits(
        read, sa, rng, restrict=layout.crossbars_of(target_species), stop_on_hit=True
    )
    return bool(hits)


def _run_pool(fn, reads: SeqType[ReadInput], threads: int, progress: bool, desc: str) -> list:
    if threads < 1:
        raise ConfigError(f"threads debe ser >= 1, recibió {threads}")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = pool.map(fn, range(len(reads)))
        return list(tqdm(results, total=len(reads), desc=desc, disable=not progress))


def classify_reads(reads: SeqType[ReadInput], layout: DatabaseLayout,
                   table: Optional[TracingTable], sa: SaModel, eth: int,
                   backend=None, threads: int = 1, progress: bool = False) -> List[ClassificationResult]:
    """
    Clasifica muchos reads en un pool de threads. El read i usa `sa.spawn(i)`,
    así la salida no depende de la cantidad de threads.
    """
    search = _Search(layout, table, eth, backend)

    def work(i: int) -> ClassificationResult:
        read_id, read = reads[i]
        read_sa = sa.spawn(i)
        return classify_read(read, layout, table, read_sa, eth, read_id=read_id,
                             rng=read_sa.rng, _search=search)

    results = _run_pool(work, reads, threads, progress, "classify")
    classified = sum(r.is_classified for r in results)
    logger.info(f"Classified {classified}/{len(results)} reads (eth={eth}, filter={table is not None})")
    return results


def detect_reads(reads: SeqType[ReadInput], layout: DatabaseLayout,
                 table: Optional[TracingTable], sa: SaModel, eth: int, target_species: int,
                 backend=None, threads: int = 1, progress: bool = False) -> List[DetectionResult]:
    search = _Search(layout, table, eth, backend)

    def work(i: int) -> DetectionResult:
        read_id, read = reads[i]
        read_sa = sa.spawn(i)
        detected = detect_read(read, layout, table, read_sa, eth, target_species,
                               rng=read_sa.rng, _search=search)
        return DetectionResult(read_id=read_id, target_species=target_species, detected=detected)

    results = _run_pool(work, reads, threads, progress, "detect")
    logger.info(f"Detected {sum(r.detected for r in results)}/{len(results)} reads of species {target_species}")
    return results
