"""
Batching de queries con vecindarios disjuntos.

Dos queries cuyos histogramas están a L1 > 4*eth no comparten ningún
histograma vecino, así que sus crossbars candidatos son disjuntos y se pueden
buscar en paralelo. Con distancia exactamente 4*eth existe un histograma
intermedio común, por eso la desigualdad es estricta.
"""
from itertools import islice
from typing import Iterable, Iterator, List, Optional, Sequence as SeqType, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from filtering.tracing_table import CrossbarRange, TracingTable, trace_query
from seq.histogram import compute_histogram
from seq.models import BaseHistogram, Sequence
from utils.errors import ConfigError
from utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_EXAMINE_LIMIT = 350


class BatchedQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0, description="Posición en el stream original")
    query: Sequence
    histogram: BaseHistogram
    ranges: Tuple[CrossbarRange, ...] = ()


class QueryBatch(BaseModel):
    """Queries admitidas (vecindarios disjuntos) y las examinadas que no entraron."""

    queries: List[BatchedQuery] = Field(default_factory=list)
    rejected: List[BatchedQuery] = Field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.queries)

    @property
    def examined(self) -> int:
        return len(self.queries) + len(self.rejected)

    def histograms(self) -> np.ndarray:
        return np.array([q.histogram.as_tuple() for q in self.queries], dtype=np.int64).reshape(-1, 4)


def _greedy(items: Iterable[Tuple[int, Sequence]], eth: int,
            table: Optional[TracingTable]) -> QueryBatch:
    admitted: List[BatchedQuery] = []
    rejected: List[BatchedQuery] = []
    admitted_hists = np.zeros((0, 4), dtype=np.int64)

    for index, query in items:
        h = compute_histogram(query)
        ranges = tuple(trace_query(table, query)) if table is not None else ()
        item = BatchedQuery(index=index, query=query, histogram=h, ranges=ranges)
        distances = np.abs(admitted_hists - h.as_array()).sum(axis=1)
        if (distances > 4 * eth).all():
            admitted.append(item)
            admitted_hists = np.vstack([admitted_hists, h.as_array()])
        else:
            rejected.append(item)
    return QueryBatch(queries=admitted, rejected=rejected)


def _check_limit(examine_limit: int) -> None:
    if examine_limit < 1:
        raise ConfigError(f"examine_limit debe ser >= 1, recibió {examine_limit}")


def batch_queries(stream: Iterable[Sequence], eth: int,
                  examine_limit: int = DEFAULT_EXAMINE_LIMIT,
                  table: Optional[TracingTable] = None) -> QueryBatch:
    """
    First-fit voraz sobre a lo sumo `examine_limit` queries del stream.

    La primera query siempre entra; las demás entran sii su histograma está a
    L1 > 4*eth de todas las ya admitidas. Con `table` se adjuntan los rangos
    trazados de cada query.
    """
    _check_limit(examine_limit)
    batch = _greedy(enumerate(islice(stream, examine_limit)), eth, table)
    logger.debug(f"Batch: {batch.size} admitted of {batch.examined} examined")
    return batch


def plan_batches(queries: SeqType[Sequence], eth: int,
                 examine_limit: int = DEFAULT_EXAMINE_LIMIT,
                 table: Optional[TracingTable] = None) -> Iterator[QueryBatch]:
    """
    Reparte todas las queries en batches sucesivos; cada query aparece en
    exactamente un batch. Las rechazadas quedan pendientes en su orden original.
    """
    _check_limit(examine_limit)
    pending = list(enumerate(queries))
    batches = 0
    while pending:
        batch = _greedy(pending[:examine_limit], eth, table)
        taken = {q.index for q in batch.queries}
        pending = [item for item in pending if item[0] not in taken]
        batches += 1
        yield batch
    logger.info(f"Planned {batches} batches for {len(queries)} queries (eth={eth})")
