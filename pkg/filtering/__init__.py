"""
Etapa de filtrado en CPU: filtro por conteo de bases, tracing table y batching.
"""
from .base_count import (
    base_count_pass,
    enumerate_neighbors,
    max_neighbor_count,
    neighbor_count,
    neighbor_counts,
    neighbor_offsets,
)
from .batching import BatchedQuery, QueryBatch, batch_queries, plan_batches
from .tracing_table import (
    CrossbarRange,
    TracingTable,
    build_tracing_table,
    crossbar_indices,
    footprint_bound,
    load_tracing_table,
    merge_ranges,
    save_tracing_table,
    trace_query,
)

__all__ = [
    "base_count_pass",
    "neighbor_offsets",
    "enumerate_neighbors",
    "neighbor_count",
    "neighbor_counts",
    "max_neighbor_count",
    "CrossbarRange",
    "TracingTable",
    "build_tracing_table",
    "trace_query",
    "merge_ranges",
    "crossbar_indices",
    "footprint_bound",
    "save_tracing_table",
    "load_tracing_table",
    "BatchedQuery",
    "QueryBatch",
    "batch_queries",
    "plan_batches",
]
