"""
Simulador a nivel de compuertas MAGIC de un crossbar memristivo.
"""
from .gates import exec_init, exec_nor, exec_xor
from .layout import ColumnLayout
from .search_program import (
    SearchStats,
    build_edits_vectors,
    load_kmers,
    read_edits,
    run_search_program,
    sa_count_and_compare,
    write_query,
)
from .state import CrossbarState

__all__ = [
    "ColumnLayout",
    "CrossbarState",
    "SearchStats",
    "exec_init",
    "exec_nor",
    "exec_xor",
    "load_kmers",
    "write_query",
    "build_edits_vectors",
    "read_edits",
    "run_search_program",
    "sa_count_and_compare",
]
