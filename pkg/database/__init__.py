"""
Base de datos de referencia: k-mers empaquetados en crossbars.
"""
from .builder import build_layout, extract_kmers, kmer_windows, placements_from_crossbars
from .models import CrossbarDescriptor, DatabaseLayout
from .stats import LayoutStats, layout_stats, write_layout_report
from .storage import LAYOUT_FORMAT_VERSION, load_layout, persist_layout

__all__ = [
    "CrossbarDescriptor",
    "DatabaseLayout",
    "extract_kmers",
    "kmer_windows",
    "build_layout",
    "placements_from_crossbars",
    "persist_layout",
    "load_layout",
    "LAYOUT_FORMAT_VERSION",
    "LayoutStats",
    "layout_stats",
    "write_layout_report",
]
