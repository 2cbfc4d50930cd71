"""
Tipos de secuencia, codificación de bases, histogramas y FASTA.
"""
from .encoding import decode_base, encode_base
from .fasta import parse_fasta, write_fasta
from .histogram import (
    all_histograms,
    compute_histogram,
    count_valid_histograms,
    pack_histogram_key,
    slot_key,
    unpack_histogram_key,
)
from .models import Base, BaseHistogram, KMerRecord, Sequence

__all__ = [
    "Base",
    "Sequence",
    "BaseHistogram",
    "KMerRecord",
    "encode_base",
    "decode_base",
    "compute_histogram",
    "pack_histogram_key",
    "unpack_histogram_key",
    "slot_key",
    "count_valid_histograms",
    "all_histograms",
    "parse_fasta",
    "write_fasta",
]
