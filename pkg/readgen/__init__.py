"""
Muestras sintéticas con errores de secuenciación.
"""
from .profiles import HIGH, LOW, ZERO, ErrorProfile, builtin_profiles, get_profile
from .simulator import (
    ReadLabel,
    SyntheticRead,
    generate_sample,
    inject_errors,
    parse_read_label,
    random_genome,
    read_reads_fasta,
    write_reads_fasta,
)

__all__ = [
    "ErrorProfile",
    "LOW",
    "HIGH",
    "ZERO",
    "builtin_profiles",
    "get_profile",
    "SyntheticRead",
    "ReadLabel",
    "inject_errors",
    "generate_sample",
    "random_genome",
    "parse_read_label",
    "write_reads_fasta",
    "read_reads_fasta",
]
