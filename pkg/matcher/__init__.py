from .models import EditsVector, SaModel
from .neighbor import RowMatch, edit_counts, edits_matrix, edits_vector, match_query_against_rows
from .sense_amp import (
    build_sa_model,
    decide_hits,
    hit_probabilities,
    hit_probability,
    is_hit,
    load_confidence_table,
)

__all__ = [
    "EditsVector",
    "SaModel",
    "RowMatch",
    "edits_vector",
    "edits_matrix",
    "edit_counts",
    "match_query_against_rows",
    "is_hit",
    "decide_hits",
    "hit_probability",
    "hit_probabilities",
    "load_confidence_table",
    "build_sa_model",
]
