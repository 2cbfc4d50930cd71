from .reference import (
    EditDistanceResult,
    brute_force_edits_vector,
    edit_distance,
    hamming_distance,
    histogram_l1,
)

__all__ = [
    "EditDistanceResult",
    "edit_distance",
    "histogram_l1",
    "hamming_distance",
    "brute_force_edits_vector",
]
