"""
Pipeline de clasificación / detección: filtro -> búsqueda -> hits por especie.
"""
from .backends import FunctionalBackend, GateLevelBackend, SearchTally, make_backend
from .classifier import (
    assign_species,
    classify_read,
    classify_reads,
    detect_read,
    detect_reads,
    full_scan,
    read_windows,
)
from .metrics import compute_detection_metrics, compute_metrics, filter_pass_fraction
from .models import ClassificationResult, DetectionResult, QualityMetrics
from .output import write_classifications, write_detections

__all__ = [
    "ClassificationResult",
    "DetectionResult",
    "QualityMetrics",
    "FunctionalBackend",
    "GateLevelBackend",
    "SearchTally",
    "make_backend",
    "read_windows",
    "assign_species",
    "classify_read",
    "classify_reads",
    "detect_read",
    "detect_reads",
    "full_scan",
    "compute_metrics",
    "compute_detection_metrics",
    "filter_pass_fraction",
    "write_classifications",
    "write_detections",
]
