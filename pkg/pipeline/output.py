"""
Salidas del pipeline: TSV por read y resumen JSON.
"""
from pathlib import Path
from typing import Iterable, Union

from database.models import DatabaseLayout
from pipeline.models import ClassificationResult, DetectionResult
from utils.helpers import write_tsv

UNCLASSIFIED = "unclassified"


def format_hits(result: ClassificationResult) -> str:
    if not result.per_species_hits:
        return "-"
    return ",".join(f"{s}:{n}" for s, n in sorted(result.per_species_hits.items()))


def write_classifications(results: Iterable[ClassificationResult], path: Union[str, Path],
                          layout: DatabaseLayout = None) -> Path:
    """Una línea por read: read_id, especie asignada, nombre, hits por especie."""
    def rows():
        for r in results:
            assigned = UNCLASSIFIED if r.assigned_species is None else r.assigned_species
            name = layout.species_name(r.assigned_species) if layout is not None else ""
            yield (r.read_id, assigned, name, format_hits(r))

    return write_tsv(path, ["read_id", "assigned_species", "species_name", "hits"], rows())


def write_detections(results: Iterable[DetectionResult], path: Union[str, Path]) -> Path:
    return write_tsv(
        path,
        ["read_id", "target_species", "detected"],
        ((r.read_id, r.target_species, int(r.detected)) for r in results),
    )
