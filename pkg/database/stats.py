"""
Estadísticas del layout y reporte legible.
"""
from pathlib import Path
from typing import Dict, Union

from pydantic import BaseModel, Field

from database.models import DatabaseLayout
from utils.helpers import ensure_parent

DEFAULT_CROSSBARS_PER_CHIP = 1 << 20      # chip de 8 GB


class LayoutStats(BaseModel):
    k: int
    crossbar_rows: int
    species: int
    kmers: int
    crossbars: int
    histograms: int = Field(description="Claves de histograma distintas")
    utilization: float
    chips_required: int
    kmers_per_species: Dict[int, int]


def layout_stats(layout: DatabaseLayout, crossbars_per_chip: int = DEFAULT_CROSSBARS_PER_CHIP) -> LayoutStats:
    per_species: Dict[int, int] = {}
    for xb in layout.crossbars:
        per_species[xb.species_id] = per_species.get(xb.species_id, 0) + xb.rows
    return LayoutStats(
        k=layout.k,
        crossbar_rows=layout.crossbar_rows,
        species=len(per_species),
        kmers=layout.total_kmers,
        crossbars=layout.crossbar_count,
        histograms=len(layout.placements),
        utilization=layout.utilization,
        chips_required=layout.chips_required(crossbars_per_chip),
        kmers_per_species=dict(sorted(per_species.items())),
    )


def write_layout_report(stats: LayoutStats, path: Union[str, Path],
                        names: Dict[int, str] = None) -> Path:
    names = names or {}
    path = ensure_parent(path)
    lines = [
        "=" * 60,
        "DATABASE LAYOUT",
        "=" * 60,
        f"k:                 {stats.k}",
        f"rows per crossbar: {stats.crossbar_rows}",
        f"species:           {stats.species}",
        f"k-mers:            {stats.kmers}",
        f"crossbars:         {stats.crossbars}",
        f"histograms:        {stats.histograms}",
        f"utilization:       {stats.utilization:.2%}",
        f"chips required:    {stats.chips_required}",
        "",
        "k-mers per species:",
    ]
    for species_id, count in stats.kmers_per_species.items():
        lines.append(f"  {species_id:>4}  {names.get(species_id, ''):<30} {count}")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    return path
