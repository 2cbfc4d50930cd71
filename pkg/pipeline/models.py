"""
Modelos de resultado del pipeline.
"""
from typing import Dict, Optional

from pydantic import BaseModel, Field, model_validator


class ClassificationResult(BaseModel):
    """Especie asignada a un read y los hits por especie que la justifican."""

    read_id: str
    assigned_species: Optional[int] = Field(default=None, description="None = unclassified")
    per_species_hits: Dict[int, int] = Field(default_factory=dict, description="Solo especies con hits")
    kmers: int = Field(default=0, ge=0, description="k-mers del read consultados")
    crossbars_searched: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _assignment_is_argmax(self) -> "ClassificationResult":
        best = max(self.per_species_hits.values(), default=0)
        if best == 0 and self.assigned_species is not None:
            raise ValueError("Read sin hits no puede tener especie asignada")
        if best > 0 and self.per_species_hits.get(self.assigned_species) != best:
            raise ValueError("assigned_species debe maximizar per_species_hits")
        return self

    @property
    def is_classified(self) -> bool:
        return self.assigned_species is not None


class DetectionResult(BaseModel):
    read_id: str
    target_species: int
    detected: bool


class QualityMetrics(BaseModel):
    tp: int = Field(ge=0)
    fp: int = Field(ge=0)
    fn: int = Field(ge=0)
    sensitivity: float = Field(ge=0.0, le=1.0)
    precision: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "QualityMetrics":
        sensitivity = _ratio(tp, tp + fn)
        precision = _ratio(tp, tp + fp)
        f1 = _ratio(2 * sensitivity * precision, sensitivity + precision)
        return cls(tp=tp, fp=fp, fn=fn, sensitivity=sensitivity, precision=precision, f1=f1)


def _ratio(num: float, den: float) -> float:
    # 0/0 -> 0.0
    return num / den if den else 0.0
