"""
Perfiles de error de secuenciación.

'low' y 'high' reproducen tal cual los dos perfiles de evaluación (segunda y
tercera generación); 'zero' es el caso sin errores.
"""
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.errors import ConfigError


class ErrorProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    substitution_rate: float = Field(ge=0.0, le=1.0)
    insertion_rate: float = Field(ge=0.0, le=1.0)
    deletion_rate: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _rates_sum(self) -> "ErrorProfile":
        # == 1 solo para perfiles forzados (p.ej. sustitución en todas las bases)
        if self.total_rate > 1.0:
            raise ValueError(f"La suma de tasas debe ser <= 1, es {self.total_rate}")
        return self

    @property
    def total_rate(self) -> float:
        return self.substitution_rate + self.insertion_rate + self.deletion_rate


LOW = ErrorProfile(name="low", substitution_rate=0.036, insertion_rate=0.002, deletion_rate=0.002)
HIGH = ErrorProfile(name="high", substitution_rate=0.01, insertion_rate=0.07, deletion_rate=0.07)
ZERO = ErrorProfile(name="zero", substitution_rate=0.0, insertion_rate=0.0, deletion_rate=0.0)

PROFILES: Dict[str, ErrorProfile] = {p.name: p for p in (LOW, HIGH, ZERO)}


def builtin_profiles() -> Tuple[ErrorProfile, ErrorProfile]:
    """(low, high)"""
    return LOW, HIGH


def get_profile(name: str) -> ErrorProfile:
    try:
        return PROFILES[name]
    except KeyError as e:
        raise ConfigError(f"Perfil de error desconocido: {name!r} (válidos: {sorted(PROFILES)})") from e
