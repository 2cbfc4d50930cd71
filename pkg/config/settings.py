"""
Configuración con carga desde JSON (defaults) y archivos key=value (corridas)
"""
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from utils.errors import ConfigError

load_dotenv()

VALID_NUM_SAS = (1, 2, 4, 8, 16, 32, 64, 128)
# Conteos de 6 bits en la clave de histograma; k=64 usa los slots de overflow
MAX_K = 64

DEFAULT_APP_SETTINGS: Dict[str, Any] = {
    "crossbar": {
        "rows": 128,
        "columns": 512,
        "k": 64
    },
    "sense_amp": {
        "confidence_table": "data/config/sa_confidence.txt",
        "num_sas": 32
    },
    "filter": {
        "eth": 4,
        "examine_limit": 350
    },
    "perf": {
        "magic_cycle_ns": 3.0,
        "switching_energy_fj": 6.4,
        "sa_latency_ns": 36.0,
        "sa_energy_pj": 11.5,
        "cell_area_um2": 9e-4,
        "magic_cycles": 2167,
        "endurance": 1e9,
        "filter_reduction": 250.0,
        "writes_per_cell": 7.0,
        "query_write_cycles": 0
    },
    "chip": {
        "crossbars_per_chip": 1048576
    },
    "paths": {
        "output_dir": "out"
    }
}


class Config:
    """Configuración de la aplicación"""

    # ========================================
    # ATRIBUTOS DE CLASE (ESTÁTICOS)
    # ========================================
    BASE_DIR = Path(__file__).parent.parent
    DATA_DIR = BASE_DIR / "data"
    CONFIG_DIR = DATA_DIR / "config"
    LOGS_DIR = BASE_DIR / "logs"

    def __init__(self, settings_path: Optional[Path] = None):
        self.settings_path = Path(settings_path) if settings_path else Config.CONFIG_DIR / "app_settings.json"
        self._load_app_settings()

    def _load_app_settings(self):
        """Carga app_settings.json (lo crea con defaults si no existe)"""
        if not self.settings_path.exists():
            self._create_default_app_settings(self.settings_path)

        try:
            with open(self.settings_path, "r", encoding="utf-8") as f:
                loaded = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"app_settings.json corrupto: {e}") from e

        # Secciones faltantes toman el default
        self.app_settings = {
            section: {**defaults, **loaded.get(section, {})}
            for section, defaults in DEFAULT_APP_SETTINGS.items()
        }

        crossbar = self.app_settings["crossbar"]
        self.CROSSBAR_ROWS = int(crossbar["rows"])
        self.CROSSBAR_COLUMNS = int(crossbar["columns"])
        self.K = int(crossbar["k"])

        sense_amp = self.app_settings["sense_amp"]
        self.CONFIDENCE_TABLE_PATH = self._resolve(sense_amp["confidence_table"])
        self.NUM_SAS = int(sense_amp["num_sas"])

        filt = self.app_settings["filter"]
        self.ETH = int(filt["eth"])
        self.EXAMINE_LIMIT = int(filt["examine_limit"])

        self.PERF = dict(self.app_settings["perf"])
        self.CROSSBARS_PER_CHIP = int(self.app_settings["chip"]["crossbars_per_chip"])
        self.OUTPUT_DIR = self._resolve(self.app_settings["paths"]["output_dir"])

    @staticmethod
    def _resolve(path: str) -> Path:
        p = Path(path)
        return p if p.is_absolute() else Config.BASE_DIR / p

    def _create_default_app_settings(self, path: Path):
        """Crea app_settings.json por defecto"""
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(DEFAULT_APP_SETTINGS, f, indent=2, ensure_ascii=False)


# ════════════════════════════════════════════════════════════════════════
# CONFIGURACIÓN DE UNA CORRIDA
# ════════════════════════════════════════════════════════════════════════

class SaMode(str, Enum):
    IDEAL = "ideal"
    STOCHASTIC = "stochastic"


class Backend(str, Enum):
    FUNCTIONAL = "functional"
    GATE_LEVEL = "gate-level"


class RunConfig(BaseModel):
    """
    Parámetros de una corrida del CLI.

    Se arma desde tres fuentes (en orden de prioridad creciente): defaults de
    app_settings.json, archivo key=value (`--config`), flags del CLI.
    """
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    k: int = Field(default=64, ge=1, le=MAX_K, description="Longitud de k-mer")
    eth: int = Field(default=4, description="Umbral de edit distance para el filtro")
    sa_threshold: Optional[int] = Field(
        default=None,
        description="Umbral del sense amplifier; None = igual a eth"
    )
    num_sas: int = Field(default=32, description="SAs por crossbar")
    sa_mode: SaMode = Field(default=SaMode.IDEAL)
    backend: Backend = Field(default=Backend.FUNCTIONAL)
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default=1, ge=1)
    examine_limit: int = Field(default=350, ge=1)
    use_filter: bool = Field(default=True, description="False = full scan sin filtro")
    stride: int = Field(default=1, ge=1)
    dedup: bool = Field(default=False)
    crossbar_rows: int = Field(default=128, ge=1)
    crossbar_columns: int = Field(default=512, ge=1)

    reads_per_genome: int = Field(default=100, ge=1)
    read_len: int = Field(default=64, ge=1)
    profile: str = Field(default="low", description="'low' | 'high' | 'zero'")
    target_species: Optional[int] = Field(default=None)
    eth_max: int = Field(default=9, ge=0)

    genomes: Optional[Path] = None
    off_target: Optional[Path] = None
    reads: Optional[Path] = None
    layout: Optional[Path] = None
    table: Optional[Path] = None
    confidence_table: Optional[Path] = None
    out: Path = Field(default=Path("out"))

    @field_validator("eth")
    @classmethod
    def _eth_non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("eth debe ser >= 0")
        return v

    @field_validator("num_sas")
    @classmethod
    def _num_sas_valid(cls, v: int) -> int:
        if v not in VALID_NUM_SAS:
            raise ValueError(f"num_sas debe ser uno de {VALID_NUM_SAS}")
        return v

    @field_validator("profile")
    @classmethod
    def _profile_valid(cls, v: str) -> str:
        if v not in ("low", "high", "zero"):
            raise ValueError("profile debe ser 'low', 'high' o 'zero'")
        return v

    @model_validator(mode="after")
    def _threshold_default(self) -> "RunConfig":
        if self.sa_threshold is not None and self.sa_threshold < 0:
            raise ValueError("sa_threshold debe ser >= 0")
        return self

    @property
    def threshold(self) -> int:
        """Umbral efectivo del SA."""
        return self.eth if self.sa_threshold is None else self.sa_threshold

    # ────────────────────────────────────────────────────────────────────
    # CONSTRUCCIÓN DESDE FUENTES
    # ────────────────────────────────────────────────────────────────────

    @classmethod
    def defaults_from(cls, config: Config) -> Dict[str, Any]:
        return {
            "k": config.K,
            "eth": config.ETH,
            "num_sas": config.NUM_SAS,
            "examine_limit": config.EXAMINE_LIMIT,
            "crossbar_rows": config.CROSSBAR_ROWS,
            "crossbar_columns": config.CROSSBAR_COLUMNS,
            "confidence_table": config.CONFIDENCE_TABLE_PATH,
            "out": config.OUTPUT_DIR,
        }

    @classmethod
    def from_sources(
        cls,
        config: Optional[Config] = None,
        run_file: Optional[Path] = None,
        overrides: Optional[Mapping[str, Any]] = None,
    ) -> "RunConfig":
        """
        Combina defaults ← archivo key=value ← flags. Los flags ganan.

        Raises:
            ConfigError: si algún valor no valida
        """
        values: Dict[str, Any] = {}
        if config is not None:
            values.update(cls.defaults_from(config))

        if run_file is not None:
            run_file = Path(run_file)
            if not run_file.exists():
                raise ConfigError(f"Archivo de configuración no encontrado: {run_file}")
            file_values = dotenv_values(run_file)
            values.update({_normalize_key(k): v for k, v in file_values.items() if v is not None})

        if overrides:
            values.update({_normalize_key(k): v for k, v in overrides.items() if v is not None})

        unknown = set(values) - set(cls.model_fields)
        if unknown:
            raise ConfigError(f"Claves de configuración desconocidas: {sorted(unknown)}")

        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(f"Configuración inválida: {e}") from e


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")
