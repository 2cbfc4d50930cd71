"""
Modelo analítico de latencia, throughput, energía, área y vida útil.

Las constantes de dispositivo son las de la tabla de parámetros del diseño
(ciclo MAGIC 3 ns, 6.4 fJ por switching, SA de 36 ns / 11.5 pJ, celda de
9e-4 µm²) y se pueden sobreescribir desde la sección `perf` de
app_settings.json.
"""
import math
from typing import Any, Mapping, Optional

from pydantic import BaseModel, Field

from utils.errors import ConfigError

NOMINAL_MAGIC_CYCLES = 2167
DEFAULT_ROWS = 128
DEFAULT_COLUMNS = 512
BASES_PER_QUERY = 64

# Escrituras por búsqueda con una lectura de SA que reproducen 37.87 pJ:
# (37.87 - 11.5) / 6.4e-3. El simulador mide su propio valor y se reporta al lado.
CALIBRATED_WRITES = 4120.3125

# Overhead de área de los SAs (fracción), tabulado por cantidad de SAs.
AREA_OVERHEAD = {1: 0.0, 2: 0.0, 4: 0.01, 8: 0.02, 16: 0.04, 32: 0.09, 64: 0.16, 128: 0.28}


class PerfConstants(BaseModel):
    magic_cycle_ns: float = Field(default=3.0, gt=0)
    switching_energy_fj: float = Field(default=6.4, gt=0)
    sa_latency_ns: float = Field(default=36.0, gt=0)
    sa_energy_pj: float = Field(default=11.5, gt=0)
    cell_area_um2: float = Field(default=9e-4, gt=0)
    rows: int = Field(default=DEFAULT_ROWS, gt=0)
    columns: int = Field(default=DEFAULT_COLUMNS, gt=0)

    @classmethod
    def from_settings(cls, perf: Mapping[str, Any]) -> "PerfConstants":
        """Toma solo las claves conocidas de la sección `perf`."""
        return cls(**{k: v for k, v in perf.items() if k in cls.model_fields})


class PerfReport(BaseModel):
    num_sas: int
    magic_cycles: int
    batch_parallelism: float
    filter_reduction: float
    writes_per_search: float
    sa_reads: int
    search_latency_us: float = Field(ge=0)
    throughput_gbases_per_min: float = Field(ge=0)
    energy_per_search_pj: float = Field(ge=0)
    dynamic_power_uw: float = Field(ge=0)
    density_kmers_per_um2: float = Field(ge=0)
    area_efficiency: float = Field(ge=0, description="Gbases/min por µm² de k-mer")
    lifetime_searches: float = Field(ge=0)
    area_overhead_fraction: float = Field(ge=0)


def search_latency(num_sas: int, magic_cycles: int = NOMINAL_MAGIC_CYCLES,
                   c: Optional[PerfConstants] = None) -> float:
    """
    Latencia de una búsqueda en µs: programa MAGIC + lecturas secuenciales de SA.

    Raises:
        ConfigError: num_sas < 1
    """
    c = c or PerfConstants()
    if num_sas < 1:
        raise ConfigError(f"num_sas debe ser >= 1, recibió {num_sas}")
    ns = magic_cycles * c.magic_cycle_ns + c.sa_latency_ns * math.ceil(c.rows / num_sas)
    return ns / 1000.0


def sa_step_latency_ns(num_sas: int, c: Optional[PerfConstants] = None) -> float:
    c = c or PerfConstants()
    if num_sas < 1:
        raise ConfigError(f"num_sas debe ser >= 1, recibió {num_sas}")
    return c.sa_latency_ns * math.ceil(c.rows / num_sas)


def throughput(batch_parallelism: float, latency_us: float,
               bases_per_query: int = BASES_PER_QUERY) -> float:
    """Gbases/min procesadas, lineal en la cantidad de queries en paralelo."""
    if batch_parallelism <= 0 or latency_us <= 0 or bases_per_query <= 0:
        raise ConfigError("throughput requiere entradas positivas")
    searches_per_min = 60.0 / (latency_us * 1e-6)
    return searches_per_min * bases_per_query * batch_parallelism / 1e9


def energy_per_search(writes: float, sa_reads: float, filter_reduction: float = 1.0,
                      c: Optional[PerfConstants] = None) -> float:
    """pJ por búsqueda: escrituras * energía de switching + lecturas de SA, / reducción del filtro."""
    c = c or PerfConstants()
    if writes < 0 or sa_reads < 0:
        raise ConfigError("writes y sa_reads deben ser >= 0")
    if filter_reduction <= 0:
        raise ConfigError(f"filter_reduction debe ser > 0, recibió {filter_reduction}")
    return (writes * c.switching_energy_fj * 1e-3 + sa_reads * c.sa_energy_pj) / filter_reduction


def lifetime_searches(endurance: float, filter_reduction: float = 250.0,
                      writes_per_cell: float = 7.0) -> float:
    """Búsquedas hasta agotar la endurance, con wear leveling uniforme."""
    if endurance <= 0 or filter_reduction <= 0 or writes_per_cell <= 0:
        raise ConfigError("lifetime_searches requiere entradas positivas")
    return endurance * filter_reduction / writes_per_cell


def area_overhead(num_sas: int) -> float:
    if num_sas not in AREA_OVERHEAD:
        raise ConfigError(f"Sin dato de área para num_sas={num_sas}; válidos: {sorted(AREA_OVERHEAD)}")
    return AREA_OVERHEAD[num_sas]


def density(c: Optional[PerfConstants] = None) -> float:
    """k-mers por µm²: una fila de `columns` celdas por k-mer."""
    c = c or PerfConstants()
    return 1.0 / (c.columns * c.cell_area_um2)


def reduction_from_pass_fraction(pass_fraction: float) -> float:
    """Factor de reducción del filtro a partir de la fracción de pares que pasan."""
    if not 0 < pass_fraction <= 1:
        raise ConfigError(f"pass_fraction debe estar en (0, 1], recibió {pass_fraction}")
    return 1.0 / pass_fraction


def build_report(
    num_sas: int = 32,
    magic_cycles: int = NOMINAL_MAGIC_CYCLES,
    writes: float = CALIBRATED_WRITES,
    sa_reads: int = 1,
    batch_parallelism: float = 1.0,
    filter_reduction: float = 1.0,
    endurance: float = 1e9,
    writes_per_cell: float = 7.0,
    c: Optional[PerfConstants] = None,
) -> PerfReport:
    """
    PerfReport de una configuración. `filter_reduction` divide la energía y
    multiplica la vida útil; 1.0 modela el diseño sin filtro.
    """
    c = c or PerfConstants()
    latency = search_latency(num_sas, magic_cycles, c)
    thr = throughput(batch_parallelism, latency)
    energy = energy_per_search(writes, sa_reads, filter_reduction, c)
    dens = density(c)
    return PerfReport(
        num_sas=num_sas,
        magic_cycles=magic_cycles,
        batch_parallelism=batch_parallelism,
        filter_reduction=filter_reduction,
        writes_per_search=writes,
        sa_reads=sa_reads,
        search_latency_us=latency,
        throughput_gbases_per_min=thr,
        energy_per_search_pj=energy,
        dynamic_power_uw=energy / latency,
        density_kmers_per_um2=dens,
        area_efficiency=thr * dens,
        lifetime_searches=lifetime_searches(endurance, filter_reduction, writes_per_cell),
        area_overhead_fraction=area_overhead(num_sas),
    )
