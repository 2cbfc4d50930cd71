"""
Modelo analítico de performance del acelerador.
"""
from .model import (
    AREA_OVERHEAD,
    CALIBRATED_WRITES,
    NOMINAL_MAGIC_CYCLES,
    PerfConstants,
    PerfReport,
    area_overhead,
    build_report,
    density,
    energy_per_search,
    lifetime_searches,
    reduction_from_pass_fraction,
    sa_step_latency_ns,
    search_latency,
    throughput,
)

__all__ = [
    "PerfConstants",
    "PerfReport",
    "search_latency",
    "sa_step_latency_ns",
    "throughput",
    "energy_per_search",
    "lifetime_searches",
    "area_overhead",
    "density",
    "reduction_from_pass_fraction",
    "build_report",
    "AREA_OVERHEAD",
    "CALIBRATED_WRITES",
    "NOMINAL_MAGIC_CYCLES",
]
