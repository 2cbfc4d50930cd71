# ════════════════════════════════════════════════════════════
# PRUEBAS DEL MODELO DE PERFORMANCE
# ════════════════════════════════════════════════════════════

import pytest

try:
    from perf.model import (
        AREA_OVERHEAD,
        CALIBRATED_WRITES,
        PerfConstants,
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
    from utils.errors import ConfigError
except ImportError as e:
    pytest.exit(f"Error al importar el modelo de performance: {e}", 1)


class TestLatencia:

    @pytest.mark.parametrize("num_sas,sa_ns,total_us", [
        (1, 4608, 11.109),
        (2, 2304, 8.805),
        (4, 1152, 7.653),
        (8, 576, 7.077),
        (16, 288, 6.789),
        (32, 144, 6.645),
        (64, 72, 6.573),
        (128, 36, 6.537),
    ])
    def test_filas_de_la_tabla(self, num_sas, sa_ns, total_us):
        assert sa_step_latency_ns(num_sas) == pytest.approx(sa_ns)
        assert search_latency(num_sas, 2167) == pytest.approx(total_us, abs=1e-9)

    def test_num_sas_invalido(self):
        with pytest.raises(ConfigError):
            search_latency(0)

    def test_constantes_propias(self):
        c = PerfConstants(magic_cycle_ns=1.0, rows=64)
        assert search_latency(64, 1000, c) == pytest.approx((1000 + 36) / 1000)


class TestThroughput:

    def test_una_query(self):
        assert throughput(1, 6.645) == pytest.approx(0.578, abs=1e-3)

    def test_batch_de_29(self):
        assert throughput(29, 6.645) == pytest.approx(16.82, rel=0.01)

    def test_lineal_en_paralelismo(self):
        assert throughput(10, 6.645) == pytest.approx(10 * throughput(1, 6.645))

    @pytest.mark.parametrize("par,lat", [(0, 6.645), (1, 0), (-1, 6.645)])
    def test_entradas_invalidas(self, par, lat):
        with pytest.raises(ConfigError):
            throughput(par, lat)


class TestEnergia:

    def test_energia_calibrada(self):
        assert energy_per_search(CALIBRATED_WRITES, 1) == pytest.approx(37.87)

    def test_cero(self):
        assert energy_per_search(0, 0) == 0

    def test_reduccion_del_filtro(self):
        assert energy_per_search(1000, 1, 250) == pytest.approx(energy_per_search(1000, 1) / 250)

    def test_reduccion_invalida(self):
        with pytest.raises(ConfigError):
            energy_per_search(1000, 1, 0)

    def test_negativos(self):
        with pytest.raises(ConfigError):
            energy_per_search(-1, 1)


class TestVidaUtil:

    def test_con_filtro(self):
        assert lifetime_searches(1e9) == pytest.approx(3.571e10, rel=1e-3)

    def test_trivial(self):
        assert lifetime_searches(7, 1, 7) == 1

    def test_invalido(self):
        with pytest.raises(ConfigError):
            lifetime_searches(0)


class TestAreaYDensidad:

    def test_densidad(self):
        assert density() == pytest.approx(1 / (512 * 9e-4))
        assert density() == pytest.approx(2.17, abs=0.01)

    def test_overhead_tabulado(self):
        assert area_overhead(32) == AREA_OVERHEAD[32]
        with pytest.raises(ConfigError):
            area_overhead(3)

    def test_reduccion_desde_fraccion(self):
        assert reduction_from_pass_fraction(0.004) == pytest.approx(250)
        with pytest.raises(ConfigError):
            reduction_from_pass_fraction(0)


class TestReporte:

    def test_reporte_por_defecto(self):
        report = build_report()
        assert report.search_latency_us == pytest.approx(6.645)
        assert report.energy_per_search_pj == pytest.approx(37.87)
        assert report.dynamic_power_uw == pytest.approx(37.87 / 6.645)
        assert report.area_efficiency == pytest.approx(report.throughput_gbases_per_min * report.density_kmers_per_um2)

    def test_filtro_divide_energia_y_multiplica_vida(self):
        base = build_report(filter_reduction=1.0)
        filtered = build_report(filter_reduction=250.0, batch_parallelism=29)
        assert filtered.energy_per_search_pj == pytest.approx(base.energy_per_search_pj / 250)
        assert filtered.lifetime_searches == pytest.approx(base.lifetime_searches * 250)
        assert filtered.throughput_gbases_per_min == pytest.approx(29 * base.throughput_gbases_per_min)

    def test_from_settings_ignora_claves_extra(self):
        c = PerfConstants.from_settings({"magic_cycle_ns": 2.0, "endurance": 1e9, "magic_cycles": 2167})
        assert c.magic_cycle_ns == 2.0
        assert c.sa_energy_pj == 11.5
