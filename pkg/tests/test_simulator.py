import csv
import math

import numpy as np
import pytest

from soiltherm import (
    ConfigError,
    EnvironmentConfig,
    ForcingKind,
    ForcingProfile,
    Gas,
    Mode,
    SoilSample,
    SolverError,
    STEFAN_BOLTZMANN,
    StepSizeError,
    UnitDomainError,
    analytic_reference,
    build_grid,
    bulk_conductivity,
    net_flux,
    resolve_thermophysics,
    run_diurnal,
    sinusoidal_flux,
    sinusoidal_heater,
    skin_depth,
    step,
)
from soiltherm.simulator import Thermophysics, write_series_csv

from helpers import column_heat_content, sine_fit

SIGMA = STEFAN_BOLTZMANN

CHAMBER_ENV = EnvironmentConfig(8.0, Gas.CO2_95, Mode.CHAMBER, 297 * 60.0)
CHAMBER_SOIL = SoilSample(
    name="fine analog",
    granularity_mm=(0.7, 1.0),
    density_g_ml=1.71,
    bin_cm=(22.0, 22.0, 7.0),
    specific_heat=650.0,
)


def planetary_soil(inertia_tiu):
    return SoilSample(
        name=f"halfspace I={inertia_tiu:g}",
        granularity_mm=(3.0, 5.0),
        density_g_ml=1.43,
        bin_cm=(22.0, 22.0, 7.0),
        prescribed_inertia_tiu=inertia_tiu,
        specific_heat=650.0,
    )


def phase_diff(a, b):
    """Signed wrap of a - b into (-pi, pi]."""
    d = a - b
    return math.atan2(math.sin(d), math.cos(d))


class TestSkinDepth:
    def test_reference_value(self):
        assert skin_depth(0.1, 1.2e6, 86400.0) == pytest.approx(0.04787, abs=5e-5)

    def test_period_scaling(self):
        assert skin_depth(0.1, 1.2e6, 2 * 86400.0) == pytest.approx(
            math.sqrt(2.0) * skin_depth(0.1, 1.2e6, 86400.0), rel=1e-13
        )

    def test_domain(self):
        with pytest.raises(UnitDomainError):
            skin_depth(0.0, 1.2e6, 86400.0)
        with pytest.raises(UnitDomainError):
            skin_depth(0.1, 1.2e6, -1.0)


class TestResolveThermophysics:
    def test_prescribed_inertia_pins_conductivity(self):
        soil = planetary_soil(400.0)
        tp = resolve_thermophysics(soil, CHAMBER_ENV)
        assert tp.source == "prescribed"
        assert tp.k == pytest.approx(400.0**2 / (1430.0 * 650.0), rel=1e-13)
        assert tp.inertia == pytest.approx(400.0, rel=1e-12)

    def test_model_path_uses_environment_pressure(self):
        tp = resolve_thermophysics(CHAMBER_SOIL, CHAMBER_ENV)
        assert tp.source == "conductivity_model"
        expect = bulk_conductivity(8.0, CHAMBER_SOIL.mean_grain_mm).k_total
        assert tp.k == pytest.approx(expect, rel=1e-13)

    def test_missing_specific_heat(self):
        soil = CHAMBER_SOIL.with_(specific_heat=None)
        with pytest.raises(ConfigError, match="specific_heat"):
            resolve_thermophysics(soil, CHAMBER_ENV)


class TestForcingProfile:
    def test_sinusoid_wraps_periodically(self):
        f = sinusoidal_heater(320.0, 30.0, 1000.0)
        for t in (0.0, 123.4, 999.0):
            assert f.value_at(t + 1000.0) == pytest.approx(f.value_at(t), abs=1e-9)

    def test_from_samples_sorts(self):
        f = ForcingProfile.from_samples(
            ForcingKind.HEATER_TEMPERATURE,
            [(60.0, 310.0), (0.0, 300.0), (30.0, 305.0)],
            120.0,
        )
        assert f.times_s.tolist() == [0.0, 30.0, 60.0]
        assert f.value_at(15.0) == pytest.approx(302.5)

    def test_scalar_and_array_evaluation(self):
        f = sinusoidal_flux(400.0, 100.0, 600.0)
        v = f.value_at(np.array([0.0, 150.0]))
        assert isinstance(f.value_at(150.0), float)
        assert v.shape == (2,)
        assert v[1] == pytest.approx(500.0, rel=1e-6)

    def test_validation(self):
        with pytest.raises(ConfigError):
            ForcingProfile(
                ForcingKind.HEATER_TEMPERATURE,
                np.array([10.0, 0.0]),
                np.array([300.0, 300.0]),
                60.0,
            )
        with pytest.raises(ConfigError):
            ForcingProfile(
                ForcingKind.HEATER_TEMPERATURE,
                np.array([0.0, 10.0]),
                np.array([300.0]),
                60.0,
            )
        with pytest.raises(UnitDomainError):
            ForcingProfile(
                ForcingKind.HEATER_TEMPERATURE,
                np.array([0.0, 10.0]),
                np.array([300.0, -5.0]),
                60.0,
            )
        with pytest.raises(UnitDomainError):
            ForcingProfile(
                ForcingKind.SHORTWAVE_FLUX,
                np.array([0.0, 10.0]),
                np.array([100.0, -1.0]),
                60.0,
            )

    def test_immutable_arrays(self):
        f = sinusoidal_heater(320.0, 30.0, 1000.0)
        with pytest.raises(ValueError):
            f.values[0] = 0.0


class TestBuildGrid:
    def test_structure(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=50)
        z = grid.node_depths
        assert z[0] == 0.0
        assert np.all(np.diff(z) > 0.0)
        assert z[-1] == pytest.approx(5.0 * grid.skin_depth, rel=1e-9)
        assert z[1] == pytest.approx(grid.skin_depth / 40.0, rel=1e-6)
        assert grid.n_nodes == 50

    def test_too_few_nodes(self):
        with pytest.raises(ConfigError):
            build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=4)

    def test_halfspace_depth_floor(self):
        with pytest.raises(ConfigError):
            build_grid(CHAMBER_SOIL, CHAMBER_ENV, depth_factor=2.0)

    def test_bin_mode_spans_sample_depth(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=40, use_bin_depth=True)
        assert grid.node_depths[-1] == pytest.approx(CHAMBER_SOIL.depth_m, rel=1e-12)
        assert not grid.shallow  # 7 cm bin is deep for this skin depth

    def test_shallow_bin_warns(self):
        thin = CHAMBER_SOIL.with_(layer_thickness_m=0.01)
        with pytest.warns(UserWarning, match="skin"):
            grid = build_grid(thin, CHAMBER_ENV, nodes=40, use_bin_depth=True)
        assert grid.shallow

    def test_temperature_state_is_read_only(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=40)
        with pytest.raises(ValueError):
            grid.node_temperatures[0] = 100.0


class TestStep:
    def test_uniform_heater_temperature_is_fixed_point(self):
        grid = build_grid(
            CHAMBER_SOIL, CHAMBER_ENV, nodes=40, initial_temperature_k=320.0
        )
        out = step(grid, 320.0, 60.0, CHAMBER_ENV)
        assert np.allclose(out.node_temperatures, 320.0, atol=1e-10)

    def test_single_step_energy_balance(self):
        grid = build_grid(
            CHAMBER_SOIL,
            CHAMBER_ENV,
            nodes=40,
            use_bin_depth=True,
            initial_temperature_k=293.15,
        )
        dt = 60.0
        out = step(grid, 340.0, dt, CHAMBER_ENV, newton_tol=1e-10)
        e0 = column_heat_content(grid.node_depths, grid.rho_c, grid.node_temperatures)
        e1 = column_heat_content(out.node_depths, out.rho_c, out.node_temperatures)
        flux = net_flux(340.0, out.node_temperatures[0])
        assert e1 - e0 == pytest.approx(dt * flux, rel=1e-6)

    def test_explicit_agrees_with_implicit_at_small_dt(self):
        grid = build_grid(
            CHAMBER_SOIL, CHAMBER_ENV, nodes=30, use_bin_depth=True,
            initial_temperature_k=293.15,
        )

        def scheme_gap(dt, steps):
            a = b = grid
            for _ in range(steps):
                a = step(a, 335.0, dt, CHAMBER_ENV, scheme="implicit",
                         newton_tol=1e-9)
                b = step(b, 335.0, dt, CHAMBER_ENV, scheme="explicit")
            return float(np.max(np.abs(a.node_temperatures - b.node_temperatures)))

        # both schemes are first order; their gap shrinks with dt
        gap = scheme_gap(0.2, 150)
        assert gap < 0.05
        assert scheme_gap(0.1, 300) < 0.7 * gap

    def test_explicit_step_size_guard(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30)
        with pytest.raises(StepSizeError) as exc:
            step(grid, 335.0, 20.0, CHAMBER_ENV, scheme="explicit")
        err = exc.value
        assert err.dt == 20.0
        assert 0.0 < err.dt_max < 20.0
        assert err.suggested_dt == pytest.approx(0.9 * err.dt_max, rel=1e-12)

    def test_bad_arguments(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30)
        with pytest.raises(ConfigError):
            step(grid, 335.0, -1.0, CHAMBER_ENV)
        with pytest.raises(ConfigError):
            step(grid, 335.0, 1.0, CHAMBER_ENV, scheme="magic")


@pytest.fixture(scope="module")
def chamber_run():
    grid = build_grid(
        CHAMBER_SOIL,
        CHAMBER_ENV,
        nodes=40,
        use_bin_depth=True,
        initial_temperature_k=293.15,
    )
    forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
    result = run_diurnal(
        grid,
        forcing,
        CHAMBER_ENV,
        cycles=1,
        dt=20.0,
        record_depths=[0.03],
        newton_tol=1e-8,
    )
    return grid, forcing, result


class TestRunDiurnalChamber:
    def test_series_shapes_align(self, chamber_run):
        _, _, r = chamber_run
        n = r.times_s.size
        assert n == round(CHAMBER_ENV.period_s / 20.0) + 1
        assert r.surface_temperature_k.shape == (n,)
        assert r.net_flux_wm2.shape == (n,)
        assert set(r.subsurface_temperature_k) == {0.03}
        assert r.subsurface_temperature_k[0.03].shape == (n,)

    def test_flux_series_matches_recorded_temperatures(self, chamber_run):
        _, forcing, r = chamber_run
        heater = forcing.value_at(r.times_s)
        expect = SIGMA * heater**4 - SIGMA * r.surface_temperature_k**4
        assert np.array_equal(expect, r.net_flux_wm2)

    def test_surface_never_overshoots_heater(self, chamber_run):
        _, _, r = chamber_run
        assert np.max(r.surface_temperature_k) < 350.0
        assert np.max(r.surface_temperature_k) > 293.15  # it did heat up

    def test_subsurface_lags_and_attenuates(self, chamber_run):
        _, _, r = chamber_run
        surf = r.surface_temperature_k
        deep = r.subsurface_temperature_k[0.03]
        assert np.ptp(deep) < np.ptp(surf)
        assert np.argmax(deep) > np.argmax(surf)

    def test_energy_audit_over_cycle(self, chamber_run):
        grid, _, r = chamber_run
        dt = 20.0
        e_start = column_heat_content(
            grid.node_depths, grid.rho_c, r.cycle_snapshots[0]
        )
        e_end = column_heat_content(
            grid.node_depths, grid.rho_c, r.cycle_snapshots[-1]
        )
        # right-Riemann over recorded flux; sample 0 is the initial state
        integral = dt * float(np.sum(r.net_flux_wm2[1:]))
        exchanged = dt * float(np.sum(np.abs(r.net_flux_wm2[1:])))
        assert abs((e_end - e_start) - integral) < 1e-3 * exchanged

    def test_diagnostics_populated(self, chamber_run):
        _, _, r = chamber_run
        d = r.diagnostics
        assert d.scheme == "implicit"
        assert d.steps == round(CHAMBER_ENV.period_s / 20.0)
        assert d.newton_iterations_max >= 1
        assert d.max_residual_wm2 < 1e-3
        assert d.periodicity_error_k is None  # single cycle

    def test_snapshots_bracket_run(self, chamber_run):
        grid, _, r = chamber_run
        assert len(r.cycle_snapshots) == 2
        assert np.array_equal(r.cycle_snapshots[0], grid.node_temperatures)
        assert np.array_equal(r.cycle_snapshots[-1], r.final_temperatures)


PLANET_PERIOD_S = 300 * 60.0
PLANET_MEAN_WM2 = 420.0
PLANET_AMP_WM2 = 80.0


def planetary_run(inertia, nodes=60, dt=5.0):
    env = EnvironmentConfig(0.0, Gas.VACUUM, Mode.PLANETARY_SURFACE, PLANET_PERIOD_S)
    soil = planetary_soil(inertia)
    t_eq = (PLANET_MEAN_WM2 / SIGMA) ** 0.25
    grid = build_grid(soil, env, nodes=nodes, initial_temperature_k=t_eq)
    forcing = sinusoidal_flux(PLANET_MEAN_WM2, PLANET_AMP_WM2, PLANET_PERIOD_S)
    result = run_diurnal(
        grid,
        forcing,
        env,
        cycles=1,
        dt=dt,
        spin_up_cycles=2,
        record_depths=[grid.skin_depth],
    )
    return grid, result


@pytest.fixture(scope="module")
def halfspace_runs():
    return {i: planetary_run(i) for i in (300.0, 600.0)}


class TestRunDiurnalHalfspace:
    def test_recovers_prescribed_inertia(self, halfspace_runs):
        for inertia, (_, r) in halfspace_runs.items():
            amp_t, _ = sine_fit(r.times_s, r.surface_temperature_k, PLANET_PERIOD_S)
            amp_g, _ = sine_fit(r.times_s, r.net_flux_wm2, PLANET_PERIOD_S)
            recovered = amp_g / (amp_t * math.sqrt(2.0 * math.pi / PLANET_PERIOD_S))
            assert recovered == pytest.approx(inertia, rel=0.05)

    def test_higher_inertia_damps_response(self, halfspace_runs):
        amp = {
            i: sine_fit(r.times_s, r.surface_temperature_k, PLANET_PERIOD_S)[0]
            for i, (_, r) in halfspace_runs.items()
        }
        # the radiative term damps the flux swing at low inertia, so the
        # raw ratio sits between the no-feedback 1/2 and unity
        assert 0.5 * amp[300.0] < amp[600.0] < 0.85 * amp[300.0]

    def test_surface_lags_flux_by_eighth_cycle(self, halfspace_runs):
        _, r = halfspace_runs[300.0]
        _, ph_t = sine_fit(r.times_s, r.surface_temperature_k, PLANET_PERIOD_S)
        _, ph_g = sine_fit(r.times_s, r.net_flux_wm2, PLANET_PERIOD_S)
        assert phase_diff(ph_g, ph_t) == pytest.approx(math.pi / 4.0, abs=0.1)

    def test_skin_depth_wave_attenuation_and_lag(self, halfspace_runs):
        grid, r = halfspace_runs[300.0]
        depth_series = r.subsurface_temperature_k[grid.skin_depth]
        amp_s, ph_s = sine_fit(r.times_s, r.surface_temperature_k, PLANET_PERIOD_S)
        amp_d, ph_d = sine_fit(r.times_s, depth_series, PLANET_PERIOD_S)
        assert amp_d == pytest.approx(amp_s / math.e, rel=0.05)
        assert phase_diff(ph_s, ph_d) == pytest.approx(1.0, abs=0.1)

    def test_zero_amplitude_forcing_stays_at_equilibrium(self):
        env = EnvironmentConfig(
            0.0, Gas.VACUUM, Mode.PLANETARY_SURFACE, PLANET_PERIOD_S
        )
        t_eq = (PLANET_MEAN_WM2 / SIGMA) ** 0.25
        grid = build_grid(
            planetary_soil(400.0), env, nodes=30, initial_temperature_k=t_eq
        )
        forcing = sinusoidal_flux(PLANET_MEAN_WM2, 0.0, PLANET_PERIOD_S)
        r = run_diurnal(grid, forcing, env, cycles=1, dt=60.0)
        assert np.ptp(r.surface_temperature_k) < 1e-6
        assert np.max(np.abs(r.net_flux_wm2)) < 1e-6


class TestRunDiurnalNumerics:
    def test_refinement_converges(self):
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)

        def run(nodes, dt, record_every):
            grid = build_grid(
                CHAMBER_SOIL,
                CHAMBER_ENV,
                nodes=nodes,
                use_bin_depth=True,
                initial_temperature_k=293.15,
            )
            return run_diurnal(
                grid,
                forcing,
                CHAMBER_ENV,
                cycles=1,
                dt=dt,
                spin_up_cycles=1,
                record_every=record_every,
            )

        coarse = run(60, 4.0, 1)
        fine = run(120, 2.0, 2)
        assert np.array_equal(coarse.times_s, fine.times_s)
        amp = np.ptp(fine.surface_temperature_k)
        rms = math.sqrt(
            float(
                np.mean(
                    (coarse.surface_temperature_k - fine.surface_temperature_k) ** 2
                )
            )
        )
        assert rms < 0.005 * amp

    def test_two_cycles_report_periodicity(self):
        grid = build_grid(
            CHAMBER_SOIL, CHAMBER_ENV, nodes=30, use_bin_depth=True,
            initial_temperature_k=293.15,
        )
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
        r = run_diurnal(
            grid, forcing, CHAMBER_ENV, cycles=2, dt=30.0, spin_up_cycles=1
        )
        assert r.diagnostics.periodicity_error_k is not None
        assert r.diagnostics.periodicity_error_k < 1.0

    def test_explicit_divergence_reports_step(self):
        grid = build_grid(
            CHAMBER_SOIL, CHAMBER_ENV, nodes=24, use_bin_depth=True,
            initial_temperature_k=293.15,
        )
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
        with pytest.raises(SolverError) as exc:
            run_diurnal(
                grid,
                forcing,
                CHAMBER_ENV,
                cycles=1,
                dt=45.0,
                scheme="explicit",
                check_stability=False,
            )
        assert not isinstance(exc.value, StepSizeError)
        assert isinstance(exc.value.step, int)
        assert exc.value.step >= 0

    def test_run_level_step_size_guard(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=24, use_bin_depth=True)
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
        with pytest.raises(StepSizeError):
            run_diurnal(grid, forcing, CHAMBER_ENV, cycles=1, dt=45.0, scheme="explicit")


class TestRunDiurnalValidation:
    def test_forcing_kind_must_match_mode(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30)
        flux = sinusoidal_flux(400.0, 50.0, CHAMBER_ENV.period_s)
        with pytest.raises(ConfigError, match="mode"):
            run_diurnal(grid, flux, CHAMBER_ENV, cycles=1, dt=60.0)

    def test_forcing_period_must_match_environment(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30)
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s * 2.0)
        with pytest.raises(ConfigError, match="period"):
            run_diurnal(grid, forcing, CHAMBER_ENV, cycles=1, dt=60.0)

    def test_record_depth_outside_column(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30, use_bin_depth=True)
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
        with pytest.raises(ConfigError, match="depth"):
            run_diurnal(
                grid, forcing, CHAMBER_ENV, cycles=1, dt=60.0, record_depths=[1.0]
            )

    def test_dt_must_resolve_cycle(self):
        grid = build_grid(CHAMBER_SOIL, CHAMBER_ENV, nodes=30)
        forcing = sinusoidal_heater(320.0, 30.0, CHAMBER_ENV.period_s)
        with pytest.raises(ConfigError):
            run_diurnal(grid, forcing, CHAMBER_ENV, cycles=1, dt=CHAMBER_ENV.period_s)


class TestAnalyticReference:
    def test_surface_amplitude_example(self):
        amp, lag = analytic_reference(308.6, 268.0, 320 * 60.0)
        assert amp == pytest.approx(48.0, abs=0.05)
        assert lag == pytest.approx(math.pi / 4.0, rel=1e-12)

    def test_decay_per_skin_depth(self):
        a0, _ = analytic_reference(400.0, 100.0, 18000.0, 0.0)
        a1, lag1 = analytic_reference(400.0, 100.0, 18000.0, 1.0)
        assert a1 == pytest.approx(a0 / math.e, rel=1e-12)
        assert lag1 == pytest.approx(1.0 + math.pi / 4.0, rel=1e-12)

    def test_inertia_dampens(self):
        low, _ = analytic_reference(300.0, 100.0, 18000.0)
        high, _ = analytic_reference(600.0, 100.0, 18000.0)
        assert high == pytest.approx(low / 2.0, rel=1e-12)

    def test_domain(self):
        with pytest.raises(UnitDomainError):
            analytic_reference(0.0, 100.0, 18000.0)
        with pytest.raises(UnitDomainError):
            analytic_reference(300.0, -1.0, 18000.0)
        with pytest.raises(UnitDomainError):
            analytic_reference(300.0, 100.0, 18000.0, -0.5)


class TestSeriesCsv:
    def test_round_trip(self, chamber_run, tmp_path):
        _, _, r = chamber_run
        path = tmp_path / "series.csv"
        write_series_csv(r, path)
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == r.times_s.size
        assert set(rows[0]) == {"time_s", "T_surface_C", "T_subsurface_C@0.03", "G_Wm2"}
        k = 5
        assert float(rows[k]["time_s"]) == pytest.approx(r.times_s[k])
        assert float(rows[k]["T_surface_C"]) == pytest.approx(
            r.surface_temperature_k[k] - 273.15, abs=1e-6
        )
        assert float(rows[k]["G_Wm2"]) == pytest.approx(r.net_flux_wm2[k], abs=1e-6)


class TestThermophysics:
    def test_derived_quantities(self):
        tp = Thermophysics(k=0.04, rho=1430.0, c=650.0)
        assert tp.rho_c == pytest.approx(1430.0 * 650.0)
        assert tp.inertia == pytest.approx(math.sqrt(0.04 * 1430.0 * 650.0), rel=1e-13)
