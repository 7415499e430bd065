import hashlib

import numpy as np
import pytest

from soiltherm import (
    DataError,
    EnvironmentConfig,
    Gas,
    Mode,
    SoilSample,
    build_grid,
    run_diurnal,
    sinusoidal_heater,
    write_estimates_csv,
)
from soiltherm.campaign import campaign_rows, write_campaign_metrics_csv
from soiltherm.imaging import RoiSeries, write_roi_series_csv
from soiltherm.report import generate_report
from soiltherm.simulator import write_series_csv


def digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


@pytest.fixture(scope="module")
def artifact_dir(tmp_path_factory):
    """A run directory holding every artifact kind the reporter knows."""
    out = tmp_path_factory.mktemp("run")
    env = EnvironmentConfig(8.0, Gas.CO2_95, Mode.CHAMBER, 297 * 60.0)
    soil = SoilSample(
        name="analog",
        granularity_mm=(0.7, 1.0),
        density_g_ml=1.71,
        bin_cm=(22.0, 22.0, 7.0),
        specific_heat=650.0,
    )
    grid = build_grid(soil, env, nodes=24, use_bin_depth=True,
                      initial_temperature_k=293.15)
    forcing = sinusoidal_heater(325.0, 25.0, env.period_s)
    r = run_diurnal(grid, forcing, env, cycles=1, dt=60.0,
                    record_depths=[0.03], record_every=5)
    write_series_csv(r, out / "series.csv")

    t = np.linspace(0.0, 17820.0, 30)
    ramp = 24.0 + 20.0 * (1.0 - np.cos(2.0 * np.pi * t / 17820.0)) / 2.0
    for name, gain, sigma in (("soil_a", 1.0, 0.2), ("soil_b", 0.9, 0.4)):
        series = RoiSeries(
            soil=name,
            times_s=t,
            mean_c=24.0 + gain * (ramp - 24.0),
            std_k=np.full(30, sigma),
            pixel_count=100,
            net_flux_wm2=300.0 - 6.0 * gain * (ramp - 24.0),
        )
        write_roi_series_csv(series, out / f"series_{name}.csv")

    write_campaign_metrics_csv(out / "metrics.csv")
    write_estimates_csv(campaign_rows(), out / "estimates.csv")
    return out


class TestGenerateReport:
    def test_produces_all_outputs(self, artifact_dir):
        result = generate_report(artifact_dir)
        assert result.summary_path == artifact_dir / "summary.md"
        assert result.summary_path.is_file()
        names = {p.name for p in result.figure_paths}
        assert names == {
            "simulation_series.png",
            "roi_mean.png",
            "roi_std.png",
            "roi_flux.png",
            "inertia_estimates.png",
        }
        for p in result.figure_paths:
            assert p.is_file() and p.stat().st_size > 0
        for p in result.plotdata_paths:
            assert p.is_file()
            assert p.parent.name == "plotdata"
        # every figure has a delimited twin
        data_names = {p.stem for p in result.plotdata_paths}
        assert {p.stem for p in result.figure_paths} <= data_names

    def test_summary_content(self, artifact_dir):
        generate_report(artifact_dir)
        text = (artifact_dir / "summary.md").read_text()
        assert text.startswith("# Run summary")
        assert "## Simulated series" in text
        assert "## Region series" in text
        assert "## Amplitude metrics" in text
        assert "## Inertia estimates" in text
        assert "- soils: 4" in text
        assert "- estimators: I_sin, ATI" in text
        assert "## Figures" in text
        assert "figures/simulation_series.png" in text

    def test_regeneration_is_byte_identical(self, artifact_dir):
        first = generate_report(artifact_dir)
        before = {
            p: digest(p)
            for p in [first.summary_path, *first.figure_paths, *first.plotdata_paths]
        }
        second = generate_report(artifact_dir)
        after = {
            p: digest(p)
            for p in [second.summary_path, *second.figure_paths, *second.plotdata_paths]
        }
        assert before == after

    def test_separate_output_directory(self, artifact_dir, tmp_path):
        result = generate_report(artifact_dir, tmp_path / "reportdir")
        assert result.summary_path.parent == tmp_path / "reportdir"
        assert result.summary_path.is_file()
        assert (tmp_path / "reportdir" / "figures").is_dir()

    def test_estimates_only_directory(self, tmp_path):
        write_estimates_csv(campaign_rows(), tmp_path / "estimates.csv")
        result = generate_report(tmp_path)
        names = {p.name for p in result.figure_paths}
        assert names == {"inertia_estimates.png"}
        text = result.summary_path.read_text()
        assert "## Inertia estimates" in text
        assert "## Simulated series" not in text

    def test_flux_figure_skipped_when_column_blank(self, tmp_path):
        series = RoiSeries(
            soil="a",
            times_s=np.arange(5.0),
            mean_c=np.linspace(24.0, 30.0, 5),
            std_k=np.zeros(5),
            pixel_count=10,
        )
        write_roi_series_csv(series, tmp_path / "series_a.csv")
        result = generate_report(tmp_path)
        names = {p.name for p in result.figure_paths}
        assert "roi_flux.png" not in names
        assert {"roi_mean.png", "roi_std.png"} <= names

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(DataError, match="nothing to report"):
            generate_report(tmp_path)
