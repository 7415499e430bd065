"""Render prior run outputs into a summary document, figures, and plot data.

The generator scans a directory for the CSV artifacts the other
commands produce (simulated series, per-soil region series, amplitude
metrics, inertia estimates), then writes ``summary.md`` plus one PNG
under ``figures/`` and one CSV under ``plotdata/`` per figure. Output
is byte-deterministic: regenerating from the same inputs reproduces
identical files, so reports can be diffed across runs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless and deterministic

import matplotlib.pyplot as plt
import numpy as np

from .errors import DataError

SIM_SERIES_NAME = "series.csv"
ROI_SERIES_GLOB = "series_*.csv"
METRICS_NAME = "metrics.csv"
ESTIMATES_NAME = "estimates.csv"

_SAVEFIG = {"dpi": 100, "metadata": {"Software": None}}


def _read_table(path: Path):
    """CSV to (ordered headers, column arrays); numeric where possible."""
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if len(rows) < 2:
        raise DataError(f"{path} has no data rows")
    headers = rows[0]
    cols = {h: [] for h in headers}
    for r in rows[1:]:
        if len(r) != len(headers):
            raise DataError(f"{path}: ragged row with {len(r)} cells")
        for h, v in zip(headers, r):
            cols[h].append(v)
    out = {}
    for h, vals in cols.items():
        try:
            out[h] = np.array([float(v) for v in vals])
        except ValueError:
            out[h] = np.array(vals, dtype=object)
    return headers, out


def _write_table(path: Path, headers, cols) -> None:
    with path.open("w", newline="") as fh:
        fh.write(",".join(headers) + "\n")
        n = len(cols[headers[0]])
        for i in range(n):
            cells = []
            for h in headers:
                v = cols[h][i]
                cells.append(format(v, ".10g") if isinstance(v, float) else str(v))
            fh.write(",".join(cells) + "\n")


@dataclass
class ReportResult:
    summary_path: Path
    figure_paths: list = field(default_factory=list)
    plotdata_paths: list = field(default_factory=list)


def _fig_simulation(headers, cols, fig_dir, data_dir, result):
    t = cols["time_s"] / 60.0
    fig, (ax_t, ax_g) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    temp_cols = [h for h in headers if h.startswith("T_")]
    for h in temp_cols:
        label = "surface" if h == "T_surface_C" else h.split("@", 1)[-1] + " m"
        ax_t.plot(t, cols[h], label=label)
    ax_t.set_ylabel("temperature [C]")
    ax_t.legend(loc="best")
    ax_g.plot(t, cols["G_Wm2"], color="tab:red")
    ax_g.set_ylabel("net flux [W/m$^2$]")
    ax_g.set_xlabel("time [min]")
    fig.tight_layout()
    png = fig_dir / "simulation_series.png"
    fig.savefig(png, **_SAVEFIG)
    plt.close(fig)
    data = data_dir / "simulation_series.csv"
    _write_table(data, headers, {h: [float(v) for v in cols[h]] for h in headers})
    result.figure_paths.append(png)
    result.plotdata_paths.append(data)


def _roi_wide(series, key):
    """Align per-soil series on a shared timebase if possible."""
    soils = sorted(series)
    t0 = series[soils[0]][1]["time_s"]
    for s in soils[1:]:
        ts = series[s][1]["time_s"]
        if ts.shape != t0.shape or not np.array_equal(ts, t0):
            return None
    headers = ["time_s"] + soils
    cols = {"time_s": [float(v) for v in t0]}
    for s in soils:
        cols[s] = [float(v) for v in series[s][1][key]]
    return headers, cols


def _fig_roi(series, key, ylabel, stem, fig_dir, data_dir, result):
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for soil in sorted(series):
        _, cols = series[soil]
        if key == "flux_Wm2" and cols.get(key) is None:
            continue
        ax.plot(cols["time_s"] / 60.0, cols[key], label=soil)
    ax.set_xlabel("time [min]")
    ax.set_ylabel(ylabel)
    ax.legend(loc="best")
    fig.tight_layout()
    png = fig_dir / f"{stem}.png"
    fig.savefig(png, **_SAVEFIG)
    plt.close(fig)
    result.figure_paths.append(png)
    wide = _roi_wide(series, key)
    data = data_dir / f"{stem}.csv"
    if wide is not None:
        _write_table(data, wide[0], wide[1])
    else:
        headers = ["soil", "time_s", key]
        cols = {"soil": [], "time_s": [], key: []}
        for soil in sorted(series):
            _, c = series[soil]
            cols["soil"].extend([soil] * len(c["time_s"]))
            cols["time_s"].extend(float(v) for v in c["time_s"])
            cols[key].extend(float(v) for v in c[key])
        _write_table(data, headers, cols)
    result.plotdata_paths.append(data)


def _fig_estimates(cols, fig_dir, data_dir, result):
    labels = [
        f"{e}:{s}" for e, s in zip(cols["experiment"], cols["soil"])
    ]
    x = np.arange(len(labels))
    fig, (ax_i, ax_a) = plt.subplots(2, 1, figsize=(max(8, len(x)), 7), sharex=True)
    width = 0.38
    ax_i.bar(x - width / 2, cols["I_sin_tiu"], width, label="computed")
    ref = cols.get("reference_I_sin_tiu")
    if ref is not None and ref.dtype != object:
        ax_i.bar(x + width / 2, ref, width, label="reference")
    ax_i.set_ylabel("I_sin [tiu]")
    ax_i.legend(loc="best")
    ax_a.bar(x - width / 2, cols["ATI_tiu"], width, label="computed")
    ref_a = cols.get("reference_ATI_tiu")
    if ref_a is not None and ref_a.dtype != object:
        ax_a.bar(x + width / 2, ref_a, width, label="reference")
    ax_a.set_ylabel("ATI [tiu]")
    ax_a.set_xticks(x)
    ax_a.set_xticklabels(labels, rotation=60, ha="right")
    fig.tight_layout()
    png = fig_dir / "inertia_estimates.png"
    fig.savefig(png, **_SAVEFIG)
    plt.close(fig)
    result.figure_paths.append(png)
    headers = [h for h in ("experiment", "soil", "I_sin_tiu", "ATI_tiu",
                           "reference_I_sin_tiu", "reference_ATI_tiu", "flagged")
               if h in cols]
    data = data_dir / "inertia_estimates.csv"
    out_cols = {}
    for h in headers:
        vals = cols[h]
        out_cols[h] = [
            float(v) if not isinstance(v, str) else v for v in vals
        ]
    _write_table(data, headers, out_cols)
    result.plotdata_paths.append(data)


def _md_table(fh, headers, rows):
    fh.write("| " + " | ".join(headers) + " |\n")
    fh.write("|" + "|".join(" --- " for _ in headers) + "|\n")
    for r in rows:
        fh.write("| " + " | ".join(r) + " |\n")
    fh.write("\n")


def _fmt(v) -> str:
    if isinstance(v, str):
        return v if v else "-"
    return format(float(v), ".6g")


def generate_report(source_dir, out_dir=None) -> ReportResult:
    """Build summary.md, figures/ and plotdata/ from a run output directory.

    Raises DataError when the directory holds none of the known
    artifacts.
    """
    src = Path(source_dir)
    out = Path(out_dir) if out_dir is not None else src
    sim_path = src / SIM_SERIES_NAME
    roi_paths = sorted(src.glob(ROI_SERIES_GLOB))
    metrics_path = src / METRICS_NAME
    estimates_path = src / ESTIMATES_NAME

    have_sim = sim_path.is_file()
    have_metrics = metrics_path.is_file()
    have_estimates = estimates_path.is_file()
    if not (have_sim or roi_paths or have_metrics or have_estimates):
        raise DataError(
            f"nothing to report: no {SIM_SERIES_NAME}, {ROI_SERIES_GLOB}, "
            f"{METRICS_NAME} or {ESTIMATES_NAME} under {src}"
        )

    fig_dir = out / "figures"
    data_dir = out / "plotdata"
    fig_dir.mkdir(parents=True, exist_ok=True)
    data_dir.mkdir(parents=True, exist_ok=True)
    result = ReportResult(summary_path=out / "summary.md")

    sections = []

    if have_sim:
        headers, cols = _read_table(sim_path)
        _fig_simulation(headers, cols, fig_dir, data_dir, result)
        t = cols["time_s"]
        surf = cols["T_surface_C"]
        lines = [
            f"- samples: {t.size}",
            f"- span: {_fmt(t[0])} s to {_fmt(t[-1])} s",
            f"- surface temperature: min {_fmt(surf.min())} C, "
            f"max {_fmt(surf.max())} C",
            f"- net flux: min {_fmt(cols['G_Wm2'].min())} W/m^2, "
            f"max {_fmt(cols['G_Wm2'].max())} W/m^2",
        ]
        sections.append(("Simulated series", lines, None))

    roi_series = {}
    for p in roi_paths:
        soil = p.stem[len("series_"):]
        roi_series[soil] = _read_table(p)
    if roi_series:
        _fig_roi(roi_series, "mean_C", "ROI mean temperature [C]", "roi_mean",
                 fig_dir, data_dir, result)
        _fig_roi(roi_series, "std_K", "ROI temperature spread [K]", "roi_std",
                 fig_dir, data_dir, result)
        if all(
            cols.get("flux_Wm2") is not None and cols["flux_Wm2"].dtype != object
            for _, cols in roi_series.values()
        ):
            _fig_roi(roi_series, "flux_Wm2", "net flux [W/m$^2$]", "roi_flux",
                     fig_dir, data_dir, result)
        rows = []
        for soil in sorted(roi_series):
            _, cols = roi_series[soil]
            rows.append([
                soil,
                str(cols["time_s"].size),
                _fmt(cols["mean_C"][0]),
                _fmt(cols["mean_C"].max() - cols["mean_C"][0]),
                _fmt(cols["std_K"].max()),
            ])
        sections.append((
            "Region series",
            None,
            (["soil", "samples", "T_init [C]", "dT [K]", "max std [K]"], rows),
        ))

    if have_metrics:
        headers, cols = _read_table(metrics_path)
        rows = [
            [_fmt(cols[h][i]) for h in headers]
            for i in range(len(cols[headers[0]]))
        ]
        sections.append(("Amplitude metrics", None, (headers, rows)))

    if have_estimates:
        headers, cols = _read_table(estimates_path)
        _fig_estimates(cols, fig_dir, data_dir, result)
        show = [h for h in ("experiment", "soil", "I_sin_tiu", "ATI_tiu",
                            "reference_I_sin_tiu", "reference_ATI_tiu", "flagged")
                if h in headers]
        rows = [
            [_fmt(cols[h][i]) for h in show]
            for i in range(len(cols[headers[0]]))
        ]
        n_soils = len(set(cols["soil"]))
        lines = [f"- soils: {n_soils}", "- estimators: I_sin, ATI"]
        sections.append(("Inertia estimates", lines, (show, rows)))

    with result.summary_path.open("w") as fh:
        fh.write("# Run summary\n\n")
        fh.write(f"Source: {src.name or src}\n\n")
        for title, lines, table in sections:
            fh.write(f"## {title}\n\n")
            if lines:
                fh.write("\n".join(lines) + "\n\n")
            if table:
                _md_table(fh, table[0], table[1])
        if result.figure_paths:
            fh.write("## Figures\n\n")
            for p in result.figure_paths:
                fh.write(f"- figures/{p.name} (data: plotdata/{p.stem}.csv)\n")
            fh.write("\n")
    return result
