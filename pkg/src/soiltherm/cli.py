"""Command-line pipeline: simulate, ingest, estimate, report.

Each command reads declared inputs, writes its artifacts into one
output directory, and drops a ``run_manifest.json`` recording the
command, tool version, seed, parameters, and SHA-256 of every input
file, so any run can be reproduced from its manifest alone. Outputs
are deterministic: re-running a command with the same inputs rewrites
byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 input-data error,
4 solver failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import campaign as campaign_mod
from . import config as config_mod
from . import imaging, report, simulator
from ._version import __version__
from .core import CELSIUS_OFFSET
from .errors import (
    ConfigError,
    DataError,
    SampleValidationError,
    SolverError,
    UnitDomainError,
)
from .estimators import (
    Convention,
    EstimateRow,
    ati,
    extract_amplitudes,
    i_sin,
    write_estimates_csv,
)

OUTPUT_ROOT_ENV = "SOILTHERM_OUTPUT_ROOT"


def _out_dir(args) -> Path:
    if args.out:
        out = Path(args.out)
    else:
        out = Path(os.environ.get(OUTPUT_ROOT_ENV, ".")) / args.command
    out.mkdir(parents=True, exist_ok=True)
    return out


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out: Path, command: str, inputs: dict, parameters: dict, seed):
    doc = {
        "command": command,
        "tool_version": __version__,
        "seed": seed,
        "output_dir": str(out.resolve()),
        "inputs": {
            label: {"path": str(Path(p).resolve()), "sha256": _sha256(Path(p))}
            for label, p in sorted(inputs.items())
            if p is not None
        },
        "parameters": parameters,
    }
    with (out / "run_manifest.json").open("w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _convention(args) -> Convention:
    return Convention(args.convention)


def cmd_simulate(args) -> int:
    out = _out_dir(args)
    plan = config_mod.load_simulation_plan(args.config)
    s = plan.settings
    thermo = simulator.resolve_thermophysics(
        plan.sample, plan.environment, plan.gas_params, k_r=plan.k_r, k_c=plan.k_c
    )
    grid = simulator.build_grid(
        plan.sample,
        plan.environment,
        nodes=s.nodes,
        depth_factor=s.depth_factor,
        thermo=thermo,
        initial_temperature_k=s.initial_temperature_k,
        first_cell_fraction=s.first_cell_fraction,
        use_bin_depth=s.use_bin_depth,
    )
    result = simulator.run_diurnal(
        grid,
        plan.forcing,
        plan.environment,
        cycles=s.cycles,
        dt=s.dt_s,
        scheme=s.scheme,
        spin_up_cycles=s.spin_up_cycles,
        record_depths=s.record_depths_m,
        record_every=s.record_every,
    )
    series_path = out / "series.csv"
    simulator.write_series_csv(result, series_path)
    _write_manifest(
        out,
        "simulate",
        {"config": args.config},
        {
            "sample": plan.sample.name,
            "pressure_mbar": plan.environment.pressure_mbar,
            "gas": plan.environment.gas.value,
            "mode": plan.environment.mode.value,
            "period_s": plan.environment.period_s,
            "conductivity_W_mK": thermo.k,
            "inertia_tiu": thermo.inertia,
            "scheme": s.scheme,
            "nodes": s.nodes,
            "dt_s": s.dt_s,
            "cycles": s.cycles,
            "spin_up_cycles": s.spin_up_cycles,
            "record_depths_m": list(s.record_depths_m),
        },
        args.seed,
    )
    d = result.diagnostics
    print(f"wrote {series_path} ({result.times_s.size} samples)")
    print(
        f"scheme={d.scheme} steps={d.steps} newton_max={d.newton_iterations_max} "
        f"max_residual={d.max_residual_wm2:.3e} W/m^2"
    )
    return 0


def cmd_ingest(args) -> int:
    out = _out_dir(args)
    if args.frames_manifest:
        entries = imaging.load_manifest(args.frames_manifest)
    elif args.frames_dir:
        entries = imaging.discover_frames(args.frames_dir, args.frame_interval_s)
    else:
        raise ConfigError("ingest needs --frames-manifest or --frames-dir")
    rois = imaging.load_roi_file(args.roi)
    aux = imaging.load_aux_csv(args.aux) if args.aux else None
    frames = imaging.load_frames(
        entries, width=args.frame_width, height=args.frame_height,
        threads=args.threads,
    )
    series = imaging.assemble_series(
        frames,
        rois,
        aux=aux,
        emissivity=args.emissivity,
        threads=args.threads,
        max_aux_gap_s=args.max_aux_gap_s,
    )
    for name in sorted(series):
        slug = "".join(c if c.isalnum() else "_" for c in name.lower())
        imaging.write_roi_series_csv(series[name], out / f"series_{slug}.csv")
    if args.period_min is not None:
        period_s = args.period_min * 60.0
    else:
        t = frames[-1].timestamp_s - frames[0].timestamp_s
        period_s = t if t > 0 else 1.0
    metrics = imaging.summarize_series(series, aux, period_s, _convention(args))
    imaging.write_metrics_csv(metrics, out / "metrics.csv")
    inputs = {"roi": args.roi}
    if args.frames_manifest:
        inputs["frames_manifest"] = args.frames_manifest
    if args.aux:
        inputs["aux"] = args.aux
    _write_manifest(
        out,
        "ingest",
        inputs,
        {
            "frames": len(frames),
            "rois": sorted(series),
            "frame_width": args.frame_width,
            "frame_height": args.frame_height,
            "emissivity": args.emissivity,
            "period_s": period_s,
            "convention": args.convention,
            "threads": args.threads,
        },
        args.seed,
    )
    print(f"wrote {len(series)} series and metrics.csv under {out}")
    return 0


def _read_metrics_rows(path):
    import csv

    p = Path(path)
    try:
        with p.open(newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            needed = ("soil", "delta_T_s_K", "delta_G_s_Wm2", "period_s")
            missing = [c for c in needed if c not in fields]
            if missing:
                raise DataError(
                    f"metrics CSV {p} missing columns: {', '.join(missing)}"
                )
            return list(reader)
    except OSError as exc:
        raise DataError(f"cannot read metrics CSV {p}: {exc}") from exc


def _load_reference_table(path):
    import csv

    p = Path(path)
    try:
        with p.open(newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            for c in ("soil", "I_sin_tiu", "ATI_tiu"):
                if c not in fields:
                    raise DataError(f"reference table {p} missing column {c}")
            table = {}
            for row in reader:
                key = (row.get("experiment", "") or "", row["soil"])
                table[key] = (float(row["I_sin_tiu"]), float(row["ATI_tiu"]))
            return table
    except OSError as exc:
        raise DataError(f"cannot read reference table {p}: {exc}") from exc


def _reference_for(table, experiment, soil):
    if table is None:
        return None
    return table.get((experiment, soil)) or table.get(("", soil))


def _estimate_row(experiment, soil, delta_t, delta_g, period_s, albedo, reference):
    degenerate = not delta_t > 0.0
    if degenerate:
        row_i_sin = math.nan
        row_ati = math.nan
    else:
        row_i_sin = i_sin(delta_g, delta_t, period_s) if delta_g is not None else math.nan
        row_ati = ati(albedo, delta_t)
    ref_i, ref_a = reference if reference else (None, None)
    flagged = (
        ref_i is not None
        and math.isfinite(row_i_sin)
        and campaign_mod.is_discrepant(row_i_sin, ref_i)
    )
    return EstimateRow(
        experiment=experiment,
        soil=soil,
        i_sin_tiu=row_i_sin,
        ati_tiu=row_ati,
        delta_t_k=delta_t,
        delta_g_wm2=delta_g if delta_g is not None else math.nan,
        period_s=period_s,
        reference_i_sin_tiu=ref_i,
        reference_ati_tiu=ref_a,
        flagged=flagged,
        degenerate=degenerate,
    )


def cmd_estimate(args) -> int:
    out = _out_dir(args)
    reference = (
        _load_reference_table(args.reference_table) if args.reference_table else None
    )
    rows = []
    inputs = {}
    parameters = {
        "albedo": args.albedo,
        "convention": args.convention,
    }
    if args.campaign:
        rows = campaign_mod.campaign_rows(albedo=args.albedo)
        parameters["source"] = "bundled-campaign"
    elif args.metrics:
        inputs["metrics"] = args.metrics
        parameters["source"] = "metrics"
        for r in _read_metrics_rows(args.metrics):
            soil = r["soil"]
            experiment = r.get("experiment", "") or Path(args.metrics).stem
            delta_t = float(r["delta_T_s_K"]) if r["delta_T_s_K"] else 0.0
            delta_g = float(r["delta_G_s_Wm2"]) if r["delta_G_s_Wm2"] else None
            period_s = float(r["period_s"])
            if args.period_min is not None:
                period_s = args.period_min * 60.0
            rows.append(
                _estimate_row(
                    experiment, soil, delta_t, delta_g, period_s, args.albedo,
                    _reference_for(reference, experiment, soil),
                )
            )
    elif args.series:
        if args.period_min is None:
            raise ConfigError("--series estimation needs --period-min")
        period_s = args.period_min * 60.0
        parameters["source"] = "series"
        parameters["period_s"] = period_s
        series_dir = Path(args.series)
        paths = sorted(series_dir.glob("series_*.csv"))
        if not paths:
            raise DataError(f"no series_*.csv files under {series_dir}")
        experiment = series_dir.name
        conv = _convention(args)
        for p in paths:
            inputs[p.stem] = p
            s = imaging.read_roi_series_csv(p, soil=p.stem.removeprefix("series_"))
            flux = (
                s.net_flux_wm2
                if s.net_flux_wm2 is not None
                else np.zeros_like(s.mean_c)
            )
            m = extract_amplitudes(s.mean_c + CELSIUS_OFFSET, flux, period_s, conv)
            delta_g = m.delta_g if s.net_flux_wm2 is not None else None
            rows.append(
                _estimate_row(
                    experiment, s.soil, m.delta_t, delta_g, period_s, args.albedo,
                    _reference_for(reference, experiment, s.soil),
                )
            )
    else:
        raise ConfigError("estimate needs one of --campaign, --metrics, --series")
    if args.reference_table:
        inputs["reference_table"] = args.reference_table
    estimates_path = out / "estimates.csv"
    write_estimates_csv(rows, estimates_path)
    _write_manifest(out, "estimate", inputs, parameters, args.seed)
    n_flagged = sum(r.flagged for r in rows)
    n_degenerate = sum(r.degenerate for r in rows)
    print(
        f"wrote {estimates_path} ({len(rows)} rows, {n_flagged} flagged, "
        f"{n_degenerate} degenerate)"
    )
    return 0


def cmd_report(args) -> int:
    out = _out_dir(args)
    source = Path(args.source) if args.source else out
    result = report.generate_report(source, out)
    _write_manifest(
        out,
        "report",
        {},
        {
            "source": str(source.resolve()),
            "figures": [p.name for p in result.figure_paths],
        },
        args.seed,
    )
    print(f"wrote {result.summary_path} and {len(result.figure_paths)} figures")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soiltherm",
        description="Soil thermophysics toolkit: chamber simulation, "
        "radiometric ingestion, and thermal-inertia estimation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help=f"output directory (default: ${OUTPUT_ROOT_ENV})")
        p.add_argument("--seed", type=int, default=0, help="recorded RNG seed")

    p_sim = sub.add_parser("simulate", help="run a soil column simulation")
    p_sim.add_argument("--config", required=True, help="TOML run configuration")
    common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_ing = sub.add_parser("ingest", help="extract ROI series from thermal frames")
    p_ing.add_argument("--frames-manifest", help="CSV of (path, timestamp_s)")
    p_ing.add_argument(
        "--frames-dir", help="frame directory (lexicographic fallback)"
    )
    p_ing.add_argument(
        "--frame-interval-s", type=float, default=1.0,
        help="assumed spacing with --frames-dir",
    )
    p_ing.add_argument("--roi", required=True, help="JSON ROI polygon file")
    p_ing.add_argument("--aux", help="thermocouple CSV (time_s, heater_C, air_C)")
    p_ing.add_argument("--frame-width", type=int, default=imaging.DEFAULT_WIDTH)
    p_ing.add_argument("--frame-height", type=int, default=imaging.DEFAULT_HEIGHT)
    p_ing.add_argument("--emissivity", type=float, default=1.0)
    p_ing.add_argument("--period-min", type=float, help="actuation period [min]")
    p_ing.add_argument(
        "--convention", choices=[c.value for c in Convention], default="init"
    )
    p_ing.add_argument("--threads", type=int, default=1)
    p_ing.add_argument(
        "--max-aux-gap-s", type=float, default=None,
        help="reject aux recording gaps longer than this",
    )
    common(p_ing)
    p_ing.set_defaults(func=cmd_ingest)

    p_est = sub.add_parser("estimate", help="thermal-inertia estimates")
    src = p_est.add_mutually_exclusive_group()
    src.add_argument(
        "--campaign", action="store_true",
        help="use the bundled reference campaign records",
    )
    src.add_argument("--metrics", help="amplitude metrics CSV")
    src.add_argument("--series", help="directory of series_*.csv files")
    p_est.add_argument("--period-min", type=float, help="actuation period [min]")
    p_est.add_argument(
        "--convention", choices=[c.value for c in Convention], default="init"
    )
    p_est.add_argument("--albedo", type=float, default=0.0)
    p_est.add_argument(
        "--reference-table", help="CSV of reference I_sin/ATI for comparison"
    )
    common(p_est)
    p_est.set_defaults(func=cmd_estimate)

    p_rep = sub.add_parser("report", help="summarize a run directory")
    p_rep.add_argument(
        "--source", help="directory to summarize (default: the output dir)"
    )
    common(p_rep)
    p_rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SampleValidationError as exc:
        print(f"soiltherm: config error: {exc}", file=sys.stderr)
        for path, msg in exc.violations:
            print(f"  - {path}: {msg}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"soiltherm: config error: {exc}", file=sys.stderr)
        return 2
    except (DataError, UnitDomainError) as exc:
        print(f"soiltherm: data error: {exc}", file=sys.stderr)
        return 3
    except SolverError as exc:
        print(f"soiltherm: solver error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
