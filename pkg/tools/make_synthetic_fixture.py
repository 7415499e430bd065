#!/usr/bin/env python3
"""Generate a synthetic chamber recording for exercising `soiltherm ingest`.

Writes a frame sequence, a frame manifest, an ROI definition file, and an
auxiliary channel log under the output directory. Two rectangular soil
patches ride a logistic heater ramp with different gains and noise levels,
so the ingested series have a known shape and a known std ordering.

Example:
    python3 tools/make_synthetic_fixture.py --out demo_run --seed 7
    soiltherm ingest --frames-manifest demo_run/manifest.csv \\
        --roi demo_run/rois.json --aux demo_run/aux.csv \\
        --frame-width 64 --frame-height 48 --period-min 200
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from soiltherm import ThermalFrame, serialize_frame


def logistic_ramp(t, midpoint, width, low, high):
    return low + (high - low) / (1.0 + np.exp(-(t - midpoint) / width))


def build_fixture(out_dir, seed, n_frames, width, height, period_s):
    rng = np.random.default_rng(seed)
    frames_dir = out_dir / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)

    times = np.linspace(0.0, period_s, n_frames)
    heater_c = logistic_ramp(times, period_s * 0.3, period_s * 0.06, 25.0, 55.0)
    gains = {"Soil A": 0.55, "Soil B": 0.50}
    noise = {"Soil A": 0.05, "Soil B": 0.30}
    # pixel windows, clear of the frame border and of each other
    boxes = {
        "Soil A": (slice(2, 23), slice(2, 31)),
        "Soil B": (slice(24, height - 2), slice(34, width - 2)),
    }

    manifest_lines = ["path,timestamp_s"]
    for i, t in enumerate(times):
        grid = np.full((height, width), 20.0)
        for name, (rows, cols) in boxes.items():
            level = 24.0 + gains[name] * (heater_c[i] - heater_c[0])
            shape = (rows.stop - rows.start, cols.stop - cols.start)
            grid[rows, cols] = level + rng.normal(0.0, noise[name], shape)
        frame = ThermalFrame(width, height, np.round(grid, 2), timestamp_s=t)
        name = f"frame_{i:04d}.txt"
        (frames_dir / name).write_text(serialize_frame(frame))
        manifest_lines.append(f"frames/{name},{t:g}")
    (out_dir / "manifest.csv").write_text("\n".join(manifest_lines) + "\n")

    rois = []
    for name, (rows, cols) in boxes.items():
        x1, x2 = cols.start, cols.stop
        y1, y2 = rows.start, rows.stop
        rois.append(
            {"name": name, "vertices": [[x1, y1], [x2, y1], [x2, y2], [x1, y2]]}
        )
    (out_dir / "rois.json").write_text(json.dumps({"rois": rois}, indent=2) + "\n")

    aux_t = np.linspace(0.0, period_s, 5 * n_frames)
    aux_heater = np.interp(aux_t, times, heater_c)
    aux_lines = ["time_s,heater_C,air_C,setpoint_C"]
    aux_lines += [f"{t:g},{h:.4f},22.0,55.0" for t, h in zip(aux_t, aux_heater)]
    (out_dir / "aux.csv").write_text("\n".join(aux_lines) + "\n")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("fixture"),
                        help="output directory (default: ./fixture)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--frames", type=int, default=12)
    parser.add_argument("--width", type=int, default=64)
    parser.add_argument("--height", type=int, default=48)
    parser.add_argument("--period-min", type=float, default=200.0,
                        help="heating cycle length in minutes")
    args = parser.parse_args(argv)

    if args.frames < 2 or args.width < 40 or args.height < 30:
        parser.error("need at least 2 frames and a 40x30 frame size")
    build_fixture(
        args.out, args.seed, args.frames, args.width, args.height,
        args.period_min * 60.0,
    )
    print(f"wrote {args.frames} frames + manifest.csv, rois.json, aux.csv "
          f"under {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
