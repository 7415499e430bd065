"""Independent oracles and fixture generators shared across the suite.

Everything here re-derives expected values through a different code
path than the library under test: vectorized point-in-polygon instead
of scanline fill, least-squares sinusoid fits instead of amplitude
bookkeeping, direct heat-content sums instead of solver internals.
"""

import math

import numpy as np


def sine_fit(t, y, period_s):
    """Fit y ~ a*sin(wt) + b*cos(wt) + c; return (amplitude, phase).

    phase is such that y ~ amplitude * sin(w*t + phase) + c.
    """
    w = 2.0 * math.pi / period_s
    basis = np.column_stack([np.sin(w * t), np.cos(w * t), np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    return math.hypot(coef[0], coef[1]), math.atan2(coef[1], coef[0])


def oracle_mask(vertices, width, height):
    """Even-odd membership of every pixel center, computed per pixel.

    A center is inside iff an odd number of polygon edges cross the
    horizontal ray strictly to its right, with the half-open vertical
    rule (lower-y endpoint inclusive). Same tie convention as the
    library, independent vectorized implementation.
    """
    vs = np.asarray(vertices, dtype=float)
    cols, rows = np.meshgrid(
        np.arange(width) + 0.5, np.arange(height) + 0.5
    )
    inside = np.zeros((height, width), dtype=bool)
    n = len(vs)
    for i in range(n):
        x1, y1 = vs[i]
        x2, y2 = vs[(i + 1) % n]
        if y1 == y2:
            continue
        crosses = ((y1 <= rows) & (rows < y2)) | ((y2 <= rows) & (rows < y1))
        with np.errstate(divide="ignore", invalid="ignore"):
            x_at = x1 + (rows - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (x_at > cols)
    return inside


def random_star_polygon(rng, width, height, n_min=3, n_max=12):
    """Simple (non-self-intersecting) polygon: radial vertices in angle order."""
    n = int(rng.integers(n_min, n_max + 1))
    cx = rng.uniform(width * 0.2, width * 0.8)
    cy = rng.uniform(height * 0.2, height * 0.8)
    r_max = min(cx, cy, width - cx, height - cy) - 1.0
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(angles, append=angles[0] + 2.0 * math.pi)
        # distinct angles keep edges from collapsing; wedges under pi keep
        # every edge inside its own angular sector, so edges cannot cross
        if np.all(gaps > 1e-3) and np.max(gaps) < math.pi - 0.01:
            break
    radii = rng.uniform(0.25, 1.0, n) * max(r_max, 4.0)
    return [
        (cx + r * math.cos(a), cy + r * math.sin(a))
        for a, r in zip(angles, radii)
    ]


def column_heat_content(node_depths, rho_c, temperatures):
    """Heat content per area [J/m^2] of a finite-volume soil column.

    Cell volumes are the half-distances to neighboring nodes; the
    surface node carries no mass.
    """
    z = np.asarray(node_depths, dtype=float)
    T = np.asarray(temperatures, dtype=float)
    dz = np.diff(z)
    vol = np.zeros_like(z)
    vol[1:-1] = 0.5 * (dz[:-1] + dz[1:])
    vol[-1] = 0.5 * dz[-1]
    return float(np.sum(rho_c * vol * T))


def logistic(t, midpoint, width, height=50.0, offset=20.0):
    """S-curve with its inflection exactly at ``midpoint``."""
    t = np.asarray(t, dtype=float)
    return offset + height / (1.0 + np.exp(-(t - midpoint) / width))


def frame_text(grid, decimals=2):
    """Render a 2-D array the way the chamber software writes frames."""
    fmt = f"%.{decimals}f"
    return "\n".join(" ".join(fmt % v for v in row) for row in grid) + "\n"


def write_ingest_fixture(
    root,
    rng,
    n_frames=10,
    width=64,
    height=48,
    period_s=12000.0,
    noise=(0.05, 0.3),
    heater_shape="logistic",
):
    """Write a synthetic frame sequence + manifest + ROI + aux CSV.

    Two rectangular soil regions respond to a heater ramp with slightly
    different amplitudes; per-pixel noise sigma differs per region so
    spatial-std ordering is constructible ground truth. Returns a dict
    of the file paths plus the ground-truth series.
    """
    frames_dir = root / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)
    times = np.linspace(0.0, period_s, n_frames)
    if heater_shape == "logistic":
        heater_c = logistic(times, period_s * 0.3, period_s * 0.06, 30.0, 25.0)
    else:
        heater_c = 25.0 + 30.0 * np.sin(2.0 * math.pi * times / period_s)
    response_a = 24.0 + 0.55 * (heater_c - heater_c[0])
    response_b = 24.0 + 0.50 * (heater_c - heater_c[0])
    manifest_lines = ["path,timestamp_s"]
    for i, t in enumerate(times):
        grid = np.full((height, width), 20.0)
        grid[2:23, 2:31] = response_a[i] + rng.normal(0.0, noise[0], (21, 29))
        grid[24:46, 34:62] = response_b[i] + rng.normal(0.0, noise[1], (22, 28))
        name = f"frame_{i:04d}.txt"
        (frames_dir / name).write_text(frame_text(np.round(grid, 2)))
        manifest_lines.append(f"frames/{name},{t:g}")
    manifest = root / "manifest.csv"
    manifest.write_text("\n".join(manifest_lines) + "\n")

    roi = root / "rois.json"
    roi.write_text(
        """
{
  "rois": [
    {"name": "Soil A", "vertices": [[2, 2], [31, 2], [31, 23], [2, 23]]},
    {"name": "Soil B", "vertices": [[34, 24], [62, 24], [62, 46], [34, 46]]}
  ]
}
"""
    )
    aux_t = np.linspace(0.0, period_s, 5 * n_frames)
    aux_heater = np.interp(aux_t, times, heater_c)
    aux = root / "aux.csv"
    aux.write_text(
        "time_s,heater_C,air_C,setpoint_C\n"
        + "".join(
            f"{t:g},{h:.4f},22.0,55.0\n" for t, h in zip(aux_t, aux_heater)
        )
    )
    return {
        "manifest": manifest,
        "roi": roi,
        "aux": aux,
        "times": times,
        "heater_c": heater_c,
        "response": {"Soil A": response_a, "Soil B": response_b},
        "width": width,
        "height": height,
        "period_s": period_s,
    }
