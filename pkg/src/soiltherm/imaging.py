"""Radiometric frame ingestion and per-soil region statistics.

A measurement campaign produces plain-text thermal frames (640x480
Celsius matrices), a manifest pairing each frame file with its capture
time, polygonal regions outlining each soil bin (with exclusion
polygons masking thermocouple hardware), and an auxiliary CSV of
thermocouple channels. This module turns those artifacts into per-soil
time series of mean temperature, spatial standard deviation, and
radiative net flux, plus a summary of cycle amplitudes.

Pixel membership follows a fixed deterministic convention: a pixel
belongs to a polygon iff its center (col + 0.5, row + 0.5) is inside
under the even-odd rule, with ties on edges resolved half-open
(top/left edges inclusive). Exclusion polygons are subtracted from the
filled mask.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings as _warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import CELSIUS_OFFSET
from .errors import DataError, FrameParseError
from .estimators import AmplitudeMetrics, Convention, extract_amplitudes, net_flux

DEFAULT_WIDTH = 640
DEFAULT_HEIGHT = 480
PLAUSIBLE_MIN_C = -40.0
PLAUSIBLE_MAX_C = 150.0


@dataclass(frozen=True)
class ThermalFrame:
    """One radiometric frame: a row-major Celsius grid with a timestamp."""

    width: int
    height: int
    temperatures: np.ndarray  # (height, width), Celsius
    timestamp_s: float = 0.0
    source: str = ""

    def __post_init__(self):
        grid = np.asarray(self.temperatures, dtype=float)
        if grid.shape != (self.height, self.width):
            raise DataError(
                f"frame grid shape {grid.shape} does not match "
                f"{self.height}x{self.width}"
            )
        if not np.all(np.isfinite(grid)):
            raise DataError(f"frame {self.source or '<memory>'} has non-finite cells")
        n_out = int(np.sum((grid < PLAUSIBLE_MIN_C) | (grid > PLAUSIBLE_MAX_C)))
        if n_out:
            _warnings.warn(
                f"{n_out} pixels outside the plausible range "
                f"[{PLAUSIBLE_MIN_C:g}, {PLAUSIBLE_MAX_C:g}] C in "
                f"{self.source or '<memory>'}",
                stacklevel=2,
            )
        grid.flags.writeable = False
        object.__setattr__(self, "temperatures", grid)


def parse_frame(
    text,
    timestamp_s: float = 0.0,
    width: int = DEFAULT_WIDTH,
    height: int = DEFAULT_HEIGHT,
    source: str = "<memory>",
) -> ThermalFrame:
    """Parse a whitespace-separated Celsius matrix into a ThermalFrame.

    The fast path converts the whole token list at once; on failure a
    locating scan pins the first bad token to its row and column.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    expected = width * height
    values = None
    try:
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore")  # empty input warns, fallback decides
            values = np.loadtxt(io.StringIO(text), dtype=float, ndmin=1).reshape(-1)
    except ValueError:
        values = None
    if values is None or values.size != expected or not np.all(np.isfinite(values)):
        # slow path: tokenize to pin down the count or the offending cell
        tokens = text.split()
        if len(tokens) != expected:
            row, col = divmod(min(len(tokens), expected - 1), width)
            raise FrameParseError(
                f"expected {expected} cells ({width}x{height}), got {len(tokens)}",
                row=row,
                col=col,
                source=source,
            )
        try:
            values = np.array(tokens, dtype=float)
        except ValueError:
            for i, tok in enumerate(tokens):
                try:
                    float(tok)
                except ValueError:
                    row, col = divmod(i, width)
                    raise FrameParseError(
                        f"non-numeric cell {tok!r}", row=row, col=col, source=source
                    ) from None
            raise  # unreachable unless numpy rejects something float() accepts
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            row, col = divmod(int(bad[0]), width)
            raise FrameParseError(
                f"non-finite cell {tokens[bad[0]]!r}",
                row=row,
                col=col,
                source=source,
            )
    return ThermalFrame(
        width=width,
        height=height,
        temperatures=values.reshape(height, width),
        timestamp_s=timestamp_s,
        source=source,
    )


def load_frame(
    path,
    timestamp_s: float = 0.0,
    width: int = DEFAULT_WIDTH,
    height: int = DEFAULT_HEIGHT,
) -> ThermalFrame:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DataError(f"cannot read frame file {p}: {exc}") from exc
    return parse_frame(text, timestamp_s, width, height, source=str(p))


def serialize_frame(frame: ThermalFrame, decimals: int = 2) -> str:
    """Render a frame back to text, one row per line, fixed decimals."""
    fmt = f"%.{decimals}f"
    rows = (
        " ".join(fmt % v for v in row) for row in frame.temperatures
    )
    return "\n".join(rows) + "\n"


def _segments(vertices: np.ndarray):
    n = len(vertices)
    for i in range(n):
        yield i, vertices[i], vertices[(i + 1) % n]


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _proper_intersect(p1, p2, p3, p4) -> bool:
    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def _ring_area(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _point_in_ring(x: float, y: float, vertices: np.ndarray) -> bool:
    """Even-odd test counting edge crossings strictly right of the point."""
    inside = False
    for _, a, b in _segments(vertices):
        y1, y2 = a[1], b[1]
        if y1 == y2:
            continue
        if (y1 <= y < y2) or (y2 <= y < y1):
            xc = a[0] + (y - y1) * (b[0] - a[0]) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def _validated_ring(raw, label: str) -> np.ndarray:
    v = np.asarray(raw, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise DataError(f"{label}: need at least 3 (x, y) vertices")
    if not np.all(np.isfinite(v)):
        raise DataError(f"{label}: non-finite vertex coordinates")
    if _ring_area(v) <= 0.0:
        raise DataError(f"{label}: degenerate polygon (zero area)")
    for i, a1, a2 in _segments(v):
        for j, b1, b2 in _segments(v):
            if j <= i or j == (i + 1) % len(v) or (j + 1) % len(v) == i:
                continue
            if _proper_intersect(a1, a2, b1, b2):
                raise DataError(
                    f"{label}: edges {i} and {j} intersect (self-intersecting)"
                )
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class RoiPolygon:
    """A named soil region: one outer polygon, optional exclusion holes."""

    name: str
    vertices: np.ndarray
    exclusions: tuple = ()

    def __post_init__(self):
        outer = _validated_ring(self.vertices, f"ROI {self.name!r}")
        holes = tuple(
            _validated_ring(h, f"ROI {self.name!r} exclusion {i}")
            for i, h in enumerate(self.exclusions)
        )
        for i, h in enumerate(holes):
            for x, y in h:
                if not _point_in_ring(x, y, outer):
                    raise DataError(
                        f"ROI {self.name!r} exclusion {i} vertex ({x:g}, {y:g}) "
                        "lies outside the region"
                    )
        object.__setattr__(self, "vertices", outer)
        object.__setattr__(self, "exclusions", holes)


def _fill_ring(vertices: np.ndarray, width: int, height: int) -> np.ndarray:
    mask = np.zeros((height, width), dtype=bool)
    row_lo = max(int(math.floor(vertices[:, 1].min() - 0.5)), 0)
    row_hi = min(int(math.ceil(vertices[:, 1].max())), height)
    for row in range(row_lo, row_hi):
        yc = row + 0.5
        xs = []
        for _, a, b in _segments(vertices):
            y1, y2 = a[1], b[1]
            if y1 == y2:
                continue
            if (y1 <= yc < y2) or (y2 <= yc < y1):
                xs.append(a[0] + (yc - y1) * (b[0] - a[0]) / (y2 - y1))
        xs.sort()
        for j in range(0, len(xs) - 1, 2):
            c0 = max(int(math.ceil(xs[j] - 0.5)), 0)
            c1 = min(int(math.ceil(xs[j + 1] - 0.5)) - 1, width - 1)
            if c1 >= c0:
                mask[row, c0 : c1 + 1] = True
    return mask


def rasterize(roi: RoiPolygon, width: int, height: int) -> np.ndarray:
    """Boolean pixel mask of the region with exclusions subtracted.

    Every vertex must lie within the frame rectangle [0, width] x
    [0, height]; the mask is deterministic and reusable across frames.
    """
    for ring in (roi.vertices, *roi.exclusions):
        for x, y in ring:
            if not (0.0 <= x <= width and 0.0 <= y <= height):
                raise DataError(
                    f"ROI {roi.name!r} vertex ({x:g}, {y:g}) outside the "
                    f"{width}x{height} frame"
                )
    mask = _fill_ring(roi.vertices, width, height)
    for hole in roi.exclusions:
        mask &= ~_fill_ring(hole, width, height)
    mask.flags.writeable = False
    return mask


def roi_stats(frame: ThermalFrame, mask: np.ndarray, ddof: int = 0):
    """(mean Celsius, standard deviation K, pixel count) over masked pixels.

    The default is the population standard deviation (ddof=0), treating
    the region as the whole surface of interest; pass ddof=1 for the
    sample estimator.
    """
    if mask.shape != frame.temperatures.shape:
        raise DataError(
            f"mask shape {mask.shape} does not match frame "
            f"{frame.temperatures.shape}"
        )
    values = frame.temperatures[mask]
    n = values.size
    if n == 0:
        raise DataError("ROI mask selects no pixels")
    if n - ddof <= 0:
        raise DataError(f"ROI of {n} pixels cannot use ddof={ddof}")
    mean = values.sum() / n
    std = math.sqrt(float(((values - mean) ** 2).sum()) / (n - ddof))
    return float(mean), std, int(n)


@dataclass(frozen=True)
class AuxChannels:
    """Thermocouple channels logged alongside the frames (Celsius)."""

    times_s: np.ndarray
    heater_c: np.ndarray
    air_c: np.ndarray
    setpoint_c: np.ndarray | None = None
    subsurface_c: np.ndarray | None = None

    def __post_init__(self):
        t = np.asarray(self.times_s, dtype=float)
        if t.ndim != 1 or t.size == 0:
            raise DataError("aux channels need a non-empty time vector")
        if np.any(np.diff(t) < 0.0):
            raise DataError("aux channel times must be sorted")
        object.__setattr__(self, "times_s", t)
        for attr in ("heater_c", "air_c", "setpoint_c", "subsurface_c"):
            v = getattr(self, attr)
            if v is None:
                if attr in ("heater_c", "air_c"):
                    raise DataError(f"aux channel {attr} is mandatory")
                continue
            v = np.asarray(v, dtype=float)
            if v.shape != t.shape:
                raise DataError(f"aux channel {attr} is misaligned with time")
            if not np.all(np.isfinite(v)):
                raise DataError(f"aux channel {attr} has non-finite samples")
            object.__setattr__(self, attr, v)

    def heater_at(self, times_s) -> np.ndarray:
        """Heater temperature (Celsius) interpolated to arbitrary times."""
        return np.interp(times_s, self.times_s, self.heater_c)


_AUX_REQUIRED = ("time_s", "heater_C", "air_C")
_AUX_OPTIONAL = ("setpoint_C", "subsurface_C")


def load_aux_csv(path) -> AuxChannels:
    """Read the auxiliary thermocouple CSV (time_s, heater_C, air_C, ...)."""
    p = Path(path)
    try:
        with p.open(newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            missing = [c for c in _AUX_REQUIRED if c not in fields]
            if missing:
                raise DataError(f"aux CSV {p} missing columns: {', '.join(missing)}")
            rows = list(reader)
    except OSError as exc:
        raise DataError(f"cannot read aux CSV {p}: {exc}") from exc
    if not rows:
        raise DataError(f"aux CSV {p} has no data rows")

    def column(name):
        try:
            return np.array([float(r[name]) for r in rows])
        except (TypeError, ValueError) as exc:
            raise DataError(f"aux CSV {p}: bad value in column {name}") from exc

    present = {c: column(c) for c in _AUX_REQUIRED}
    optional = {
        c: column(c) for c in _AUX_OPTIONAL if c in fields and rows[0][c] not in (None, "")
    }
    return AuxChannels(
        times_s=present["time_s"],
        heater_c=present["heater_C"],
        air_c=present["air_C"],
        setpoint_c=optional.get("setpoint_C"),
        subsurface_c=optional.get("subsurface_C"),
    )


def load_manifest(path) -> list[tuple[Path, float]]:
    """Read the frame manifest CSV: ordered (path, timestamp_s) records.

    Relative frame paths resolve against the manifest's directory.
    """
    p = Path(path)
    try:
        with p.open(newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            if "path" not in fields or "timestamp_s" not in fields:
                raise DataError(f"manifest {p} needs columns path, timestamp_s")
            entries = []
            for i, row in enumerate(reader):
                try:
                    t = float(row["timestamp_s"])
                except (TypeError, ValueError) as exc:
                    raise DataError(f"manifest {p} row {i}: bad timestamp") from exc
                fp = Path(row["path"])
                if not fp.is_absolute():
                    fp = p.parent / fp
                entries.append((fp, t))
    except OSError as exc:
        raise DataError(f"cannot read manifest {p}: {exc}") from exc
    if not entries:
        raise DataError(f"manifest {p} lists no frames")
    return entries


def discover_frames(directory, interval_s: float = 1.0, pattern: str = "*.txt"):
    """Fallback when no manifest exists: lexicographic order, uniform timing."""
    d = Path(directory)
    files = sorted(d.glob(pattern))
    if not files:
        raise DataError(f"no frame files matching {pattern!r} under {d}")
    return [(f, i * interval_s) for i, f in enumerate(files)]


def load_roi_file(path) -> list[RoiPolygon]:
    """Read named ROI polygons from a JSON file.

    Accepts either {"rois": [...]} or a bare list; each entry has
    "name", "vertices" ([[x, y], ...]) and optional "exclusions"
    (list of vertex lists).
    """
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except OSError as exc:
        raise DataError(f"cannot read ROI file {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"ROI file {p} is not valid JSON: {exc}") from exc
    entries = doc.get("rois") if isinstance(doc, dict) else doc
    if not isinstance(entries, list) or not entries:
        raise DataError(f"ROI file {p} defines no regions")
    rois = []
    for i, e in enumerate(entries):
        if not isinstance(e, dict) or "name" not in e or "vertices" not in e:
            raise DataError(f"ROI file {p} entry {i} needs name and vertices")
        rois.append(
            RoiPolygon(
                name=str(e["name"]),
                vertices=e["vertices"],
                exclusions=tuple(e.get("exclusions", ())),
            )
        )
    names = [r.name for r in rois]
    if len(set(names)) != len(names):
        raise DataError(f"ROI file {p} has duplicate region names")
    return rois


def load_frames(entries, width=DEFAULT_WIDTH, height=DEFAULT_HEIGHT, threads=1):
    """Load manifest entries into ThermalFrames, optionally in parallel.

    Parallel parsing preserves manifest order.
    """
    def one(entry):
        path, t = entry
        return load_frame(path, t, width, height)

    entries = list(entries)
    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, entries))
    return [one(e) for e in entries]


@dataclass(frozen=True)
class RoiSeries:
    """Per-soil time series extracted from a frame sequence."""

    soil: str
    times_s: np.ndarray
    mean_c: np.ndarray
    std_k: np.ndarray
    pixel_count: int
    net_flux_wm2: np.ndarray | None = None


def _aux_coverage_gaps(aux, t_first, t_last, max_gap_s):
    gaps = []
    if aux.times_s[0] > t_first:
        gaps.append((t_first, float(aux.times_s[0])))
    if aux.times_s[-1] < t_last:
        gaps.append((float(aux.times_s[-1]), t_last))
    if max_gap_s is not None:
        t = aux.times_s
        big = np.flatnonzero(np.diff(t) > max_gap_s)
        for i in big:
            lo, hi = float(t[i]), float(t[i + 1])
            if hi > t_first and lo < t_last:
                gaps.append((lo, hi))
    return gaps


def assemble_series(
    frames,
    rois,
    aux: AuxChannels | None = None,
    emissivity: float = 1.0,
    threads: int = 1,
    max_aux_gap_s: float | None = None,
) -> dict:
    """Reduce a frame sequence to one RoiSeries per region.

    Frames must be time-sorted and share dimensions. When aux channels
    are supplied, the net flux toward each region is computed from the
    heater temperature interpolated to frame times; the aux record must
    cover the frame time range, and internal gaps longer than
    ``max_aux_gap_s`` are rejected with the uncovered intervals listed.
    """
    frames = list(frames)
    if not frames:
        raise DataError("no frames to assemble")
    times = np.array([f.timestamp_s for f in frames])
    if np.any(np.diff(times) < 0.0):
        raise DataError("frames are not time-sorted")
    w, h = frames[0].width, frames[0].height
    for f in frames[1:]:
        if (f.width, f.height) != (w, h):
            raise DataError(
                f"frame {f.source or '?'} is {f.width}x{f.height}, expected {w}x{h}"
            )
    if aux is not None:
        gaps = _aux_coverage_gaps(aux, float(times[0]), float(times[-1]), max_aux_gap_s)
        if gaps:
            spans = "; ".join(f"[{a:g}, {b:g}] s" for a, b in gaps)
            raise DataError(f"aux channels do not cover the frame range: {spans}")

    masks = {roi.name: rasterize(roi, w, h) for roi in rois}

    def frame_stats(frame):
        return {name: roi_stats(frame, m) for name, m in masks.items()}

    if threads > 1 and len(frames) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_frame = list(pool.map(frame_stats, frames))
    else:
        per_frame = [frame_stats(f) for f in frames]

    heater_k = None
    if aux is not None:
        heater_k = aux.heater_at(times) + CELSIUS_OFFSET

    out = {}
    for roi in rois:
        name = roi.name
        mean_c = np.array([s[name][0] for s in per_frame])
        std_k = np.array([s[name][1] for s in per_frame])
        count = per_frame[0][name][2]
        flux = None
        if heater_k is not None:
            flux = net_flux(heater_k, mean_c + CELSIUS_OFFSET, emissivity)
            flux = np.atleast_1d(flux)
        out[name] = RoiSeries(
            soil=name,
            times_s=times.copy(),
            mean_c=mean_c,
            std_k=std_k,
            pixel_count=count,
            net_flux_wm2=flux,
        )
    return out


def detect_transient_end(series, window: int = 9) -> int | None:
    """Index where an upward response stops accelerating.

    The series is smoothed with a centered moving average, then the
    second difference is scanned for its first positive-to-negative
    sign change while the response is still rising. Returns the index
    in the original series, or None when no inflection exists (flat or
    linear input).
    """
    v = np.asarray(series, dtype=float)
    if window < 1:
        raise DataError(f"smoothing window must be >= 1, got {window}")
    if v.size < window:
        raise DataError(
            f"series of {v.size} samples is shorter than the {window}-sample window"
        )
    sm = np.convolve(v, np.full(window, 1.0 / window), mode="valid")
    d2 = np.diff(sm, 2)
    vrange = float(v.max() - v.min())
    if vrange <= 0.0:
        return None
    eps = 1e-8 * vrange
    rising = False
    for i in range(d2.size):
        if d2[i] > eps and sm[i + 2] > sm[i]:
            rising = True
        elif rising and d2[i] < -eps:
            return i + 1 + window // 2
    return None


def write_roi_series_csv(series: RoiSeries, path) -> None:
    """Export one region's series: time_s, mean_C, std_K, flux_Wm2."""
    with open(path, "w", newline="") as fh:
        fh.write("time_s,mean_C,std_K,flux_Wm2\n")
        for i in range(series.times_s.size):
            flux = (
                format(series.net_flux_wm2[i], ".6f")
                if series.net_flux_wm2 is not None
                else ""
            )
            fh.write(
                f"{series.times_s[i]:.6f},{series.mean_c[i]:.6f},"
                f"{series.std_k[i]:.6f},{flux}\n"
            )


def read_roi_series_csv(path, soil: str | None = None) -> RoiSeries:
    """Read a series CSV written by write_roi_series_csv."""
    p = Path(path)
    try:
        with p.open(newline="") as fh:
            reader = csv.DictReader(fh)
            fields = reader.fieldnames or []
            for c in ("time_s", "mean_C", "std_K"):
                if c not in fields:
                    raise DataError(f"series CSV {p} missing column {c}")
            rows = list(reader)
    except OSError as exc:
        raise DataError(f"cannot read series CSV {p}: {exc}") from exc
    if not rows:
        raise DataError(f"series CSV {p} has no data rows")
    t = np.array([float(r["time_s"]) for r in rows])
    mean = np.array([float(r["mean_C"]) for r in rows])
    std = np.array([float(r["std_K"]) for r in rows])
    flux = None
    if "flux_Wm2" in fields and rows[0].get("flux_Wm2"):
        flux = np.array([float(r["flux_Wm2"]) for r in rows])
    return RoiSeries(
        soil=soil or p.stem,
        times_s=t,
        mean_c=mean,
        std_k=std,
        pixel_count=0,
        net_flux_wm2=flux,
    )


@dataclass(frozen=True)
class SurfaceMetricsRow:
    """Cycle summary for one soil: start temp, amplitudes, transient std."""

    soil: str
    t_init_c: float
    delta_t_s_k: float
    t_tran_k: float | None
    delta_g_s_wm2: float | None
    period_s: float
    convention: Convention = Convention.INIT_BASED


def summarize_series(
    series_by_soil: dict,
    aux: AuxChannels | None,
    period_s: float,
    convention: Convention = Convention.INIT_BASED,
    window: int = 9,
) -> list[SurfaceMetricsRow]:
    """Collapse per-soil series into amplitude metrics rows.

    The transient endpoint is detected on the heater channel (where the
    actuation inflection lives) and mapped to the nearest frame; the
    spatial standard deviation at that frame is reported raw.
    """
    tran_time = None
    if aux is not None:
        idx = detect_transient_end(aux.heater_c, window=window)
        if idx is not None and idx < aux.times_s.size:
            tran_time = float(aux.times_s[idx])
    rows = []
    for name in sorted(series_by_soil):
        s = series_by_soil[name]
        t_tran = None
        if tran_time is not None and s.times_s.size:
            t_tran = float(s.std_k[int(np.argmin(np.abs(s.times_s - tran_time)))])
        if s.net_flux_wm2 is not None:
            m: AmplitudeMetrics = extract_amplitudes(
                s.mean_c + CELSIUS_OFFSET, s.net_flux_wm2, period_s, convention
            )
            delta_g = m.delta_g
        else:
            m = extract_amplitudes(
                s.mean_c + CELSIUS_OFFSET,
                np.zeros_like(s.mean_c),
                period_s,
                convention,
            )
            delta_g = None
        rows.append(
            SurfaceMetricsRow(
                soil=name,
                t_init_c=m.t_init - CELSIUS_OFFSET,
                delta_t_s_k=m.delta_t,
                t_tran_k=t_tran,
                delta_g_s_wm2=delta_g,
                period_s=period_s,
                convention=convention,
            )
        )
    return rows


def write_metrics_csv(rows, path) -> None:
    """Export summary rows: soil, T_init_C, delta_T_s_K, T_tran_K, delta_G_s_Wm2."""
    with open(path, "w", newline="") as fh:
        fh.write("soil,T_init_C,delta_T_s_K,T_tran_K,delta_G_s_Wm2,period_s\n")
        for r in rows:
            t_tran = "" if r.t_tran_k is None else format(r.t_tran_k, ".6f")
            d_g = "" if r.delta_g_s_wm2 is None else format(r.delta_g_s_wm2, ".6f")
            fh.write(
                f"{r.soil},{r.t_init_c:.6f},{r.delta_t_s_k:.6f},"
                f"{t_tran},{d_g},{r.period_s:.6f}\n"
            )
