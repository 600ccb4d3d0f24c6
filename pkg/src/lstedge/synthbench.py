"""Synthetic step / Gaussian / ramp shapes, additive noise and localization metrics.

Noise levels are percentages of the clean image's peak intensity and are
used as the *standard deviation* of the added Gaussian noise.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import IncompatibleTruth
from .imgcore import GrayImage, ResponseMap, as_array, format_real
from .methods import respond
from .sketchop import DEFAULT_CONFIG, LstConfig

log = logging.getLogger(__name__)

SHAPES = ("step", "gaussian", "ramp")
CSV_HEADER = ("method", "shape", "noise_pct", "seed", "loc_rate", "mean_err", "contrast")


@dataclass(frozen=True)
class SyntheticSpec:
    shape: str
    size: int = 64
    amplitude: float = 255.0
    noise_pct: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}; expected one of {SHAPES}")
        if self.size < 16:
            raise ValueError(f"size must be >= 16, got {self.size}")
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")
        if not 0 <= self.noise_pct <= 100:
            raise ValueError(f"noise_pct must lie in [0, 100], got {self.noise_pct}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class EdgeTruth:
    """Where the edge of a synthetic shape is.

    ``kind`` is ``"column"`` (vertical edge at x == position), ``"radius"``
    (circle of radius ``position`` about ``center``) or ``"none"``.
    """

    kind: str
    shape: tuple
    position: float = math.nan
    center: Optional[tuple] = None


def make_shape(spec: SyntheticSpec):
    """Noise-free image for ``spec`` and its ground-truth edge."""
    n, amp = spec.size, float(spec.amplitude)
    y, x = np.mgrid[0:n, 0:n].astype(np.float64)
    if spec.shape == "step":
        img = np.where(x >= n // 2, amp, 0.0)
        truth = EdgeTruth("column", (n, n), float(n // 2))
    elif spec.shape == "gaussian":
        c, s = n / 2, n / 8
        img = amp * np.exp(-((x - c) ** 2 + (y - c) ** 2) / (2 * s * s))
        # |dI/dr| of a Gaussian profile peaks at r == s
        truth = EdgeTruth("radius", (n, n), s, (c, c))
    else:
        img = amp * x / (n - 1)
        truth = EdgeTruth("none", (n, n))
    return GrayImage(img), truth


def add_noise(img, noise_pct: float, seed) -> GrayImage:
    """Add i.i.d. N(0, (noise_pct/100 * max(img))^2) noise; output is not clamped."""
    if noise_pct < 0:
        raise ValueError("noise_pct must be non-negative")
    arr = as_array(img)
    if noise_pct == 0:
        return GrayImage(arr)
    sigma = noise_pct / 100.0 * float(arr.max())
    rng = np.random.default_rng(seed)
    return GrayImage(arr + rng.normal(0.0, sigma, size=arr.shape))


def render(spec: SyntheticSpec, seed=None):
    """Noisy image for ``spec`` (seed defaults to ``spec.seed``) plus its truth."""
    clean, truth = make_shape(spec)
    return add_noise(clean, spec.noise_pct, spec.seed if seed is None else seed), truth


def _ratio(inside, outside):
    if outside == 0:
        return math.inf if inside > 0 else 0.0
    return inside / outside


def ray_profiles(values: np.ndarray, center, n_rays: int = 64):
    """Sample ``values`` along ``n_rays`` rays from ``center`` at integer radii.

    Returns ``(radii, profiles)`` with ``profiles[j, r]`` the nearest-pixel
    value at radius ``radii[r]`` along ray ``j``.
    """
    h, w = values.shape
    cx, cy = center
    rmax = int(math.floor(min(cx, cy, w - 1 - cx, h - 1 - cy)))
    radii = np.arange(rmax + 1, dtype=np.float64)
    theta = 2 * np.pi * np.arange(n_rays) / n_rays
    xs = np.rint(cx + np.outer(np.cos(theta), radii)).astype(np.int64)
    ys = np.rint(cy + np.outer(np.sin(theta), radii)).astype(np.int64)
    return radii, values[ys, xs]


def localization_metrics(resp, truth: EdgeTruth, tolerance_px: int = 2, n_rays: int = 64):
    """Score how well a response map localizes the true edge.

    Step edges are scored per row, Gaussian rings per ray from the centre.
    In both cases the argmax (lowest index on ties) is compared with the true
    position. Returns ``(rate, mean_error, contrast)`` where ``contrast`` is
    the mean response within the tolerance band over the mean outside it.
    """
    values = np.asarray(getattr(resp, "values", resp), dtype=np.float64)
    if tolerance_px <= 0:
        raise ValueError("tolerance_px must be positive")
    if truth.kind not in ("column", "radius"):
        raise IncompatibleTruth(f"no localized edge for truth kind {truth.kind!r}")
    if values.shape != tuple(truth.shape):
        raise IncompatibleTruth(f"response shape {values.shape} != truth shape {truth.shape}")

    h, w = values.shape
    if truth.kind == "column":
        peaks = np.argmax(values, axis=1).astype(np.float64)
        dist_map = np.abs(np.arange(w, dtype=np.float64) - truth.position)[np.newaxis, :].repeat(h, 0)
    else:
        radii, profiles = ray_profiles(values, truth.center, n_rays)
        peaks = radii[np.argmax(profiles, axis=1)]
        y, x = np.mgrid[0:h, 0:w]
        cx, cy = truth.center
        dist_map = np.abs(np.hypot(x - cx, y - cy) - truth.position)

    errors = np.abs(peaks - truth.position)
    rate = float(np.mean(errors <= tolerance_px))
    band = dist_map <= tolerance_px
    contrast = _ratio(float(values[band].mean()), float(values[~band].mean()) if (~band).any() else 0.0)
    return rate, float(errors.mean()), contrast


def peak_to_mean(resp) -> float:
    """Contrast statistic for shapes without a localized edge (1.0 when uniform)."""
    values = np.asarray(getattr(resp, "values", resp), dtype=np.float64)
    return _ratio(float(values.max()), float(values.mean()))


class BenchRow(NamedTuple):
    method: str
    shape: str
    noise_pct: float
    seed: int
    loc_rate: float
    mean_err: float
    contrast: float


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    # (method, spec, seed, exception) for cells that raised
    failures: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.method, r.shape, format_real(r.noise_pct), r.seed,
                             format_real(r.loc_rate), format_real(r.mean_err), format_real(r.contrast)])
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())

    def aggregate(self):
        """Mean and standard deviation per (method, shape, noise_pct) cell."""
        groups = {}
        for r in self.rows:
            groups.setdefault((r.method, r.shape, r.noise_pct), []).append(r)
        out = []
        for (method, shape, noise), rows in groups.items():
            entry = {"method": method, "shape": shape, "noise_pct": noise, "n": len(rows)}
            for metric in ("loc_rate", "mean_err", "contrast"):
                vals = np.array([getattr(r, metric) for r in rows], dtype=np.float64)
                entry[metric] = float(vals.mean())
                entry[metric + "_std"] = float(vals.std())
            out.append(entry)
        return out

    def mean(self, metric, method, shape, noise_pct) -> float:
        vals = [getattr(r, metric) for r in self.rows
                if r.method == method and r.shape == shape and r.noise_pct == noise_pct]
        return float(np.mean(vals)) if vals else math.nan


def run_bench(methods: Sequence[str], specs: Sequence[SyntheticSpec], seeds_per_cell: int,
              tolerance_px: int = 2, cfg: LstConfig = DEFAULT_CONFIG,
              on_cell: Optional[Callable] = None) -> BenchReport:
    """Evaluate every method on every spec for seeds ``spec.seed .. spec.seed + n - 1``.

    The noisy image for a (spec, seed) pair is shared by all methods. A cell
    that raises is logged and recorded in ``failures``; the rest still run.
    ``on_cell(method, spec, seed, image, response)`` is called per success.
    """
    if not methods or not specs:
        raise ValueError("methods and specs must be non-empty")
    if seeds_per_cell < 1:
        raise ValueError("seeds_per_cell must be >= 1")

    report = BenchReport()
    images = {}
    for method in methods:
        for spec in specs:
            for i in range(seeds_per_cell):
                seed = spec.seed + i
                try:
                    if (spec, seed) not in images:
                        images[spec, seed] = render(spec, seed)
                    img, truth = images[spec, seed]
                    resp = respond(img, method, cfg)
                    if truth.kind == "none":
                        rate, err, contrast = math.nan, math.nan, peak_to_mean(resp)
                    else:
                        rate, err, contrast = localization_metrics(resp, truth, tolerance_px)
                except Exception as exc:  # one bad cell must not sink the run
                    log.warning("cell %s/%s/%s%%/seed %d failed: %s",
                                method, spec.shape, spec.noise_pct, seed, exc)
                    report.failures.append((method, spec, seed, exc))
                    continue
                report.rows.append(BenchRow(method, spec.shape, float(spec.noise_pct), seed,
                                            rate, err, contrast))
                if on_cell is not None:
                    on_cell(method, spec, seed, img, resp)
    return report
