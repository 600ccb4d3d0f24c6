"""Otsu binarization of response maps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHistogram, EmptyInput

NBINS = 256


@dataclass(frozen=True, eq=False)
class BinaryMap:
    bits: np.ndarray
    # set when the source raster was constant and no threshold exists
    degenerate: bool = False

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"expected a 2-D bit raster, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits)

    @property
    def width(self):
        return self.bits.shape[1]

    @property
    def height(self):
        return self.bits.shape[0]

    @property
    def shape(self):
        return self.bits.shape

    def as_float(self) -> np.ndarray:
        return self.bits.astype(np.float64)


def _raster(values) -> np.ndarray:
    arr = np.asarray(getattr(values, "values", values), dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("empty raster")
    if not np.all(np.isfinite(arr)):
        raise ValueError("raster contains non-finite values")
    return arr


def bin_indices(values) -> np.ndarray:
    """Map values onto 256 equal-width bins spanning the raster's own [min, max]."""
    arr = _raster(values)
    lo, hi = float(arr.min()), float(arr.max())
    if hi == lo:
        raise DegenerateHistogram("constant raster has no threshold")
    idx = np.floor((arr - lo) / (hi - lo) * NBINS).astype(np.int64)
    return np.minimum(idx, NBINS - 1)


def otsu_bin(values) -> int:
    """Bin index maximizing between-class variance; class 0 is bins <= t.

    Computed with exact integer arithmetic so equal variances tie exactly,
    and ties go to the lowest bin.
    """
    counts = np.bincount(bin_indices(values).ravel(), minlength=NBINS).tolist()
    total_n = sum(counts)
    total_s = sum(i * c for i, c in enumerate(counts))
    best_t, best_num, best_den = 0, 0, 1
    n0 = s0 = 0
    for t in range(NBINS):
        n0 += counts[t]
        s0 += t * counts[t]
        n1 = total_n - n0
        if n0 == 0 or n1 == 0:
            continue
        s1 = total_s - s0
        # variance ~ (s0*n1 - s1*n0)^2 / (n0*n1), compared by cross-multiplication
        num = (s0 * n1 - s1 * n0) ** 2
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def otsu_threshold(values) -> float:
    """Otsu threshold in raster units: the upper edge of the winning bin.

    Values strictly above it are foreground; the threshold bin itself is
    background.
    """
    arr = _raster(values)
    t = otsu_bin(arr)
    lo, hi = float(arr.min()), float(arr.max())
    return lo + (t + 1) * (hi - lo) / NBINS


def binarize(resp) -> BinaryMap:
    """Foreground where a response lies above its Otsu bin.

    A constant response yields an all-false map with ``degenerate`` set.
    """
    arr = _raster(resp)
    try:
        idx = bin_indices(arr)
    except DegenerateHistogram:
        return BinaryMap(np.zeros(arr.shape, dtype=bool), degenerate=True)
    t = otsu_bin(arr)
    return BinaryMap(idx > t)
