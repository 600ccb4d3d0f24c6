"""Classical detectors used as comparison baselines.

All kernels are written in correlation orientation and applied with
edge-replicate padding, so every output has the input's shape.

``sis`` is a stand-in: the name refers to a detector that is never defined
in the literature this package follows, so here it is the larger of the
absolute horizontal and vertical central differences.
"""

from __future__ import annotations

import numpy as np

from .binarize import BinaryMap
from .imgcore import ImageLike, ResponseMap, as_array, require_operable

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
PREWITT_X = np.array([[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]], dtype=np.float64)
LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float64)

# clockwise ring of neighbour positions starting at the north-west corner
_RING = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]


def _kirsch_masks():
    masks = []
    for shift in range(8):
        m = np.full((3, 3), -3.0)
        m[1, 1] = 0.0
        for j in range(3):
            m[_RING[(shift + j) % 8]] = 5.0
        masks.append(m)
    return masks


KIRSCH_MASKS = _kirsch_masks()


def as_kernel(kern) -> np.ndarray:
    k = np.asarray(kern, dtype=np.float64)
    if k.shape != (3, 3) or not np.all(np.isfinite(k)):
        raise ValueError(f"expected 9 finite coefficients in a 3x3 array, got shape {k.shape}")
    return k


def convolve3x3(img: ImageLike, kern) -> np.ndarray:
    """Correlate ``img`` with a 3x3 kernel (no flip), replicating edge pixels."""
    arr = as_array(img)
    require_operable(arr)
    k = as_kernel(kern)
    h, w = arr.shape
    padded = np.pad(arr, 1, mode="edge")

    def term(i, j):
        return k[i, j] * padded[i:i + h, j:j + w] if k[i, j] != 0.0 else 0.0

    # Terms are summed as opposite-neighbour pairs. Rotating or transposing
    # the image only permutes operands of commutative additions, so those
    # symmetries hold bit-for-bit.
    edges = (term(0, 1) + term(2, 1)) + (term(1, 0) + term(1, 2))
    corners = (term(0, 0) + term(2, 2)) + (term(0, 2) + term(2, 0))
    out = term(1, 1) + edges + corners
    return np.broadcast_to(out, arr.shape).astype(np.float64)


def _pair_magnitude(img, kx, method):
    gx = convolve3x3(img, kx)
    gy = convolve3x3(img, kx.T)
    return ResponseMap(np.sqrt(gx * gx + gy * gy), method)


def sobel(img: ImageLike) -> ResponseMap:
    return _pair_magnitude(img, SOBEL_X, "sobel")


def prewitt(img: ImageLike) -> ResponseMap:
    return _pair_magnitude(img, PREWITT_X, "prewitt")


def kirsch(img: ImageLike) -> ResponseMap:
    """Maximum absolute response over the eight compass masks."""
    arr = as_array(img)
    out = np.zeros_like(arr)
    for m in KIRSCH_MASKS:
        np.maximum(out, np.abs(convolve3x3(arr, m)), out=out)
    return ResponseMap(out, "kirsch")


def sis(img: ImageLike) -> ResponseMap:
    arr = as_array(img)
    require_operable(arr)
    p = np.pad(arr, 1, mode="edge")
    ex = np.abs(p[1:-1, 2:] - p[1:-1, :-2])
    ey = np.abs(p[2:, 1:-1] - p[:-2, 1:-1])
    return ResponseMap(np.maximum(ex, ey), "sis")


def laplacian_zero_cross(img: ImageLike, threshold: float = 0.0) -> BinaryMap:
    """Unsmoothed Marr-style detector: sign changes of the 3x3 Laplacian.

    For each horizontally or vertically adjacent pair whose Laplacian values
    have strictly opposite signs and differ by more than ``threshold``, the
    left (or upper) pixel of the pair is marked.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    lap = convolve3x3(img, LAPLACIAN)
    bits = np.zeros(lap.shape, dtype=bool)
    a, b = lap[:, :-1], lap[:, 1:]
    bits[:, :-1] |= (np.sign(a) * np.sign(b) < 0) & (np.abs(a - b) > threshold)
    a, b = lap[:-1, :], lap[1:, :]
    bits[:-1, :] |= (np.sign(a) * np.sign(b) < 0) & (np.abs(a - b) > threshold)
    return BinaryMap(bits)
