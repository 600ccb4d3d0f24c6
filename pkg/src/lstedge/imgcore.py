"""Raster types, PGM/CSV I/O and the central-difference gradient."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .errors import (
    EmptyInput,
    ImageTooSmall,
    MalformedHeader,
    PgmError,
    TruncatedPayload,
    UnsupportedMaxval,
)

MIN_SIDE = 3


@dataclass(frozen=True, eq=False)
class GrayImage:
    """2-D grayscale raster stored as float64, shape ``(height, width)``.

    Intensities are nominally in [0, 255] but any finite real is accepted,
    since noisy benchmark images are deliberately left unclamped.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.array(self.pixels, dtype=np.float64)
        if arr.ndim != 2 or arr.size == 0:
            raise EmptyInput(f"expected a non-empty 2-D raster, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image contains non-finite intensities")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_flat(cls, width, height, pixels):
        pixels = np.asarray(pixels, dtype=np.float64)
        if pixels.size != width * height:
            raise ValueError(f"{pixels.size} pixels given for a {width}x{height} image")
        return cls(pixels.reshape(height, width))

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.pixels
        return self.pixels.astype(dtype)


class GradientField(NamedTuple):
    gx: np.ndarray
    gy: np.ndarray


@dataclass(frozen=True, eq=False)
class ResponseMap:
    """Non-negative per-pixel edge response tagged with the producing method."""

    values: np.ndarray
    method: str

    @property
    def shape(self):
        return self.values.shape


ImageLike = Union[GrayImage, np.ndarray]


def as_array(img: ImageLike) -> np.ndarray:
    """Return the float64 raster behind ``img`` (no copy for GrayImage)."""
    if isinstance(img, GrayImage):
        return img.pixels
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise EmptyInput(f"expected a non-empty 2-D raster, got shape {arr.shape}")
    return arr


def require_operable(arr: np.ndarray) -> None:
    h, w = arr.shape
    if h < MIN_SIDE or w < MIN_SIDE:
        raise ImageTooSmall(f"operators need at least {MIN_SIDE}x{MIN_SIDE} pixels, got {w}x{h}")


# --------------------------------------------------------------------------
# PGM


def _skip_space_and_comments(data: bytes, pos: int) -> int:
    n = len(data)
    while pos < n:
        c = data[pos]
        if c == ord("#"):
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
        elif chr(c).isspace():
            pos += 1
        else:
            break
    return pos


def _header_int(data: bytes, pos: int, what: str):
    pos = _skip_space_and_comments(data, pos)
    start = pos
    while pos < len(data) and chr(data[pos]).isdigit():
        pos += 1
    if pos == start:
        raise MalformedHeader(f"expected {what}", start)
    return int(data[start:pos]), pos


def parse_pgm(data: bytes) -> GrayImage:
    """Decode P2/P5 bytes into a GrayImage scaled to [0, 255]."""
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise MalformedHeader("missing P2/P5 magic number", 0)
    binary = data[:2] == b"P5"
    pos = 2
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval_at = _skip_space_and_comments(data, pos)
    maxval, pos = _header_int(data, pos, "maxval")
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"non-positive dimensions {width}x{height}", maxval_at)
    if maxval <= 0 or maxval > 255:
        raise UnsupportedMaxval(f"maxval {maxval} not in 1..255", maxval_at)
    if pos >= len(data) or not chr(data[pos]).isspace():
        raise MalformedHeader("expected whitespace after maxval", pos)
    count = width * height

    if binary:
        start = pos + 1
        payload = data[start:start + count]
        if len(payload) < count:
            raise TruncatedPayload(f"expected {count} samples, found {len(payload)}", len(data))
        values = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
        offset_of = lambda i: start + i  # noqa: E731
    else:
        tokens = data[pos:].split()
        if len(tokens) < count:
            raise TruncatedPayload(f"expected {count} samples, found {len(tokens)}", len(data))
        try:
            values = np.array([int(t) for t in tokens[:count]], dtype=np.float64)
        except ValueError:
            raise MalformedHeader("non-integer sample in ASCII payload", pos) from None
        offset_of = lambda i: pos  # noqa: E731

    over = np.flatnonzero(values > maxval)
    if over.size:
        raise PgmError(f"sample {int(values[over[0]])} exceeds maxval {maxval}", offset_of(int(over[0])))
    if maxval != 255:
        values = values * (255.0 / maxval)
    return GrayImage(values.reshape(height, width))


def read_pgm(path) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())


def to_bytes(img: ImageLike, normalize: bool = False) -> np.ndarray:
    """Quantize a raster to uint8 the way :func:`write_pgm` does."""
    arr = as_array(img)
    if normalize:
        lo, hi = float(arr.min()), float(arr.max())
        if hi == lo:
            return np.zeros(arr.shape, dtype=np.uint8)
        arr = (arr - lo) * (255.0 / (hi - lo))
    # round half up after clamping
    return np.floor(np.clip(arr, 0.0, 255.0) + 0.5).astype(np.uint8)


def write_pgm(img: ImageLike, path, normalize: bool = False) -> None:
    """Write a binary P5 file with maxval 255.

    With ``normalize`` the raster's [min, max] is stretched onto [0, 255]
    (a constant raster becomes all zeros); otherwise values are clamped.
    """
    payload = to_bytes(img, normalize)
    h, w = payload.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(payload.tobytes())


# --------------------------------------------------------------------------
# CSV


def format_real(v: float) -> str:
    v = float(v)
    if v == 0.0:
        return "-0" if math.copysign(1.0, v) < 0 else "0"
    if v.is_integer() and abs(v) < 2**53:
        return str(int(v))
    return repr(v)


def write_csv_matrix(raster, path) -> None:
    arr = np.asarray(raster, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.size == 0:
        raise EmptyInput("cannot write an empty raster")
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D raster, got shape {arr.shape}")
    with open(path, "w", newline="") as fh:
        for row in arr:
            fh.write(",".join(format_real(v) for v in row) + "\n")


def read_csv_matrix(path) -> np.ndarray:
    rows = [line.split(",") for line in Path(path).read_text().splitlines() if line]
    if not rows:
        raise EmptyInput(f"no rows in {path}")
    return np.array([[float(v) for v in row] for row in rows], dtype=np.float64)


# --------------------------------------------------------------------------
# gradient


def _diff_along(a: np.ndarray, axis: int) -> np.ndarray:
    a = np.moveaxis(a, axis, 0)
    out = np.empty_like(a)
    out[1:-1] = (a[2:] - a[:-2]) / 2.0
    out[0] = a[1] - a[0]
    out[-1] = a[-1] - a[-2]
    return np.moveaxis(out, 0, axis)


def gradient(img: ImageLike) -> GradientField:
    """Central differences in the interior, one-sided differences on the border.

    ``gx`` differentiates along columns (x), ``gy`` along rows (y).
    """
    arr = as_array(img)
    require_operable(arr)
    return GradientField(_diff_along(arr, 1), _diff_along(arr, 0))
