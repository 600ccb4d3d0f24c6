"""Local stimuli template (LST) edge operator.

The image is mapped to perceived brightness ``B = k * log10(I)``, its
central-difference gradient is passed through the exponential similarity
weight ``g * exp(-|g|)``, and the response is the Euclidean magnitude of the
two weighted components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .imgcore import ImageLike, ResponseMap, as_array, gradient, require_operable


@dataclass(frozen=True)
class LstConfig:
    k: float = 1.0
    alternate_form: bool = False
    # intensity floor on the 0-255 scale; log10(1) == 0
    epsilon_floor: float = 1.0

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if not self.epsilon_floor > 0:
            raise ValueError(f"epsilon_floor must be positive, got {self.epsilon_floor}")


DEFAULT_CONFIG = LstConfig()


class StimulusField(NamedTuple):
    vx: np.ndarray
    vy: np.ndarray


def perceived_brightness(img: ImageLike, cfg: LstConfig = DEFAULT_CONFIG) -> np.ndarray:
    arr = as_array(img)
    return cfg.k * np.log10(np.maximum(arr, cfg.epsilon_floor))


def shepard_weight(g):
    """Similarity-weighted gradient ``g * exp(-|g|)``.

    Odd in ``g``; the magnitude peaks at ``exp(-1)`` for ``|g| == 1`` and
    decays for larger gradients, which is what suppresses outliers.
    """
    g = np.asarray(g, dtype=np.float64)
    out = g * np.exp(-np.abs(g))
    return out if out.ndim else float(out)


def shepard_weight_alt(g):
    """Alternate weighting ``|g| * (1 - exp(-|g|))``, even and monotone in ``|g|``."""
    a = np.abs(np.asarray(g, dtype=np.float64))
    out = a * -np.expm1(-a)
    return out if out.ndim else float(out)


def stimulus_field(img: ImageLike, cfg: LstConfig = DEFAULT_CONFIG) -> StimulusField:
    arr = as_array(img)
    require_operable(arr)
    gx, gy = gradient(perceived_brightness(arr, cfg))
    weight = shepard_weight_alt if cfg.alternate_form else shepard_weight
    return StimulusField(weight(gx), weight(gy))


def stimulus_magnitude(field: StimulusField) -> np.ndarray:
    vx, vy = field
    return np.sqrt(vx * vx + vy * vy)


def local_stimuli(img: ImageLike, cfg: LstConfig = DEFAULT_CONFIG) -> ResponseMap:
    method = "lst-alt" if cfg.alternate_form else "lst"
    return ResponseMap(stimulus_magnitude(stimulus_field(img, cfg)), method)
