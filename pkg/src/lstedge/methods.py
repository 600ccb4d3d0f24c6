"""Name-based dispatch over every edge operator in the package."""

from __future__ import annotations

from .baselines import kirsch, laplacian_zero_cross, prewitt, sis, sobel
from .imgcore import ImageLike, ResponseMap
from .sketchop import DEFAULT_CONFIG, LstConfig, local_stimuli

METHODS = ("lst", "lst-alt", "sobel", "prewitt", "kirsch", "sis", "laplacian")

_BASELINES = {"sobel": sobel, "prewitt": prewitt, "kirsch": kirsch, "sis": sis}


def check_method(method: str) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; valid methods: {', '.join(METHODS)}")
    return method


def respond(img: ImageLike, method: str, cfg: LstConfig = DEFAULT_CONFIG,
            zc_threshold: float = 0.0) -> ResponseMap:
    """Run ``method`` on ``img``.

    The Laplacian zero-crossing detector yields a 0/1 response so it can be
    scored with the same metrics as the graded operators.
    """
    check_method(method)
    if method == "lst":
        return local_stimuli(img, LstConfig(cfg.k, False, cfg.epsilon_floor))
    if method == "lst-alt":
        return local_stimuli(img, LstConfig(cfg.k, True, cfg.epsilon_floor))
    if method == "laplacian":
        return ResponseMap(laplacian_zero_cross(img, zc_threshold).as_float(), "laplacian")
    return _BASELINES[method](img)
