"""Perceived-brightness edge detection with classical baselines and benchmarks."""

from .baselines import convolve3x3, kirsch, laplacian_zero_cross, prewitt, sis, sobel
from .binarize import BinaryMap, binarize, otsu_threshold
from .imgcore import (
    GradientField,
    GrayImage,
    ResponseMap,
    gradient,
    read_csv_matrix,
    read_pgm,
    write_csv_matrix,
    write_pgm,
)
from .methods import METHODS, respond
from .sketchop import (
    LstConfig,
    StimulusField,
    local_stimuli,
    perceived_brightness,
    shepard_weight,
    shepard_weight_alt,
    stimulus_field,
)

__version__ = "0.1.0"
