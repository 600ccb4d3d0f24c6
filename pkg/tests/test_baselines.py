import numpy as np
import pytest

from lstedge.baselines import (
    KIRSCH_MASKS,
    LAPLACIAN,
    convolve3x3,
    kirsch,
    laplacian_zero_cross,
    prewitt,
    sis,
    sobel,
)
from lstedge.binarize import binarize
from lstedge.errors import ImageTooSmall
from lstedge.sketchop import local_stimuli

OPERATORS = [sobel, prewitt, kirsch, sis]


def step(n=12, lo=0.0, hi=255.0, vertical=True):
    img = np.full((n, n), lo)
    img[:, n // 2:] = hi
    return img if vertical else img.T


def rng_image(seed, shape=(15, 11)):
    return np.random.default_rng(seed).uniform(0, 255, shape)


def test_zero_kernel():
    assert not convolve3x3(rng_image(0), np.zeros((3, 3))).any()


def test_identity_kernel():
    img = rng_image(1)
    k = np.zeros((3, 3))
    k[1, 1] = 1
    np.testing.assert_array_equal(convolve3x3(img, k), img)


def test_laplacian_on_constant_with_replicate_padding():
    assert not convolve3x3(np.full((5, 5), 17.0), LAPLACIAN).any()


def test_correlation_orientation():
    # no kernel flip: a kernel picking the right neighbour shifts the image left
    img = np.arange(25, dtype=float).reshape(5, 5)
    k = np.zeros((3, 3))
    k[1, 2] = 1
    out = convolve3x3(img, k)
    np.testing.assert_array_equal(out[:, :-1], img[:, 1:])
    np.testing.assert_array_equal(out[:, -1], img[:, -1])


def test_kernel_validation():
    with pytest.raises(ValueError):
        convolve3x3(rng_image(0), np.ones((2, 3)))


@pytest.mark.parametrize("op", OPERATORS)
def test_constant_gives_zero(op):
    assert not op(np.full((7, 9), 99.0)).values.any()


def test_laplacian_zero_cross_constant():
    assert not laplacian_zero_cross(np.full((7, 9), 99.0)).bits.any()


@pytest.mark.parametrize("op", OPERATORS + [laplacian_zero_cross])
def test_single_row_too_small(op):
    with pytest.raises(ImageTooSmall):
        op(np.zeros((1, 10)))


def test_sobel_step_hand_values():
    r = sobel(step()).values
    np.testing.assert_array_equal(r[:, 5], 1020.0)
    np.testing.assert_array_equal(r[:, 6], 1020.0)
    assert not r[:, :5].any() and not r[:, 7:].any()


def test_prewitt_step_hand_values():
    r = prewitt(step()).values
    np.testing.assert_array_equal(r[:, 5], 765.0)
    np.testing.assert_array_equal(r[:, 6], 765.0)
    assert not r[:, :5].any() and not r[:, 7:].any()


def test_kirsch_step_hand_values():
    # left of the step the east mask sees 5+5+5 on 255s; right of it the
    # west-facing mask gives -15*255, whose magnitude is the same
    r = kirsch(step()).values
    np.testing.assert_array_equal(r[:, 5], 15 * 255.0)
    np.testing.assert_array_equal(r[:, 6], 15 * 255.0)
    assert not r[:, :5].any() and not r[:, 7:].any()


def test_kirsch_masks():
    assert len(KIRSCH_MASKS) == 8
    for m in KIRSCH_MASKS:
        assert m.sum() == 0
        assert sorted(m.ravel()) == [-3] * 5 + [0] + [5] * 3
    assert len({m.tobytes() for m in KIRSCH_MASKS}) == 8


def test_sis_step_hand_values():
    r = sis(step()).values
    np.testing.assert_array_equal(r[:, 5], 255.0)
    np.testing.assert_array_equal(r[:, 6], 255.0)
    assert not r[:, :5].any() and not r[:, 7:].any()


@pytest.mark.parametrize("op", OPERATORS)
def test_rotation_symmetry(op):
    img = rng_image(2, (13, 13))
    np.testing.assert_array_equal(op(np.rot90(img)).values, np.rot90(op(img).values))


@pytest.mark.parametrize("op", [sobel, prewitt, sis])
def test_transpose_symmetry(op):
    img = rng_image(3)
    np.testing.assert_array_equal(op(img.T).values, op(img).values.T)


def test_sis_horizontal_step_is_transpose():
    np.testing.assert_array_equal(sis(step(vertical=False)).values, sis(step()).values.T)


@pytest.mark.parametrize("op", [sobel, prewitt, sis])
def test_shift_invariance(op):
    img = np.round(rng_image(4))
    np.testing.assert_allclose(op(img + 37.0).values, op(img).values, rtol=0, atol=1e-12)


@pytest.mark.parametrize("op", OPERATORS)
def test_positive_scaling_is_linear(op):
    img = rng_image(5)
    a = 2.75
    np.testing.assert_allclose(op(a * img).values, a * op(img).values, rtol=1e-12, atol=1e-12)


def test_zero_cross_step_line():
    bits = laplacian_zero_cross(step(), 0.0).bits
    expected = np.zeros_like(bits)
    expected[:, 5] = True
    np.testing.assert_array_equal(bits, expected)


def test_zero_cross_threshold_suppresses():
    assert not laplacian_zero_cross(step(), 255.0 * 2).bits.any()
    assert laplacian_zero_cross(step(), 255.0 * 2 - 1).bits.any()


def test_zero_cross_noise_is_dense_compared_to_lst():
    rng = np.random.default_rng(0)
    img = 128 + rng.normal(0, 25.0, (64, 64))
    zc = laplacian_zero_cross(img, 0.0).bits.mean()
    lst = binarize(local_stimuli(img)).bits.mean()
    assert zc > lst
    assert zc > 0.5
