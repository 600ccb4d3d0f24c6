import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lstedge.errors import ImageTooSmall
from lstedge.imgcore import gradient
from lstedge.sketchop import (
    LstConfig,
    StimulusField,
    local_stimuli,
    perceived_brightness,
    shepard_weight,
    shepard_weight_alt,
    stimulus_field,
    stimulus_magnitude,
)
from oracles import scalar_lst

mpmath.mp.dps = 40


def test_brightness_values():
    assert np.all(perceived_brightness(np.full((3, 3), 10.0)) == 1.0)
    assert np.all(perceived_brightness(np.full((3, 3), 100.0), LstConfig(k=2)) == 4.0)
    assert np.all(perceived_brightness(np.zeros((3, 3))) == 0.0)


def test_brightness_floor_handles_negatives():
    b = perceived_brightness(np.array([[-50.0, 0.5, 1.0]]))
    np.testing.assert_array_equal(b, 0.0)
    assert np.all(np.isfinite(b))


def test_config_validation():
    with pytest.raises(ValueError):
        LstConfig(k=0)
    with pytest.raises(ValueError):
        LstConfig(epsilon_floor=-1)


def test_shepard_weight_values():
    assert shepard_weight(0.0) == 0.0
    assert shepard_weight(1.0) == 0.36787944117144233
    assert shepard_weight(-1.0) == -0.36787944117144233
    assert shepard_weight(1.0) == float(mpmath.exp(-1))


def test_shepard_weight_alt_values():
    assert shepard_weight_alt(0.0) == 0.0
    assert shepard_weight_alt(1.0) == pytest.approx(0.6321205588285577, rel=1e-15)
    assert shepard_weight_alt(-2.0) == pytest.approx(1.7293294335267746, rel=1e-15)
    assert shepard_weight_alt(-2.0) == pytest.approx(float(2 * (1 - mpmath.exp(-2))), rel=1e-15)


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_shepard_weight_odd(g):
    assert shepard_weight(-g) == -shepard_weight(g)


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_shepard_alt_even_nonnegative(g):
    assert shepard_weight_alt(-g) == shepard_weight_alt(g) >= 0


@given(st.floats(0, 50), st.floats(0, 50))
def test_shepard_alt_monotone(a, b):
    lo, hi = sorted((a, b))
    assert shepard_weight_alt(lo) <= shepard_weight_alt(hi)


def test_shepard_weight_unimodal():
    g = np.linspace(0, 5, 10001)
    f = shepard_weight(g)
    peak = np.argmax(f)
    assert g[peak] == 1.0
    assert np.all(np.diff(f[: peak + 1]) > 0)
    assert np.all(np.diff(f[peak:]) < 0)
    assert f.max() == pytest.approx(math.exp(-1), rel=1e-15)


def test_outliers_suppressed():
    assert shepard_weight(10.0) < shepard_weight(1.0)


def test_constant_image_zero_response():
    resp = local_stimuli(np.full((8, 8), 42.0))
    assert resp.method == "lst"
    assert not resp.values.any()


def test_magnitude_law():
    field = StimulusField(np.array([[3.0]]), np.array([[4.0]]))
    assert stimulus_magnitude(field)[0, 0] == 5.0


def test_too_small():
    with pytest.raises(ImageTooSmall):
        local_stimuli(np.ones((2, 8)))


def step_image(n=64, lo=1.0, hi=100.0):
    img = np.full((n, n), lo)
    img[:, n // 2:] = hi
    return img


def test_step_matches_scalar_reference_and_localizes():
    img = step_image()
    resp = local_stimuli(img).values
    np.testing.assert_allclose(resp, scalar_lst(img.tolist()), rtol=0, atol=1e-12)
    peaks = np.argmax(resp, axis=1)
    assert np.all(np.abs(peaks - 32) <= 1)


def test_random_image_matches_scalar_reference():
    rng = np.random.default_rng(11)
    img = rng.uniform(-20, 300, (17, 13))
    cfg = LstConfig(k=1.5, epsilon_floor=0.5)
    np.testing.assert_allclose(local_stimuli(img, cfg).values,
                               scalar_lst(img.tolist(), 1.5, 0.5), rtol=0, atol=1e-12)


def test_gradient_taken_on_brightness_not_intensity():
    img = step_image(16, 1.0, 100.0)
    vx, _ = stimulus_field(img)
    # log10 step of 2 over a two-pixel stencil gives g == 1 at the step
    assert vx[0, 8] == pytest.approx(math.exp(-1))
    raw_gx, _ = gradient(img)
    assert vx[0, 8] != pytest.approx(shepard_weight(raw_gx[0, 8]))


def test_alternate_form_flag():
    img = step_image(16)
    cfg = LstConfig(alternate_form=True)
    resp = local_stimuli(img, cfg)
    assert resp.method == "lst-alt"
    gx, gy = gradient(perceived_brightness(img))
    expected = np.hypot(shepard_weight_alt(gx), shepard_weight_alt(gy))
    np.testing.assert_allclose(resp.values, expected, rtol=0, atol=1e-15)


def test_transpose_symmetry():
    rng = np.random.default_rng(5)
    img = rng.uniform(0, 255, (20, 14))
    np.testing.assert_allclose(local_stimuli(img.T).values, local_stimuli(img).values.T,
                               rtol=0, atol=1e-12)


def test_brightness_derivative_matches_analytic():
    cfg = LstConfig(k=1.3)
    img = np.full((3, 3), 57.0)
    h = 1e-4
    up, down = img.copy(), img.copy()
    up[1, 1] += h
    down[1, 1] -= h
    fd = (perceived_brightness(up, cfg)[1, 1] - perceived_brightness(down, cfg)[1, 1]) / (2 * h)
    assert fd == pytest.approx(cfg.k / (57.0 * math.log(10)), rel=1e-6)


def test_zero_response_iff_constant_brightness():
    img = np.full((6, 6), 0.3)
    img[2, 3] = -5.0  # below the floor, brightness stays constant
    assert not local_stimuli(img).values.any()
    img[2, 3] = 2.0
    assert local_stimuli(img).values.any()


def test_not_scale_invariant_unlike_baselines():
    rng = np.random.default_rng(9)
    img = rng.uniform(1, 50, (10, 10))
    a = local_stimuli(img).values
    b = local_stimuli(3.0 * img).values
    assert not np.allclose(b, 3.0 * a)


def test_argmax_survives_k_rescaling_on_profile():
    # argmax along a smooth monotone profile is unchanged when k rescales B
    x = np.arange(32, dtype=float)
    profile = 1 + 200 / (1 + np.exp(-(x - 15) / 2.0))
    img = np.tile(profile, (5, 1))
    p1 = np.argmax(local_stimuli(img, LstConfig(k=1)).values[2])
    p2 = np.argmax(local_stimuli(img, LstConfig(k=0.5)).values[2])
    assert p1 == p2
