import math

import numpy as np
import pytest

from holomem import (
    ImageRaw,
    Mode,
    amplitude_params,
    decode,
    encode,
    phase_params,
    phase_scale_for,
    preprocess,
    to_image,
)
from holomem.errors import ConstantImage, DimensionMismatch, PhaseOverflow
from holomem import linalg


def img(pixels, width=None, height=1):
    arr = np.asarray(pixels, dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    h, w = arr.shape
    return ImageRaw(width=w, height=h, pixels=arr)


def random_pattern(rng, n):
    v = rng.standard_normal(n)
    v -= v.mean()
    return v / np.linalg.norm(v)


class TestPreprocess:
    def test_two_pixel_image(self):
        v = preprocess(img([0, 255]))
        assert np.allclose(v, [-1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)

    def test_constant_image_rejected(self):
        with pytest.raises(ConstantImage):
            preprocess(img([10, 10, 10]))

    def test_zero_mean_unit_norm(self):
        rng = np.random.default_rng(21)
        px = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
        v = preprocess(ImageRaw(width=16, height=16, pixels=px))
        assert abs(v.mean()) < 1e-12
        assert abs(np.linalg.norm(v) - 1) < 1e-12

    def test_direction_survives_rendering(self):
        # requantization to 8 bits is the only loss
        rng = np.random.default_rng(22)
        for _ in range(5):
            p = random_pattern(rng, 256)
            again = preprocess(to_image(p, 16, 16))
            cos = abs(np.dot(p, again))
            assert cos > 0.999


class TestEncode:
    def test_amplitude_keeps_values(self):
        p = np.array([-1 / np.sqrt(2), 1 / np.sqrt(2)])
        w = encode(p, amplitude_params())
        assert np.array_equal(w.amplitudes.real, p)
        assert np.all(w.amplitudes.imag == 0)

    def test_phase_zero_value_maps_to_unit_phasor(self):
        p = np.array([0.0, 0.5, -0.5, 0.0])
        w = encode(p, phase_params(4, 1.0))
        assert w.amplitudes[0] == pytest.approx(0.5 + 0j)

    def test_phase_quarter_turn(self):
        w = encode(np.array([1.0, 0, 0, 0]), phase_params(4, math.pi / 2))
        assert w.amplitudes[0] == pytest.approx(0.5j)
        assert w.amplitudes[1] == pytest.approx(0.5 + 0j)

    def test_phase_overflow(self):
        with pytest.raises(PhaseOverflow):
            encode(np.array([2.0, 0, 0, 0]), phase_params(4, math.pi / 2))

    def test_phase_constant_magnitude(self):
        rng = np.random.default_rng(23)
        p = random_pattern(rng, 64)
        w = encode(p, phase_params(64, phase_scale_for([p])))
        assert np.max(np.abs(np.abs(w.amplitudes) - 1 / 8)) < 1e-12

    def test_phase_state_unit_norm(self):
        rng = np.random.default_rng(24)
        p = random_pattern(rng, 100)
        w = encode(p, phase_params(100, phase_scale_for([p])))
        assert abs(linalg.inner(w.amplitudes, w.amplitudes) - 1) < 1e-12

    def test_phase_params_pinned_to_dimension(self):
        with pytest.raises(DimensionMismatch):
            encode(np.zeros(8), phase_params(4, 1.0))


class TestDecode:
    def test_amplitude_round_trip_exact(self):
        rng = np.random.default_rng(25)
        p = random_pattern(rng, 50)
        params = amplitude_params()
        assert np.array_equal(decode(encode(p, params), params), p)

    def test_phase_round_trip(self):
        rng = np.random.default_rng(26)
        for _ in range(10):
            p = random_pattern(rng, 128)
            params = phase_params(128, phase_scale_for([p]))
            back = decode(encode(p, params), params)
            assert np.max(np.abs(back - p)) < 1e-10

    def test_zero_component_decodes_to_zero(self):
        from holomem import WaveState
        params = phase_params(2, 1.0)
        w = WaveState(np.array([0j, 0.5 + 0.5j]), params)
        assert decode(w, params)[0] == 0.0


class TestToImage:
    def test_affine_endpoints(self):
        out = to_image(np.array([-1.0, 0.0, 1.0]), 3, 1)
        assert out.pixels.tolist() == [[0, 128, 255]]

    def test_degenerate_all_equal(self):
        out = to_image(np.full(6, 3.7), 3, 2)
        assert np.all(out.pixels == 128)

    def test_full_range_integers_round_trip(self):
        rng = np.random.default_rng(27)
        vals = rng.integers(0, 256, size=64).astype(np.float64)
        vals[0], vals[1] = 0.0, 255.0
        out = to_image(vals, 8, 8)
        assert np.array_equal(out.pixels.ravel(), vals.astype(np.uint8))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            to_image(np.zeros(5), 2, 2)


class TestOrderPreservation:
    def test_phase_overlap_tracks_pattern_dot_product(self):
        # small-angle encoding keeps the similarity ordering: rank
        # correlation between Re<w_p|w_q> and p.q over random pairs
        rng = np.random.default_rng(28)
        n, beta = 256, 0.1
        params = phase_params(n, beta)
        dots, overlaps = [], []
        for _ in range(100):
            p = random_pattern(rng, n)
            q = random_pattern(rng, n)
            wp, wq = encode(p, params), encode(q, params)
            dots.append(float(np.dot(p, q)))
            overlaps.append(linalg.inner(wp.amplitudes, wq.amplitudes).real)

        def ranks(x):
            order = np.argsort(x)
            r = np.empty(len(x))
            r[order] = np.arange(len(x))
            return r

        rho = np.corrcoef(ranks(dots), ranks(overlaps))[0, 1]
        assert rho > 0.99


class TestMode:
    def test_parse(self):
        assert Mode.parse("amplitude") is Mode.AMPLITUDE
        assert Mode.parse("PHASE") is Mode.PHASE
        with pytest.raises(ValueError):
            Mode.parse("fourier")
