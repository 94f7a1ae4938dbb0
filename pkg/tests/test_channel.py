"""Channel tests: Lambertian gains, occlusion geometry, mixing and noise."""

import math

import numpy as np
import pytest

from vlclink import (
    ChannelState,
    Geometry,
    Obstacle,
    ParameterError,
    apply_channel,
    channel_matrix,
    los_gain,
    make_rng,
    occlusion,
    occlusion_factor,
    svd2,
)

DEFAULT_OBS = Obstacle(diameter_cm=4.5, z_cm=109.0, x_cm=0.0)


class TestLosGain:
    def test_on_axis_reference_value(self):
        # (m+1) A / (2 pi d^2) with m=1, A=1, d=218
        got = los_gain((0.0, 0.0), (0.0, 218.0), 1.0, 1.0, 60.0)
        assert got == pytest.approx(2.0 / (2.0 * math.pi * 218.0**2), rel=1e-12)
        assert got == pytest.approx(6.70e-6, rel=1e-3)

    def test_outside_fov_is_zero(self):
        # 45 degrees off axis with a 30 degree field of view
        assert los_gain((0.0, 0.0), (218.0, 218.0), 1.0, 1.0, 30.0) == 0.0

    def test_inverse_square(self):
        near = los_gain((0.0, 0.0), (0.0, 100.0), 1.0, 1.0, 60.0)
        far = los_gain((0.0, 0.0), (0.0, 200.0), 1.0, 1.0, 60.0)
        assert near == pytest.approx(4.0 * far, rel=1e-12)

    def test_same_plane_rejected(self):
        with pytest.raises(ParameterError):
            los_gain((0.0, 0.0), (1.0, 0.0), 1.0, 1.0, 60.0)


class TestOcclusion:
    def test_cross_link_blocked_at_center(self):
        assert occlusion((-2.5, 0.0), (2.5, 218.0), DEFAULT_OBS) == 0

    def test_direct_link_clear_at_center(self):
        assert occlusion((-2.5, 0.0), (-2.5, 218.0), DEFAULT_OBS) == 1

    def test_all_links_clear_far_away(self):
        obs = Obstacle(diameter_cm=4.5, z_cm=109.0, x_cm=65.0)
        for tx in ((-2.5, 0.0), (2.5, 0.0)):
            for rx in ((-2.5, 218.0), (2.5, 218.0)):
                assert occlusion(tx, rx, obs) == 1

    def test_mirror_symmetry(self):
        # x -> -x with swapped LED/PD indices leaves the pattern unchanged
        txs = ((-2.5, 0.0), (2.5, 0.0))
        rxs = ((-2.5, 218.0), (2.5, 218.0))
        for x in np.linspace(-10, 10, 81):
            a = Obstacle(4.5, 109.0, float(x))
            b = Obstacle(4.5, 109.0, float(-x))
            for i in range(2):
                for j in range(2):
                    assert occlusion(txs[i], rxs[j], a) == occlusion(txs[1 - i], rxs[1 - j], b)

    def test_soft_edge_ramp(self):
        obs = Obstacle(diameter_cm=4.5, z_cm=109.0, x_cm=0.0)
        tx, rx = (-2.5, 0.0), (-2.5, 218.0)  # ray at distance 2.5 from axis
        hard = occlusion_factor(tx, rx, obs, 0.0)
        assert hard == 1.0
        soft = occlusion_factor(tx, rx, obs, 5.0)
        # (2.5 - 2.25 + 5) / 10
        assert soft == pytest.approx(0.525, rel=1e-12)
        assert occlusion_factor(tx, rx, None, 5.0) == 1.0

    def test_obstacle_outside_planes_rejected(self):
        with pytest.raises(ParameterError):
            occlusion((-2.5, 0.0), (-2.5, 218.0), Obstacle(4.5, 300.0, 0.0))


class TestChannelMatrix:
    def test_center_obstacle_kills_cross_paths_only(self):
        geom = Geometry()  # hard shadow, obstacle at x=0
        h, norm = channel_matrix(geom)
        assert norm > 0
        assert h[0, 1] == 0 and h[1, 0] == 0
        assert h[0, 0].real > 0 and h[1, 1].real > 0

    def test_far_obstacle_near_diagonal_dominant(self):
        geom = Geometry.from_separations(lambert_m=20000.0).with_obstacle_x(65.0)
        h, _ = channel_matrix(geom)
        assert np.all(h.real > 0)
        assert h[0, 0].real > h[0, 1].real
        assert h[1, 1].real > h[1, 0].real

    def test_unobstructed_mirror_symmetry(self):
        h, _ = channel_matrix(Geometry().without_obstacle())
        assert h[0, 0] == h[1, 1]
        assert h[0, 1] == h[1, 0]
        assert h[0, 0].real == pytest.approx(1.0, rel=1e-12)  # normalised direct path

    def test_gain_scaling_scales_singular_values(self):
        h, _ = channel_matrix(Geometry.from_separations(lambert_m=20000.0).without_obstacle())
        s = svd2(h)
        for alpha in (0.25, 3.0, 117.0):
            sa = svd2(alpha * h)
            assert sa.sigma1 == pytest.approx(alpha * s.sigma1, rel=1e-12)
            assert sa.sigma2 == pytest.approx(alpha * s.sigma2, rel=1e-12)


class TestApplyChannel:
    def test_identity_passthrough(self):
        rng = make_rng(0)
        x = rng.standard_normal((2, 512)) + 1j * rng.standard_normal((2, 512))
        y = apply_channel(x, ChannelState(h=np.eye(2, dtype=complex), n0=1e-30), 1)
        assert np.allclose(y, x, atol=1e-12)

    def test_zero_channel_pure_noise_variance(self):
        x = np.zeros((2, 1_000_000), complex)
        y = apply_channel(x, ChannelState(h=np.zeros((2, 2), complex), n0=1.0), 2)
        var = float(np.mean(np.abs(y) ** 2))
        assert var == pytest.approx(1.0, rel=0.01)

    def test_seed_determinism(self):
        rng = make_rng(5)
        x = rng.standard_normal((2, 256)) + 1j * rng.standard_normal((2, 256))
        state = ChannelState(h=np.eye(2, dtype=complex), n0=0.5)
        y1 = apply_channel(x, state, 99)
        y2 = apply_channel(x, state, 99)
        assert np.array_equal(y1, y2)
        y3 = apply_channel(x, state, 100)
        assert not np.array_equal(y1, y3)

    def test_mixing_matrix_applied(self):
        h = np.array([[0.5, 0.1], [0.2, 0.8]], dtype=complex)
        x = make_rng(6).standard_normal((2, 64)) + 0j
        y = apply_channel(x, ChannelState(h=h, n0=1e-30), 3)
        assert np.allclose(y, h @ x, atol=1e-12)

    def test_lowpass_with_equalizer_is_transparent_at_zero_noise(self):
        from vlclink import FrameSpec, build_frame, matched_filter_downsample, qam_map

        spec = FrameSpec(payload_len=512)
        rng = make_rng(8)
        bits = rng.integers(0, 2, size=(2, 2 * 512))
        payload = np.stack([qam_map(bits[0], 4), qam_map(bits[1], 4)])
        frame = build_frame(payload, spec, "SM")
        state = ChannelState(h=np.eye(2, dtype=complex), n0=1e-30, f3db_norm=0.2, equalize=True)
        y = apply_channel(frame.branch_samples, state, 4, sps=spec.sps)
        lay = frame.layout
        syms = matched_filter_downsample(y[0], spec, 0, spec.n_symbols)
        got = syms[lay.payload : lay.end]
        err = math.sqrt(
            float(np.sum(np.abs(got - payload[0]) ** 2) / np.sum(np.abs(payload[0]) ** 2))
        )
        assert err < 0.02

    def test_lowpass_without_equalizer_distorts(self):
        rng = make_rng(9)
        x = rng.standard_normal((2, 2048)) + 1j * rng.standard_normal((2, 2048))
        state = ChannelState(h=np.eye(2, dtype=complex), n0=1e-30, f3db_norm=0.05, equalize=False)
        y = apply_channel(x, state, 5, sps=4)
        assert not np.allclose(y, x, atol=0.1)
