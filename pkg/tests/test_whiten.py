import numpy as np
import pytest

from dpdetect import (
    Measurement,
    PsdEstimate,
    ValidationError,
    estimate_psd,
    whiten,
)


def test_white_noise_psd_nearly_flat():
    rng = np.random.default_rng(90)
    y = Measurement(rng.standard_normal(256 * 33))  # ~64 overlapping segments
    psd = estimate_psd(y, (0, y.length), window_len=256)
    assert psd.n_segments >= 64
    assert psd.psd.max() / psd.psd.min() < 3.0
    assert psd.psd.mean() == pytest.approx(1.0, rel=0.1)


def test_psd_quadratic_in_amplitude():
    rng = np.random.default_rng(91)
    base = rng.standard_normal(4096)
    a = estimate_psd(Measurement(base), (0, 4096))
    b = estimate_psd(Measurement(2.5 * base), (0, 4096))
    np.testing.assert_allclose(b.psd, 2.5**2 * a.psd, rtol=1e-9)


def test_zero_region_rejected():
    y = Measurement(np.concatenate([np.zeros(1024), np.ones(10)]))
    with pytest.raises(ValidationError):
        estimate_psd(y, (0, 1024))


def test_region_too_short():
    y = Measurement(np.random.default_rng(92).standard_normal(600))
    with pytest.raises(ValidationError):
        estimate_psd(y, (0, 400), window_len=256)
    with pytest.raises(ValidationError):
        estimate_psd(y, (100, 50), window_len=16)


def test_flat_psd_is_global_rescale():
    rng = np.random.default_rng(93)
    y = Measurement(rng.standard_normal(501))
    flat = PsdEstimate(psd=np.full(64, 9.0), window_len=64, n_segments=1, floor_eps=1e-9)
    np.testing.assert_allclose(whiten(y, flat).samples, y.samples / 3.0, atol=1e-9)
    np.testing.assert_allclose(
        whiten(y, flat, mode="inverse").samples, y.samples / 9.0, atol=1e-9
    )


def test_self_whitened_noise_has_unit_variance():
    rng = np.random.default_rng(94)
    y = Measurement(np.sqrt(3.0) * rng.standard_normal(256 * 40))
    psd = estimate_psd(y, (0, y.length))
    out = whiten(y, psd)
    assert abs(out.samples.var() - 1.0) <= 0.2


def test_whitening_linear_in_measurement():
    rng = np.random.default_rng(95)
    noise = rng.standard_normal(2048)
    psd = estimate_psd(Measurement(noise), (0, 2048))
    a = rng.standard_normal(300)
    b = rng.standard_normal(300)
    combined = whiten(Measurement(2.0 * a + b), psd).samples
    separate = 2.0 * whiten(Measurement(a), psd).samples + whiten(Measurement(b), psd).samples
    np.testing.assert_allclose(combined, separate, atol=1e-9)


def test_output_length_and_realness():
    rng = np.random.default_rng(96)
    y = Measurement(rng.standard_normal(777))
    psd = estimate_psd(Measurement(rng.standard_normal(1200)), (0, 1200))
    out = whiten(y, psd)
    assert out.length == 777
    assert np.isrealobj(out.samples)


def test_unknown_mode_rejected():
    psd = PsdEstimate(psd=np.ones(16), window_len=16, n_segments=1, floor_eps=1e-9)
    with pytest.raises(ValidationError):
        whiten(np.ones(32), psd, mode="log")
