"""Noise whitening for real 1-D stripes with colored noise.

The noise power spectrum is estimated from a user-designated signal-free
region by an averaged periodogram (50%-overlapping cosine-tapered windows,
normalized by the taper power so white unit-variance noise yields a flat
unit spectrum). Whitening rescales the measurement's spectrum by the
inverse square root of that estimate by default, flattening the noise
variance per frequency bin; the plain inverse is available as an
alternative mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Measurement, ValidationError, as_measurement

__all__ = ["PsdEstimate", "estimate_psd", "whiten"]

WHITEN_MODES = ("inverse_sqrt", "inverse")


@dataclass(frozen=True)
class PsdEstimate:
    """Two-sided noise power spectrum over ``window_len`` frequency bins."""

    psd: np.ndarray
    window_len: int
    n_segments: int
    floor_eps: float


def estimate_psd(y, noise_region, window_len: int = 256) -> PsdEstimate:
    """Averaged periodogram of a signal-free slice ``noise_region=(a, b)``.

    The region must span at least two window lengths. Bins are floored at
    ``1e-6`` of the spectrum peak so the inverse is always defined.
    """
    y = as_measurement(y)
    if window_len < 8:
        raise ValidationError("periodogram window must be at least 8 samples")
    a, b = int(noise_region[0]), int(noise_region[1])
    if not (0 <= a < b <= y.length):
        raise ValidationError(f"noise region {a}:{b} outside measurement")
    region = y.samples[a:b]
    if region.size < 2 * window_len:
        raise ValidationError(
            f"noise region too short: {region.size} < {2 * window_len}"
        )
    hop = window_len // 2
    taper = np.hanning(window_len)
    norm = float(np.sum(taper**2))
    n_segments = (region.size - window_len) // hop + 1
    acc = np.zeros(window_len)
    for i in range(n_segments):
        seg = region[i * hop : i * hop + window_len] * taper
        acc += np.abs(np.fft.fft(seg)) ** 2
    psd = acc / (n_segments * norm)
    peak = float(psd.max())
    if peak <= 0.0:
        raise ValidationError("noise region is identically zero")
    floor_eps = 1e-6 * peak
    return PsdEstimate(
        psd=np.maximum(psd, floor_eps),
        window_len=window_len,
        n_segments=n_segments,
        floor_eps=floor_eps,
    )


def whiten(y, psd: PsdEstimate, mode: str = "inverse_sqrt") -> Measurement:
    """Rescale the measurement spectrum by the inverse (sqrt) noise PSD.

    The PSD is interpolated from its ``window_len`` bins onto the
    measurement's frequency grid. Output length equals input length and
    the result is real by construction.
    """
    if mode not in WHITEN_MODES:
        raise ValidationError(f"unknown whitening mode {mode!r}")
    y = as_measurement(y)
    n = y.length
    spectrum = np.fft.rfft(y.samples)
    # Normalized frequency grids in [0, 0.5]; PSD grid wraps periodically.
    grid = np.arange(psd.window_len + 1) / psd.window_len
    values = np.append(psd.psd, psd.psd[0])
    freqs = np.arange(spectrum.size) / n
    interp = np.interp(freqs, grid, values)
    power = -0.5 if mode == "inverse_sqrt" else -1.0
    out = np.fft.irfft(spectrum * interp**power, n)
    return Measurement(out)
