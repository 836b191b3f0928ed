"""Frequency-selective Rayleigh channel draws and their application."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputError


@dataclass
class ChannelRealization:
    """Time-domain taps and their frequency response on the subcarrier grid."""

    taps: np.ndarray
    cfr: np.ndarray

    @property
    def tap_count(self) -> int:
        return int(self.taps.size)


def draw_channel(tap_count: int, subcarriers: int, rng: np.random.Generator) -> ChannelRealization:
    """Draw i.i.d. complex Gaussian taps with a uniform power profile.

    The profile is scaled so the expected total tap power is 1. The frequency
    response is the subcarriers-point DFT of the zero-padded taps, which is
    why tap_count may not exceed the subcarrier count.
    """
    if tap_count < 1 or tap_count > subcarriers:
        raise ConfigurationError(
            f"tap count must be in [1, {subcarriers}], got {tap_count}"
        )
    scale = np.sqrt(0.5 / tap_count)
    taps = scale * (
        rng.standard_normal(tap_count) + 1j * rng.standard_normal(tap_count)
    )
    cfr = np.fft.fft(taps, subcarriers)
    return ChannelRealization(taps=taps, cfr=cfr)


def apply_channel(
    samples: np.ndarray,
    channel: ChannelRealization,
    noise_var: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Full linear convolution with the taps plus circular complex Gaussian noise.

    noise_var is the variance per complex sample; zero skips the noise draw so
    noiseless runs stay exact.
    """
    if noise_var < 0:
        raise InputError(f"noise variance must be >= 0, got {noise_var}")
    out = np.convolve(np.asarray(samples, dtype=complex), channel.taps)
    if noise_var > 0:
        scale = np.sqrt(noise_var / 2.0)
        out = out + scale * (
            rng.standard_normal(out.size) + 1j * rng.standard_normal(out.size)
        )
    return out
