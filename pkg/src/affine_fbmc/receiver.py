"""Training-projection channel estimation and data detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization
from .errors import ConfigurationError, InputError
from .precoding import AffineMatrixSet

# At machine-precision scale so it only fires on genuine numerical fades.
FADE_FLOOR = 1e-12

ESTIMATOR_MODES = ("raw", "normalized")


@dataclass
class ChannelEstimate:
    """Per-subcarrier channel estimate (diagonal, stored as a vector).

    In "raw" mode the training amplitude sqrt(sigma_c2) stays multiplied into
    the estimate; "normalized" divides it out.
    """

    hhat: np.ndarray
    mode: str


def estimate_ls(
    received: np.ndarray,
    mats: AffineMatrixSet,
    mode: str = "raw",
    sigma_c2: float | None = None,
) -> ChannelEstimate:
    """Least-squares estimate: project the received grid onto the estimator.

    Only the diagonal of received @ estimator is formed; the off-diagonal
    content has no defined combining rule and is discarded. Normalized mode
    needs the training power coefficient to divide out its amplitude.
    """
    if mode not in ESTIMATOR_MODES:
        raise ConfigurationError(f"unknown estimator mode {mode!r}")
    received = np.asarray(received)
    expected = (mats.subcarriers, mats.total_instants)
    if received.shape != expected:
        raise InputError(f"received grid shape {received.shape}, expected {expected}")
    diag = np.einsum("ij,ji->i", received, mats.estimator)
    if mode == "normalized":
        if not sigma_c2 or sigma_c2 <= 0.0:
            raise ConfigurationError(
                "normalized estimation requires a positive training power "
                "coefficient (no training present)"
            )
        diag = diag / np.sqrt(sigma_c2)
    return ChannelEstimate(hhat=diag, mode=mode)


def channel_mse(estimate: ChannelEstimate, truth: ChannelRealization) -> float:
    """Mean squared error of the estimate against the true frequency response."""
    hhat = np.asarray(estimate.hhat)
    cfr = np.asarray(truth.cfr)
    if hhat.shape != cfr.shape:
        raise InputError(f"estimate length {hhat.shape} != channel length {cfr.shape}")
    diff = cfr - hhat
    return float(np.mean(np.abs(diff) ** 2))


def detect(
    received: np.ndarray,
    mats: AffineMatrixSet,
    estimate: ChannelEstimate,
) -> tuple[np.ndarray, int]:
    """Equalize, project onto the detector, take the real part.

    Returns (real grid of shape subcarriers x frames, fade_events). Estimated
    gains below FADE_FLOOR are clamped to the floor at their original phase
    before inversion; each clamped subcarrier counts as one fade event. Hard
    decisions are invariant under positive rescaling of the estimate, so raw
    and normalized estimates detect identically.
    """
    received = np.asarray(received)
    expected = (mats.subcarriers, mats.total_instants)
    if received.shape != expected:
        raise InputError(f"received grid shape {received.shape}, expected {expected}")
    gains = np.asarray(estimate.hhat)
    mags = np.abs(gains)
    faded = mags < FADE_FLOOR
    fade_events = int(np.count_nonzero(faded))
    if fade_events:
        unit = np.where(mags > 0, gains / np.where(mags > 0, mags, 1.0), 1.0)
        gains = np.where(faded, FADE_FLOOR * unit, gains)
    projected = received @ mats.detector
    equalized = projected / gains[:, None]
    return equalized.real, fade_events
