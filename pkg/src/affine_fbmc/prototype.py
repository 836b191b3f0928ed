"""PHYDYAS prototype filter (frequency-sampling design) and its validity checks.

The taps come from sampling the short frequency response with coefficients
(1, 0.97195983, 1/sqrt(2), 0.23514695) at b*N points offset by half a sample.
The half-sample offset keeps the taps even-symmetric about (b*N - 1) / 2, so
taps[k] == taps[-1 - k] holds exactly (the two halves are mirror copies of the
same floats). Energy normalization to 1 is applied last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

# Frequency-domain samples of the b = 4 design. Adjacent pairs are
# power-complementary: H1**2 + H3**2 = 1 and H2**2 = 1/2.
FREQUENCY_COEFFS = {
    4: (1.0, 0.97195983, 1.0 / np.sqrt(2.0), 0.23514695),
}

ENERGY_TOL = 1e-12
SYMMETRY_TOL = 1e-12


@dataclass
class FilterCoefficients:
    """Real, symmetric, unit-energy pulse shared by every subcarrier."""

    taps: np.ndarray
    overlap_factor: int
    subcarriers: int

    @property
    def length(self) -> int:
        return int(self.taps.size)


@dataclass
class ValidationReport:
    """Outcome of checking a filter against its defining invariants."""

    length_ok: bool
    energy: float
    max_symmetry_error: float
    passed: bool


def design_phydyas(subcarriers: int, overlap_factor: int = 4) -> FilterCoefficients:
    """Build the prototype filter of length overlap_factor * subcarriers.

    Parameters
    ----------
    subcarriers : int
        Number of subcarriers N; must be even and at least 2.
    overlap_factor : int
        Number of symbol periods the pulse spans (b). Only the b = 4
        coefficient set is provided.

    Returns
    -------
    FilterCoefficients
        Deterministic for given inputs; identical calls return bit-identical
        taps. The taps array is marked read-only so it can be shared freely
        across workers.
    """
    if subcarriers < 2 or subcarriers % 2:
        raise ConfigurationError(
            f"subcarrier count must be even and >= 2, got {subcarriers}"
        )
    if overlap_factor not in FREQUENCY_COEFFS:
        raise ConfigurationError(
            f"unsupported overlap factor {overlap_factor}; "
            f"available: {sorted(FREQUENCY_COEFFS)}"
        )
    coeffs = FREQUENCY_COEFFS[overlap_factor]
    length = overlap_factor * subcarriers
    k = np.arange(length // 2)
    half = np.full(length // 2, coeffs[0])
    for i in range(1, overlap_factor):
        half += 2.0 * (-1) ** i * coeffs[i] * np.cos(2.0 * np.pi * i * (k + 0.5) / length)
    taps = np.concatenate([half, half[::-1]])
    taps /= np.sqrt(np.sum(taps * taps))
    taps.setflags(write=False)
    return FilterCoefficients(
        taps=taps, overlap_factor=overlap_factor, subcarriers=subcarriers
    )


def validate_filter(filt: FilterCoefficients) -> ValidationReport:
    """Check length, symmetry and unit energy; never raises."""
    taps = np.asarray(filt.taps, dtype=float)
    length_ok = taps.size == filt.overlap_factor * filt.subcarriers
    energy = float(np.sum(taps * taps))
    max_sym = float(np.max(np.abs(taps - taps[::-1]))) if taps.size else 0.0
    passed = (
        length_ok
        and abs(energy - 1.0) <= ENERGY_TOL
        and max_sym <= SYMMETRY_TOL
    )
    return ValidationReport(
        length_ok=length_ok,
        energy=energy,
        max_symmetry_error=max_sym,
        passed=passed,
    )
