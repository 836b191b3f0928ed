"""Pure-numpy synthesis/analysis cores (fallback backend).

Same sums as the compiled extension, expressed as matrix products; outputs of
the two backends agree to roughly 1e-12.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def synthesize_grid(weighted, twiddle, taps, half):
    """Overlap-add the per-instant chips of a phase-weighted grid.

    weighted: (N, T) complex grid, entries already carrying their phases.
    twiddle:  (N, N) complex, twiddle[m, q] = exp(2j*pi*m*q/N).
    taps:     (b*N,) float prototype taps.
    half:     instant spacing in samples (N // 2).
    """
    n_sub, instants = weighted.shape
    filt_len = taps.size
    reps = filt_len // n_sub
    spectra = twiddle.T @ weighted
    chips = np.tile(spectra, (reps, 1)) * taps[:, None]
    # Overlap-add: chip rows split into half-instant blocks; block j of
    # instant t lands at offset (t + j) * half.
    blocks = chips.reshape(2 * reps, half, instants)
    stacked = np.zeros((instants + 2 * reps - 1, half), dtype=np.complex128)
    for j in range(2 * reps):
        stacked[j : j + instants] += blocks[j].T
    return stacked.reshape(-1)[: (instants - 1) * half + filt_len]


def analyze_segments(samples, twiddle_conj, taps, half, instants):
    """Inner products of the samples against every grid instant.

    samples must already be zero-padded to at least
    (instants - 1) * half + taps.size entries.
    """
    n_sub = twiddle_conj.shape[0]
    filt_len = taps.size
    reps = filt_len // n_sub
    windows = sliding_window_view(samples, filt_len)[::half][:instants]
    folded = (windows * taps).reshape(instants, reps, n_sub).sum(axis=1)
    return twiddle_conj @ folded.T
