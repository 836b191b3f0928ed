"""Bit <-> QPSK <-> real offset-QAM grid conversions."""

from __future__ import annotations

import numpy as np

from .errors import InputError

_SCALE = 1.0 / np.sqrt(2.0)


def qpsk_modulate(bits, subcarriers: int, frames: int) -> np.ndarray:
    """Gray-map bit pairs to a subcarriers x frames/2 grid of unit-power QPSK.

    Pairs (b1, b0) map to ((1 - 2*b1) + 1j*(1 - 2*b0)) / sqrt(2). Symbols fill
    the grid subcarrier-first (row index fastest), then frame by frame.
    """
    bits = np.asarray(bits)
    if frames % 2:
        raise InputError(f"frame count must be even, got {frames}")
    if bits.size != subcarriers * frames:
        raise InputError(
            f"need {subcarriers * frames} bits for a {subcarriers}x{frames} "
            f"grid, got {bits.size}"
        )
    pairs = bits.reshape(-1, 2)
    symbols = ((1 - 2 * pairs[:, 0]) + 1j * (1 - 2 * pairs[:, 1])) * _SCALE
    return symbols.reshape(subcarriers, frames // 2, order="F")


def oqam_stagger(symbols: np.ndarray) -> np.ndarray:
    """Spread real/imaginary parts over alternate instants, swapped on odd rows.

    Even rows carry (Re, Im) at (even, odd) instants; odd rows carry (Im, Re).
    """
    symbols = np.asarray(symbols)
    n_sub, half = symbols.shape
    grid = np.empty((n_sub, 2 * half), dtype=float)
    re, im = symbols.real, symbols.imag
    grid[0::2, 0::2] = re[0::2]
    grid[0::2, 1::2] = im[0::2]
    grid[1::2, 0::2] = im[1::2]
    grid[1::2, 1::2] = re[1::2]
    return grid


def oqam_destagger(grid: np.ndarray) -> np.ndarray:
    """Exact inverse of oqam_stagger (pure reindexing, no arithmetic)."""
    grid = np.asarray(grid)
    n_sub, frames = grid.shape
    if frames % 2:
        raise InputError(f"frame count must be even, got {frames}")
    even = grid[:, 0::2]
    odd = grid[:, 1::2]
    out = np.empty((n_sub, frames // 2), dtype=complex)
    out[0::2] = even[0::2] + 1j * odd[0::2]
    out[1::2] = odd[1::2] + 1j * even[1::2]
    return out


def qpsk_demodulate(symbols: np.ndarray) -> np.ndarray:
    """Hard decisions per real dimension, inverse of qpsk_modulate when noiseless."""
    flat = np.asarray(symbols).reshape(-1, order="F")
    bits = np.empty((flat.size, 2), dtype=np.int64)
    bits[:, 0] = flat.real < 0
    bits[:, 1] = flat.imag < 0
    return bits.reshape(-1)
