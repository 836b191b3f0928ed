"""FBMC/OQAM waveform synthesis, analysis, and the transmultiplexer response.

Conventions, fixed throughout the package:

- the basis function for subcarrier m and instant n is
  chi[m, n][k] = exp(1j * phase(m, n)) * exp(2j*pi*m*k / N) * taps[k - n*N/2],
  with k the absolute sample index, instants spaced N/2 samples apart, and
  phase(m, n) = pi/2 * (m + n) - pi*m*n;
- since exp(1j * phase(m, n)) = j**(m+n) * (-1)**(m*n) and the absolute-index
  exponential contributes (-1)**(m*n) over the n*N/2 offset, the product
  collapses exactly to j**(m+n) times a twiddle in (k mod N). The kernels
  evaluate that collapsed form; `basis_function` keeps the literal one so the
  two can be checked against each other.

Synthesis and analysis dispatch to the backend selected in
`affine_fbmc.backend` (compiled extension or numpy fallback).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ConfigurationError, InputError
from .prototype import FilterCoefficients


@dataclass
class TransmuxTable:
    """Cross-response between grid points, indexed by (dm, dn) offsets.

    entries[(dm, dn)] is the complex response observed at a reference grid
    point when a unit symbol is transmitted dm subcarriers and dn instants
    away from it. The reference point has even subcarrier and instant indices
    and sits away from frame edges, so every tabulated pair overlaps fully.
    """

    entries: dict
    span: int

    def __getitem__(self, offset):
        return self.entries[offset]

    def rows(self):
        """(dm, dn, re, im) tuples in row-major offset order."""
        for (dm, dn), value in sorted(self.entries.items()):
            yield dm, dn, value.real, value.imag


class FbmcModem:
    """Synthesis/analysis filter bank for one prototype filter."""

    def __init__(self, filt: FilterCoefficients):
        n_sub = filt.subcarriers
        if filt.taps.size != filt.overlap_factor * n_sub:
            raise InputError("filter length does not match overlap_factor * subcarriers")
        self.filter = filt
        self.subcarriers = n_sub
        self.half = n_sub // 2
        m = np.arange(n_sub)
        # Reduce m*q modulo N before exponentiating so equal angles give
        # bit-identical twiddles, matching basis_function below.
        mq = np.outer(m, m) % n_sub
        self._twiddle = np.ascontiguousarray(np.exp(2j * np.pi * mq / n_sub))
        self._twiddle_conj = np.ascontiguousarray(self._twiddle.conj())
        self._jpow = 1j ** np.arange(4)

    def _phases(self, instants: int) -> np.ndarray:
        m = np.arange(self.subcarriers)[:, None]
        t = np.arange(instants)[None, :]
        return self._jpow[(m + t) % 4]

    def output_length(self, instants: int) -> int:
        return (instants - 1) * self.half + self.filter.length

    def synthesize(self, grid: np.ndarray) -> np.ndarray:
        """Time samples of a real grid, full filter tails included.

        The output has output_length(T) complex samples for a grid with T
        instant columns.
        """
        grid = np.asarray(grid)
        if np.iscomplexobj(grid):
            raise InputError("synthesize expects a real grid")
        grid = grid.astype(float, copy=False)
        if grid.ndim != 2 or grid.shape[0] != self.subcarriers:
            raise InputError(
                f"grid shape {grid.shape} does not match {self.subcarriers} subcarriers"
            )
        weighted = np.ascontiguousarray(grid * self._phases(grid.shape[1]))
        return kernels.synthesize_grid(
            weighted, self._twiddle, self.filter.taps, self.half
        )

    def analyze(self, samples: np.ndarray, instants: int) -> np.ndarray:
        """Matched-filter inner products against every basis function.

        Returns a complex (subcarriers x instants) grid. Samples shorter than
        the last instant's filter support are zero-padded.
        """
        if instants < 1:
            raise InputError(f"instant count must be >= 1, got {instants}")
        samples = np.ascontiguousarray(samples, dtype=np.complex128)
        needed = self.output_length(instants)
        if samples.size < needed:
            padded = np.zeros(needed, dtype=np.complex128)
            padded[: samples.size] = samples
            samples = padded
        raw = kernels.analyze_segments(
            samples, self._twiddle_conj, self.filter.taps, self.half, instants
        )
        return raw * self._phases(instants).conj()

    def basis_function(self, m: int, n: int, length: int) -> np.ndarray:
        """chi[m, n] evaluated literally on absolute sample indices 0..length-1.

        Kept independent of the backend kernels on purpose: tests use it as
        the reference for synthesize/analyze and for the transmultiplexer
        table. Phases are reduced in integer arithmetic, never by evaluating
        exp at large angles.
        """
        if not 0 <= m < self.subcarriers:
            raise InputError(f"subcarrier index {m} out of range")
        if n < 0:
            raise InputError(f"instant index {n} must be >= 0")
        start = n * self.half
        if length < start + self.filter.length:
            raise InputError("length too short for the requested instant")
        out = np.zeros(length, dtype=np.complex128)
        k = np.arange(start, start + self.filter.length)
        phase = (1j) ** ((m + n) % 4) * (-1.0) ** ((m * n) % 2)
        out[start : start + self.filter.length] = (
            phase * np.exp(2j * np.pi * ((m * k) % self.subcarriers) / self.subcarriers)
            * self.filter.taps
        )
        return out

    def transmux_response(self, span: int = 2) -> TransmuxTable:
        """Tabulate cross-responses for all offsets with |dm|, |dn| <= span.

        Computed by direct inner products of literal basis functions over
        their full support.
        """
        if span < 1:
            raise ConfigurationError(f"span must be >= 1, got {span}")
        anchor_m = (self.subcarriers // 2) & ~1
        if anchor_m - span < 0 or anchor_m + span >= self.subcarriers:
            raise ConfigurationError(
                f"span {span} too large for {self.subcarriers} subcarriers"
            )
        anchor_n = span + (span % 2)
        length = (anchor_n + span) * self.half + self.filter.length
        ref = self.basis_function(anchor_m, anchor_n, length)
        entries = {}
        for dm in range(-span, span + 1):
            for dn in range(-span, span + 1):
                other = self.basis_function(anchor_m + dm, anchor_n + dn, length)
                entries[(dm, dn)] = complex(np.vdot(ref, other))
        return TransmuxTable(entries=entries, span=span)
