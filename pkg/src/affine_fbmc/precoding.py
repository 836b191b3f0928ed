"""Orthogonal basis construction and the precoder/training/estimator/detector family.

All four matrices are disjoint row blocks of one orthogonal matrix, scaled so
that precoder @ detector = I, precoder @ estimator = 0, training @ estimator = I
and training @ detector = 0. Training therefore superimposes on precoded data
without either path polluting the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import hadamard

from .errors import ConfigurationError, InputError

BASIS_KINDS = ("dct", "hadamard")
ORTHOGONALITY_TOL = 1e-10


def build_orthogonal_basis(size: int, kind: str = "dct") -> np.ndarray:
    """Return a deterministic size x size real orthogonal matrix.

    "dct" is the orthonormal DCT-II row basis and works for any size;
    "hadamard" is the normalized Walsh-Hadamard matrix and requires a
    power-of-two size.
    """
    if size < 2:
        raise ConfigurationError(f"basis size must be >= 2, got {size}")
    if kind == "dct":
        cols = 2 * np.arange(size) + 1
        phi = np.cos(np.pi * np.outer(np.arange(size), cols) / (2 * size))
        phi[0] *= np.sqrt(1.0 / size)
        phi[1:] *= np.sqrt(2.0 / size)
        return phi
    if kind == "hadamard":
        if size & (size - 1):
            raise ConfigurationError(
                f"hadamard basis requires a power-of-two size, got {size}"
            )
        return hadamard(size).astype(float) / np.sqrt(size)
    raise ConfigurationError(f"unknown basis kind {kind!r}; choose from {BASIS_KINDS}")


@dataclass
class AffineMatrixSet:
    """Matrix family derived from one orthogonal basis.

    basis:     (K+n) x (K+n) orthogonal matrix
    precoder:  K x (K+n), scaled rows N..N+K-1 of the basis
    training:  N x (K+n), scaled rows 0..N-1 of the basis
    estimator: (K+n) x N, pseudo-inverse-style transpose of the training rows
    detector:  (K+n) x K, right inverse of the precoder
    """

    basis: np.ndarray
    precoder: np.ndarray
    training: np.ndarray
    estimator: np.ndarray
    detector: np.ndarray
    subcarriers: int
    frames: int
    redundancy: int

    @property
    def total_instants(self) -> int:
        return self.frames + self.redundancy


def derive_matrices(
    phi: np.ndarray, subcarriers: int, frames: int, redundancy: int
) -> AffineMatrixSet:
    """Slice and scale the orthogonal basis into the four-matrix family.

    Requires redundancy >= subcarriers so the training rows and precoder rows
    fit disjointly inside the basis.
    """
    n_sub, n_frames, n_red = subcarriers, frames, redundancy
    total = n_frames + n_red
    if n_red < n_sub:
        raise ConfigurationError(
            f"redundancy ({n_red}) must be at least the subcarrier count ({n_sub})"
        )
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (total, total):
        raise InputError(
            f"basis shape {phi.shape} does not match frames+redundancy = {total}"
        )
    gram_err = np.max(np.abs(phi.T @ phi - np.eye(total)))
    if gram_err > ORTHOGONALITY_TOL:
        raise InputError(f"basis is not orthogonal (max deviation {gram_err:.3e})")

    precoder = np.sqrt(total / n_frames) * phi[n_sub : n_sub + n_frames]
    training = np.sqrt(total) * phi[:n_sub]
    estimator = phi[:n_sub].T / np.sqrt(total)
    gram = precoder @ precoder.T
    try:
        detector = np.linalg.solve(gram, precoder).T
    except np.linalg.LinAlgError as exc:  # unreachable for an orthogonal basis
        raise ArithmeticError("precoder gram matrix is singular") from exc

    for arr in (phi, precoder, training, estimator, detector):
        arr.setflags(write=False)
    return AffineMatrixSet(
        basis=phi,
        precoder=precoder,
        training=training,
        estimator=estimator,
        detector=detector,
        subcarriers=n_sub,
        frames=n_frames,
        redundancy=n_red,
    )


@dataclass
class PrecodedGrid:
    """Real grid carrying scaled data plus superimposed training."""

    values: np.ndarray
    sigma_s2: float
    sigma_c2: float


def precode(grid: np.ndarray, mats: AffineMatrixSet, sigma_c2: float) -> PrecodedGrid:
    """Form sqrt(1 - sigma_c2) * X @ precoder + sqrt(sigma_c2) * training."""
    if not 0.0 <= sigma_c2 <= 1.0:
        raise InputError(f"training power coefficient must be in [0, 1], got {sigma_c2}")
    grid = np.asarray(grid, dtype=float)
    if grid.shape != (mats.subcarriers, mats.frames):
        raise InputError(
            f"data grid shape {grid.shape} does not match "
            f"({mats.subcarriers}, {mats.frames})"
        )
    sigma_s2 = 1.0 - sigma_c2
    values = np.sqrt(sigma_s2) * (grid @ mats.precoder) + np.sqrt(sigma_c2) * mats.training
    return PrecodedGrid(values=values, sigma_s2=sigma_s2, sigma_c2=sigma_c2)
