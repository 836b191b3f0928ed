"""Monte Carlo harness: sweeps over SNR, training power, and redundancy.

Reproducibility contract: every trial owns a generator derived from the
master seed and the (grid point, trial) indices, results are reduced in trial
order, and the bit error rate pools error counts over all trials of a point.
BLAS threading is pinned to one thread while trials execute (parallelism
belongs to the process pool, and the per-trial matrices are too small to
benefit from threaded BLAS). Output is therefore byte-identical for any
worker count and any ambient thread configuration.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from threadpoolctl import threadpool_limits

from .channel import apply_channel, draw_channel
from .errors import ConfigurationError
from .modem import FbmcModem
from .oqam import oqam_destagger, oqam_stagger, qpsk_demodulate, qpsk_modulate
from .precoding import build_orthogonal_basis, derive_matrices, precode
from .prototype import design_phydyas
from .receiver import ChannelEstimate, channel_mse, detect, estimate_ls

CSV_HEADER = "sigma_c2,n,snr_db,mse,ber,bw_eff,trials,fade_events"


@dataclass(frozen=True)
class SimConfig:
    """Full description of one sweep; hashable and picklable."""

    subcarriers: int = 64
    frames: int = 64
    redundancy: tuple = (64,)
    channel_taps: int = 12
    overlap_factor: int = 4
    sigma_c2: tuple = (0.2,)
    snr_db: tuple = (15.0,)
    trials: int = 100
    seed: int = 0
    estimator_mode: str = "raw"
    basis: str = "dct"
    perfect_csi: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.subcarriers < 2 or self.subcarriers % 2:
            raise ConfigurationError(
                f"subcarrier count must be even and >= 2, got {self.subcarriers}"
            )
        if self.frames < 2 or self.frames % 2:
            raise ConfigurationError(
                f"frame count must be even and >= 2, got {self.frames}"
            )
        for red in self.redundancy:
            if red < self.subcarriers:
                raise ConfigurationError(
                    f"redundancy {red} must be at least the subcarrier count "
                    f"({self.subcarriers})"
                )
        for value in self.sigma_c2:
            if not 0.0 <= value <= 1.0:
                raise ConfigurationError(
                    f"training power coefficients must be in [0, 1], got {value}"
                )
        if self.trials < 1:
            raise ConfigurationError(f"trial count must be >= 1, got {self.trials}")
        if not 1 <= self.channel_taps <= self.subcarriers:
            raise ConfigurationError(
                f"channel taps must be in [1, {self.subcarriers}], "
                f"got {self.channel_taps}"
            )
        if self.estimator_mode not in ("raw", "normalized"):
            raise ConfigurationError(
                f"unknown estimator mode {self.estimator_mode!r}"
            )
        if self.workers < 1:
            raise ConfigurationError(f"worker count must be >= 1, got {self.workers}")


@dataclass
class TrialResult:
    mse: float
    bit_errors: int
    bits: int
    fade_events: int


@dataclass
class PointResult:
    sigma_c2: float
    redundancy: int
    snr_db: float
    mse: float
    ber: float
    bw_eff: float
    trials: int
    fade_events: int


@dataclass
class SweepResult:
    records: list = field(default_factory=list)


def grid_points(cfg: SimConfig) -> list:
    """Sweep grid in canonical order: sigma_c2 outer, redundancy, then SNR."""
    return list(itertools.product(cfg.sigma_c2, cfg.redundancy, cfg.snr_db))


def bandwidth_efficiency(frames: int, redundancy: int) -> float:
    """Fraction of instants that carry data: frames / (frames + redundancy)."""
    if frames < 1:
        raise ConfigurationError(f"frame count must be >= 1, got {frames}")
    if redundancy < 0:
        raise ConfigurationError(f"redundancy must be >= 0, got {redundancy}")
    return frames / (frames + redundancy)


@lru_cache(maxsize=16)
def _context(subcarriers, frames, redundancy, overlap_factor, basis):
    """Modem plus matrix family for one waveform geometry, built once."""
    filt = design_phydyas(subcarriers, overlap_factor)
    modem = FbmcModem(filt)
    phi = build_orthogonal_basis(frames + redundancy, basis)
    mats = derive_matrices(phi, subcarriers, frames, redundancy)
    return modem, mats


def trial_rng(cfg: SimConfig, point_index: int, trial_index: int) -> np.random.Generator:
    """Per-trial generator; independent of how trials land on workers."""
    return np.random.default_rng(
        np.random.SeedSequence(cfg.seed, spawn_key=(point_index, trial_index))
    )


def run_trial(
    cfg: SimConfig,
    sigma_c2: float,
    redundancy: int,
    snr_db: float,
    rng: np.random.Generator,
) -> TrialResult:
    """One full transmit/receive pass at a single grid point.

    Generator consumption order is fixed: data bits, then channel taps, then
    noise. The noise variance comes from the measured per-sample power of the
    synthesized frame and the requested SNR in dB.
    """
    modem, mats = _context(
        cfg.subcarriers, cfg.frames, redundancy, cfg.overlap_factor, cfg.basis
    )
    n_sub, n_frames = cfg.subcarriers, cfg.frames

    bits = rng.integers(0, 2, n_sub * n_frames)
    data_grid = oqam_stagger(qpsk_modulate(bits, n_sub, n_frames))
    coded = precode(data_grid, mats, sigma_c2)
    tx = modem.synthesize(coded.values)

    channel = draw_channel(cfg.channel_taps, n_sub, rng)
    power = float(np.mean(np.abs(tx) ** 2))
    noise_var = power / 10.0 ** (snr_db / 10.0)
    rx = apply_channel(tx, channel, noise_var, rng)

    received = modem.analyze(rx, n_frames + redundancy)
    if cfg.perfect_csi:
        estimate = ChannelEstimate(hhat=channel.cfr, mode="raw")
        mse = 0.0
    else:
        estimate = estimate_ls(received, mats, cfg.estimator_mode, sigma_c2)
        mse = channel_mse(estimate, channel)
    detected, fades = detect(received, mats, estimate)
    rx_bits = qpsk_demodulate(oqam_destagger(detected))
    errors = int(np.count_nonzero(rx_bits != bits))
    return TrialResult(mse=mse, bit_errors=errors, bits=bits.size, fade_events=fades)


def _run_chunk(cfg, point_index, point, start, stop):
    sigma_c2, redundancy, snr_db = point
    mse = np.empty(stop - start, dtype=float)
    errors = np.empty(stop - start, dtype=np.int64)
    bits = np.empty(stop - start, dtype=np.int64)
    fades = np.empty(stop - start, dtype=np.int64)
    with threadpool_limits(limits=1, user_api="blas"):
        for offset, trial_index in enumerate(range(start, stop)):
            rng = trial_rng(cfg, point_index, trial_index)
            result = run_trial(cfg, sigma_c2, redundancy, snr_db, rng)
            mse[offset] = result.mse
            errors[offset] = result.bit_errors
            bits[offset] = result.bits
            fades[offset] = result.fade_events
    return point_index, start, mse, errors, bits, fades


def run_point(cfg: SimConfig, point_index: int, sigma_c2: float,
              redundancy: int, snr_db: float):
    """All trials of one grid point; per-trial (mse, errors, bits, fades) arrays."""
    point = (sigma_c2, redundancy, snr_db)
    _, _, mse, errors, bits, fades = _run_chunk(cfg, point_index, point, 0, cfg.trials)
    return mse, errors, bits, fades


def _reduce_point(cfg, point, mse, errors, bits, fades) -> PointResult:
    sigma_c2, redundancy, snr_db = point
    return PointResult(
        sigma_c2=sigma_c2,
        redundancy=redundancy,
        snr_db=snr_db,
        mse=float(np.sum(mse) / cfg.trials),
        ber=float(int(np.sum(errors)) / int(np.sum(bits))),
        bw_eff=bandwidth_efficiency(cfg.frames, redundancy),
        trials=cfg.trials,
        fade_events=int(np.sum(fades)),
    )


def sweep(cfg: SimConfig) -> SweepResult:
    """Average run_trial over cfg.trials at every grid point."""
    points = grid_points(cfg)
    per_point = {
        index: (
            np.empty(cfg.trials, dtype=float),
            np.empty(cfg.trials, dtype=np.int64),
            np.empty(cfg.trials, dtype=np.int64),
            np.empty(cfg.trials, dtype=np.int64),
        )
        for index in range(len(points))
    }

    if cfg.workers == 1 or len(points) == 0:
        chunks = [
            _run_chunk(cfg, index, point, 0, cfg.trials)
            for index, point in enumerate(points)
        ]
    else:
        step = max(1, cfg.trials // (cfg.workers * 4))
        jobs = [
            (index, point, start, min(start + step, cfg.trials))
            for index, point in enumerate(points)
            for start in range(0, cfg.trials, step)
        ]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_run_chunk, cfg, index, point, start, stop)
                for index, point, start, stop in jobs
            ]
            chunks = [future.result() for future in futures]

    for point_index, start, mse, errors, bits, fades in chunks:
        arrays = per_point[point_index]
        stop = start + mse.size
        arrays[0][start:stop] = mse
        arrays[1][start:stop] = errors
        arrays[2][start:stop] = bits
        arrays[3][start:stop] = fades

    records = [
        _reduce_point(cfg, point, *per_point[index])
        for index, point in enumerate(points)
    ]
    return SweepResult(records=records)


def emit_results(result: SweepResult, destination) -> None:
    """Write records as CSV; floats use shortest round-trip formatting.

    destination is a path or an open text file. I/O problems propagate as
    OSError carrying the path.
    """
    lines = [CSV_HEADER]
    for rec in result.records:
        lines.append(
            f"{rec.sigma_c2!r},{rec.redundancy},{rec.snr_db!r},"
            f"{rec.mse!r},{rec.ber!r},{rec.bw_eff!r},{rec.trials},{rec.fade_events}"
        )
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="ascii") as handle:
            handle.write(text)


def load_results(source) -> SweepResult:
    """Parse a CSV written by emit_results back into a SweepResult."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="ascii") as handle:
            text = handle.read()
    lines = [line for line in text.splitlines() if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ConfigurationError("not a results file: bad or missing header")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        records.append(
            PointResult(
                sigma_c2=float(parts[0]),
                redundancy=int(parts[1]),
                snr_db=float(parts[2]),
                mse=float(parts[3]),
                ber=float(parts[4]),
                bw_eff=float(parts[5]),
                trials=int(parts[6]),
                fade_events=int(parts[7]),
            )
        )
    return SweepResult(records=records)
