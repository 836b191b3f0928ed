"""Waveform-level FBMC/OQAM link simulator with superimposed orthogonal training."""

from .backend import active_backend
from .channel import ChannelRealization, apply_channel, draw_channel
from .errors import ConfigurationError, InputError
from .modem import FbmcModem, TransmuxTable
from .oqam import oqam_destagger, oqam_stagger, qpsk_demodulate, qpsk_modulate
from .precoding import (
    AffineMatrixSet,
    PrecodedGrid,
    build_orthogonal_basis,
    derive_matrices,
    precode,
)
from .prototype import (
    FilterCoefficients,
    ValidationReport,
    design_phydyas,
    validate_filter,
)
from .receiver import ChannelEstimate, channel_mse, detect, estimate_ls
from .simulation import (
    PointResult,
    SimConfig,
    SweepResult,
    TrialResult,
    bandwidth_efficiency,
    emit_results,
    grid_points,
    load_results,
    run_point,
    run_trial,
    sweep,
    trial_rng,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMatrixSet",
    "ChannelEstimate",
    "ChannelRealization",
    "ConfigurationError",
    "FbmcModem",
    "FilterCoefficients",
    "InputError",
    "PointResult",
    "PrecodedGrid",
    "SimConfig",
    "SweepResult",
    "TransmuxTable",
    "TrialResult",
    "ValidationReport",
    "active_backend",
    "apply_channel",
    "bandwidth_efficiency",
    "build_orthogonal_basis",
    "channel_mse",
    "derive_matrices",
    "design_phydyas",
    "detect",
    "draw_channel",
    "emit_results",
    "estimate_ls",
    "grid_points",
    "load_results",
    "oqam_destagger",
    "oqam_stagger",
    "precode",
    "qpsk_demodulate",
    "qpsk_modulate",
    "run_point",
    "run_trial",
    "sweep",
    "trial_rng",
    "validate_filter",
]
