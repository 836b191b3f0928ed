"""Equivalence of the compiled extension and the numpy fallback kernels."""

import os
import subprocess
import sys

import numpy as np
import pytest

from affine_fbmc import FbmcModem, active_backend, design_phydyas
from affine_fbmc import _kernels_py

compiled = pytest.importorskip(
    "affine_fbmc._kernels", reason="compiled extension not built"
)

EQUIV_TOL = 1e-9


def _setup(n_sub, instants, seed):
    modem = FbmcModem(design_phydyas(n_sub))
    rng = np.random.default_rng(seed)
    weighted = np.ascontiguousarray(
        rng.standard_normal((n_sub, instants))
        + 1j * rng.standard_normal((n_sub, instants))
    )
    return modem, weighted


@pytest.mark.parametrize("n_sub,instants", [(16, 7), (64, 20)])
def test_synthesize_backends_agree(n_sub, instants):
    modem, weighted = _setup(n_sub, instants, 1)
    args = (weighted, modem._twiddle, modem.filter.taps, modem.half)
    a = compiled.synthesize_grid(*args)
    b = _kernels_py.synthesize_grid(*args)
    assert a.shape == b.shape
    assert np.max(np.abs(a - b)) < EQUIV_TOL


@pytest.mark.parametrize("n_sub,instants", [(16, 7), (64, 20)])
def test_analyze_backends_agree(n_sub, instants):
    modem, weighted = _setup(n_sub, instants, 2)
    samples = compiled.synthesize_grid(
        weighted, modem._twiddle, modem.filter.taps, modem.half
    )
    rng = np.random.default_rng(3)
    samples = samples + 0.1 * (
        rng.standard_normal(samples.size) + 1j * rng.standard_normal(samples.size)
    )
    samples = np.ascontiguousarray(samples)
    args = (samples, modem._twiddle_conj, modem.filter.taps, modem.half, instants)
    a = compiled.analyze_segments(*args)
    b = _kernels_py.analyze_segments(*args)
    assert a.shape == b.shape
    assert np.max(np.abs(a - b)) < EQUIV_TOL


def test_active_backend_reports_compiled():
    assert active_backend() == "compiled"


def test_backends_agree_on_non_symmetric_tables():
    # The modem's twiddle tables are symmetric, which would mask transposition
    # mistakes; random tables pin the exact index semantics of the kernels.
    rng = np.random.default_rng(8)
    n_sub, instants, reps = 12, 9, 3
    half = n_sub // 2
    table = np.ascontiguousarray(
        rng.standard_normal((n_sub, n_sub)) + 1j * rng.standard_normal((n_sub, n_sub))
    )
    taps = rng.standard_normal(reps * n_sub)
    weighted = np.ascontiguousarray(
        rng.standard_normal((n_sub, instants))
        + 1j * rng.standard_normal((n_sub, instants))
    )
    a = compiled.synthesize_grid(weighted, table, taps, half)
    b = _kernels_py.synthesize_grid(weighted, table, taps, half)
    assert np.max(np.abs(a - b)) < EQUIV_TOL
    samples = np.ascontiguousarray(
        rng.standard_normal(a.size) + 1j * rng.standard_normal(a.size)
    )
    ya = compiled.analyze_segments(samples, table, taps, half, instants)
    yb = _kernels_py.analyze_segments(samples, table, taps, half, instants)
    assert np.max(np.abs(ya - yb)) < EQUIV_TOL


def _run_sweep_csv(backend):
    code = (
        "import sys\n"
        "from affine_fbmc.cli import main\n"
        "sys.exit(main(['--subcarriers', '16', '--frames', '16',"
        " '--redundancy', '16', '--trials', '4', '--seed', '7',"
        " '--sigma-c2', '0.2', '--snr-db', '15']))\n"
    )
    env = dict(os.environ, AFFINE_FBMC_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_full_pipeline_backends_agree():
    lines_c = _run_sweep_csv("compiled").splitlines()
    lines_p = _run_sweep_csv("python").splitlines()
    assert lines_c[0] == lines_p[0]
    row_c = lines_c[1].split(",")
    row_p = lines_p[1].split(",")
    # mse and ber may differ only by kernel rounding
    assert float(row_c[3]) == pytest.approx(float(row_p[3]), abs=1e-9)
    assert float(row_c[4]) == pytest.approx(float(row_p[4]), abs=1e-9)
