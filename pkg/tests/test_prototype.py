import numpy as np
import pytest

from affine_fbmc import ConfigurationError, design_phydyas, validate_filter


@pytest.mark.parametrize("n_sub,expected", [(256, 1024), (64, 256), (16, 64)])
def test_length(n_sub, expected):
    filt = design_phydyas(n_sub, 4)
    assert filt.length == expected
    assert filt.taps.size == filt.overlap_factor * filt.subcarriers


@pytest.mark.parametrize("n_sub", [16, 64, 256])
def test_unit_energy(n_sub):
    filt = design_phydyas(n_sub)
    assert abs(np.sum(filt.taps**2) - 1.0) < 1e-12


@pytest.mark.parametrize("n_sub", [16, 64, 256])
def test_exact_symmetry(n_sub):
    taps = design_phydyas(n_sub).taps
    assert np.all(taps == taps[::-1])


def test_deterministic():
    a = design_phydyas(64).taps
    b = design_phydyas(64).taps
    assert np.array_equal(a, b)


def test_taps_are_read_only():
    filt = design_phydyas(16)
    with pytest.raises(ValueError):
        filt.taps[0] = 0.0


@pytest.mark.parametrize("n_sub", [0, 1, 3, 15])
def test_rejects_bad_subcarrier_count(n_sub):
    with pytest.raises(ConfigurationError):
        design_phydyas(n_sub)


@pytest.mark.parametrize("overlap", [1, 2, 3, 5, 8])
def test_rejects_unsupported_overlap(overlap):
    with pytest.raises(ConfigurationError):
        design_phydyas(64, overlap)


def test_validate_passes_own_design():
    report = validate_filter(design_phydyas(64, 4))
    assert report.passed
    assert report.length_ok
    assert abs(report.energy - 1.0) < 1e-12
    assert report.max_symmetry_error == 0.0


def test_validate_flags_scaled_energy():
    filt = design_phydyas(64)
    filt.taps = filt.taps * 2.0
    report = validate_filter(filt)
    assert not report.passed
    assert abs(report.energy - 4.0) < 1e-10


def test_validate_flags_asymmetry():
    filt = design_phydyas(64)
    taps = filt.taps.copy()
    taps[3] += 1e-3
    filt.taps = taps
    report = validate_filter(filt)
    assert not report.passed
    assert report.max_symmetry_error == pytest.approx(1e-3, rel=1e-6)
