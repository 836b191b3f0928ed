import numpy as np
import pytest

from affine_fbmc import (
    ChannelEstimate,
    ConfigurationError,
    FbmcModem,
    InputError,
    build_orthogonal_basis,
    channel_mse,
    derive_matrices,
    design_phydyas,
    detect,
    draw_channel,
    estimate_ls,
    oqam_stagger,
    precode,
    qpsk_modulate,
)

TOL = 1e-10


def make(n_sub=16, frames=16, redundancy=16):
    phi = build_orthogonal_basis(frames + redundancy, "dct")
    return derive_matrices(phi, n_sub, frames, redundancy)


def random_cfr(n_sub, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n_sub) + 1j * rng.standard_normal(n_sub)


def test_training_only_input_recovers_scaled_channel():
    mats = make()
    h = random_cfr(16, 1)
    sigma_c = 0.5
    received = sigma_c * h[:, None] * mats.training
    est = estimate_ls(received, mats, "raw")
    assert np.max(np.abs(est.hhat - sigma_c * h)) < TOL
    est_n = estimate_ls(received, mats, "normalized", sigma_c2=sigma_c**2)
    assert np.max(np.abs(est_n.hhat - h)) < TOL


def test_data_only_input_estimates_zero():
    mats = make()
    rng = np.random.default_rng(2)
    h = random_cfr(16, 3)
    data = np.sign(rng.standard_normal((16, 16))) / np.sqrt(2.0)
    received = h[:, None] * (data @ mats.precoder)
    est = estimate_ls(received, mats, "raw")
    assert np.max(np.abs(est.hhat)) < TOL


@pytest.mark.parametrize("draw", range(10))
def test_training_data_separation(draw):
    mats = make()
    rng = np.random.default_rng(100 + draw)
    h = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    data = np.sign(rng.standard_normal((16, 16))) / np.sqrt(2.0)
    sigma_c2 = 0.3
    sigma_s, sigma_c = np.sqrt(1 - sigma_c2), np.sqrt(sigma_c2)
    received = h[:, None] * (
        sigma_s * (data @ mats.precoder) + sigma_c * mats.training
    )
    onto_estimator = received @ mats.estimator
    onto_detector = received @ mats.detector
    assert np.max(np.abs(onto_estimator - sigma_c * np.diag(h))) < TOL
    assert np.max(np.abs(onto_detector - sigma_s * h[:, None] * data)) < TOL


def test_mse_zero_for_perfect_estimate():
    ch = draw_channel(12, 16, np.random.default_rng(5))
    est = ChannelEstimate(hhat=ch.cfr.copy(), mode="raw")
    assert channel_mse(est, ch) == 0.0


def test_mse_closed_form_for_biased_raw_estimate():
    # Noiseless training-only input at sigma_c2 = 0.25: the raw estimate is
    # 0.5 * H, so the error power is (1 - 0.5)^2 times the mean |H|^2.
    mats = make()
    ch = draw_channel(12, 16, np.random.default_rng(6))
    sigma_c = 0.5
    received = sigma_c * ch.cfr[:, None] * mats.training
    est = estimate_ls(received, mats, "raw")
    expected = (1 - sigma_c) ** 2 * np.mean(np.abs(ch.cfr) ** 2)
    assert channel_mse(est, ch) == pytest.approx(expected, abs=TOL)


def test_mse_shape_mismatch_rejected():
    ch = draw_channel(12, 16, np.random.default_rng(7))
    est = ChannelEstimate(hhat=np.ones(8, dtype=complex), mode="raw")
    with pytest.raises(InputError):
        channel_mse(est, ch)


def test_normalized_mode_without_training_rejected():
    mats = make()
    received = np.zeros((16, 32), dtype=complex)
    with pytest.raises(ConfigurationError):
        estimate_ls(received, mats, "normalized", sigma_c2=0.0)


def test_unknown_mode_rejected():
    mats = make()
    with pytest.raises(ConfigurationError):
        estimate_ls(np.zeros((16, 32), dtype=complex), mats, "mmse")


def test_estimate_shape_mismatch_rejected():
    mats = make()
    with pytest.raises(InputError):
        estimate_ls(np.zeros((16, 31), dtype=complex), mats, "raw")


def test_detect_matrix_level_exact():
    mats = make()
    rng = np.random.default_rng(8)
    h = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    data = np.sign(rng.standard_normal((16, 16))) / np.sqrt(2.0)
    sigma_c2 = 0.2
    sigma_s, sigma_c = np.sqrt(1 - sigma_c2), np.sqrt(sigma_c2)
    received = h[:, None] * (
        sigma_s * (data @ mats.precoder) + sigma_c * mats.training
    )
    est = ChannelEstimate(hhat=h, mode="raw")
    detected, fades = detect(received, mats, est)
    assert fades == 0
    assert np.max(np.abs(detected - sigma_s * data)) < TOL


def test_detection_invariant_to_positive_scaling():
    mats = make()
    rng = np.random.default_rng(9)
    received = rng.standard_normal((16, 32)) + 1j * rng.standard_normal((16, 32))
    h = random_cfr(16, 10)
    a, _ = detect(received, mats, ChannelEstimate(hhat=h, mode="raw"))
    b, _ = detect(received, mats, ChannelEstimate(hhat=3.0 * h, mode="normalized"))
    assert np.array_equal(np.sign(a), np.sign(b))


def test_fade_guard_counts_and_stays_finite():
    mats = make()
    rng = np.random.default_rng(11)
    received = rng.standard_normal((16, 32)) + 1j * rng.standard_normal((16, 32))
    h = random_cfr(16, 12)
    h[3] = 0.0
    h[7] = 1e-15 * (1 + 1j)
    detected, fades = detect(received, mats, ChannelEstimate(hhat=h, mode="raw"))
    assert fades == 2
    assert np.all(np.isfinite(detected))


def test_waveform_flat_channel_training_only_estimate():
    # Full training power over a clean flat channel: the raw estimate keeps
    # the (purely imaginary) self-interference of the training pattern, which
    # only perturbs the magnitude at second order.
    n_sub = 16
    modem = FbmcModem(design_phydyas(n_sub))
    mats = make(n_sub, 16, 16)
    coded = precode(np.zeros((n_sub, 16)), mats, 1.0)
    received = modem.analyze(modem.synthesize(coded.values), 32)
    est = estimate_ls(received, mats, "raw")
    assert np.max(np.abs(np.abs(est.hhat) - 1.0)) < 0.05


def test_waveform_flat_channel_detection_is_error_free():
    n_sub = 16
    modem = FbmcModem(design_phydyas(n_sub))
    mats = make(n_sub, 16, 16)
    rng = np.random.default_rng(13)
    bits = rng.integers(0, 2, n_sub * 16)
    data = oqam_stagger(qpsk_modulate(bits, n_sub, 16))
    coded = precode(data, mats, 0.2)
    received = modem.analyze(modem.synthesize(coded.values), 32)
    est = ChannelEstimate(hhat=np.ones(n_sub, dtype=complex), mode="raw")
    detected, fades = detect(received, mats, est)
    assert fades == 0
    assert np.array_equal(np.sign(detected), np.sign(data))
