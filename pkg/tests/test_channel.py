"""Channel sampling: error-variance scaling, determinism, independence."""

from fractions import Fraction

import numpy as np
import pytest

from doflab import CsitQuality, SnrPoint, error_variance, sample_episode


def test_error_variance_values():
    assert error_variance(CsitQuality.of(0), SnrPoint.from_linear(1000)) == 1
    assert error_variance(CsitQuality.of(1), SnrPoint.from_linear(1000)) == pytest.approx(1e-3)
    assert error_variance(
        CsitQuality.of(Fraction(1, 2)), SnrPoint.from_linear(1e4)
    ) == pytest.approx(1e-2)


def test_error_variance_clamped_at_prior():
    # Negative-exponent regime: a = 1 at P < 1 would exceed the prior.
    assert error_variance(CsitQuality.of(1), SnrPoint.from_linear(0.25)) == 1


def test_quality_range_enforced():
    with pytest.raises(ValueError):
        CsitQuality.of(Fraction(3, 2))
    with pytest.raises(ValueError):
        CsitQuality.of(-1)


def test_snr_point_consistency():
    p = SnrPoint.from_db(62.0)
    assert p.p_linear == pytest.approx(10 ** 6.2)
    with pytest.raises(ValueError):
        SnrPoint(p_linear=100.0, p_db=10.0)
    with pytest.raises(ValueError):
        SnrPoint.from_linear(0.0)


def test_sample_rejects_bad_dimensions():
    q, s = CsitQuality.of(0), SnrPoint.from_db(20)
    for bad in ((0, 3, 1), (3, 0, 1), (3, 3, 0)):
        with pytest.raises(ValueError):
            sample_episode(*bad, q, s, seed=0)


def test_alpha_zero_means_no_usable_estimate():
    ep = sample_episode(3, 3, 2, CsitQuality.of(0), SnrPoint.from_linear(100), seed=1)
    for slot in ep.slots:
        assert np.all(slot.h_est == 0)
        assert np.all(slot.h_true != 0)


def test_reproducibility_bit_identical():
    q, s = CsitQuality.of(Fraction(1, 2)), SnrPoint.from_db(40)
    a = sample_episode(3, 3, 7, q, s, seed=99)
    b = sample_episode(3, 3, 7, q, s, seed=99)
    for sa, sb in zip(a.slots, b.slots):
        assert np.array_equal(sa.h_true, sb.h_true)
        assert np.array_equal(sa.h_est, sb.h_est)
    c = sample_episode(3, 3, 7, q, s, seed=100)
    assert not np.array_equal(a.slots[0].h_true, c.slots[0].h_true)


def test_error_statistics_over_1e5_entries():
    # |sample variance - P^-a| / P^-a < 5%, mean magnitude < 0.02.
    for alpha, p in ((Fraction(0), 1e2), (Fraction(1, 2), 1e4), (Fraction(1), 1e4)):
        q, s = CsitQuality.of(alpha), SnrPoint.from_linear(p)
        ep = sample_episode(4, 4, 6250, q, s, seed=23)
        err = np.concatenate([(sl.h_true - sl.h_est).ravel() for sl in ep.slots])
        assert err.size == 100_000
        target = error_variance(q, s)
        assert abs(np.mean(np.abs(err) ** 2) - target) / target < 0.05
        assert abs(np.mean(err)) < 0.02 * np.sqrt(target)


def test_true_channel_keeps_unit_variance():
    q, s = CsitQuality.of(Fraction(1, 2)), SnrPoint.from_linear(100)
    ep = sample_episode(4, 4, 6250, q, s, seed=5)
    h = np.concatenate([sl.h_true.ravel() for sl in ep.slots])
    assert abs(np.mean(np.abs(h) ** 2) - 1.0) < 0.05


def test_slot_independence_proxy():
    q, s = CsitQuality.of(Fraction(1, 2)), SnrPoint.from_linear(100)
    ep = sample_episode(10, 10, 1000, q, s, seed=17)
    x = np.stack([sl.h_true.ravel() for sl in ep.slots])  # (T, 100)
    a, b = x[:-1].ravel(), x[1:].ravel()
    corr = np.abs(np.mean(a * np.conj(b)))
    assert corr < 0.02
