"""MISO broadcast channel sampling with quality-limited current CSIT.

The transmitter predicts the current channel from delayed feedback; the
prediction error has per-entry variance ``P**-a`` where ``P`` is the SNR
and ``a`` in [0, 1] is the quality exponent.  The split is

    h_true = h_est + h_err,
    h_err  ~ CN(0, min(P**-a, 1)) i.i.d.,
    h_est  ~ CN(0, 1 - min(P**-a, 1)) i.i.d.,

so the true channel keeps unit-variance entries regardless of quality.
Slots are sampled independently: every scheme analysed here depends on
the correlation process only through the error-variance scaling, so a
correlated fading trace would add cost without changing any result.

Randomness comes from a counter-based Philox stream keyed by the seed.
Draw order is fixed and documented: estimate entries first, then error
entries, each as a real block followed by an imaginary block, laid out
slot-major then user then antenna.  Identical arguments therefore give
bit-identical realizations on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log10
from typing import Tuple

import numpy as np

from .alphapoly import RationalLike, as_fraction


@dataclass(frozen=True)
class CsitQuality:
    """Exact quality exponent: error variance scales as ``P**-alpha``."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if not (0 <= self.alpha <= 1):
            raise ValueError(f"quality exponent must lie in [0, 1], got {self.alpha}")

    @staticmethod
    def of(alpha: RationalLike) -> "CsitQuality":
        return CsitQuality(as_fraction(alpha))


@dataclass(frozen=True)
class SnrPoint:
    """One SNR operating point, kept in linear and dB form."""

    p_linear: float
    p_db: float

    def __post_init__(self):
        if self.p_linear <= 0:
            raise ValueError("linear SNR must be positive")
        if abs(self.p_linear - 10.0 ** (self.p_db / 10.0)) > 1e-12 * self.p_linear:
            raise ValueError("p_linear and p_db disagree")

    @staticmethod
    def from_db(p_db: float) -> "SnrPoint":
        return SnrPoint(10.0 ** (p_db / 10.0), float(p_db))

    @staticmethod
    def from_linear(p: float) -> "SnrPoint":
        if p <= 0:
            raise ValueError("linear SNR must be positive")
        return SnrPoint(float(p), 10.0 * log10(p))


@dataclass(frozen=True)
class ChannelSlot:
    """True and estimated channel matrices for one slot (rows = users)."""

    h_true: np.ndarray
    h_est: np.ndarray
    slot_index: int

    def __post_init__(self):
        if self.h_true.shape != self.h_est.shape:
            raise ValueError("true/estimated channel shapes differ")
        if self.slot_index < 1:
            raise ValueError("slot_index starts at 1")


@dataclass(frozen=True)
class EpisodeRealization:
    """All channel slots needed to run one scheme episode."""

    slots: Tuple[ChannelSlot, ...]
    K: int
    N: int
    snr: SnrPoint
    quality: CsitQuality
    seed: int

    def __post_init__(self):
        if not self.slots:
            raise ValueError("an episode needs at least one slot")
        for s in self.slots:
            if s.h_true.shape != (self.K, self.N):
                raise ValueError("slot dimensions disagree with (K, N)")


def error_variance(quality: CsitQuality, snr: SnrPoint) -> float:
    """Per-entry estimation error variance, clamped at the prior variance.

    The clamp keeps a = 0 at small SNR from producing an estimate noisier
    than the channel prior itself.
    """
    if snr.p_linear <= 0:
        raise ValueError("linear SNR must be positive")
    return min(snr.p_linear ** (-float(quality.alpha)), 1.0)


def sample_episode(
    K: int,
    N: int,
    T: int,
    quality: CsitQuality,
    snr: SnrPoint,
    seed: int,
) -> EpisodeRealization:
    """Sample T independent slots of a K-user, N-antenna broadcast channel."""
    if K < 1 or N < 1 or T < 1:
        raise ValueError("K, N and T must all be positive")
    if snr.p_linear <= 0:
        raise ValueError("linear SNR must be positive")

    err_var = error_variance(quality, snr)
    est_var = 1.0 - err_var

    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    shape = (T, K, N)
    h_est = _complex_gaussian(rng, shape, est_var)
    h_err = _complex_gaussian(rng, shape, err_var)
    h_true = h_est + h_err

    slots = tuple(
        ChannelSlot(h_true=h_true[t], h_est=h_est[t], slot_index=t + 1)
        for t in range(T)
    )
    return EpisodeRealization(slots=slots, K=K, N=N, snr=snr, quality=quality, seed=seed)


def _complex_gaussian(rng: np.random.Generator, shape, var: float) -> np.ndarray:
    """Circular complex Gaussian block; real block drawn before imaginary."""
    if var == 0.0:
        # Keep the stream position independent of the variance value.
        rng.standard_normal(shape)
        rng.standard_normal(shape)
        return np.zeros(shape, dtype=complex)
    scale = np.sqrt(var / 2.0)
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return scale * (re + 1j * im)
