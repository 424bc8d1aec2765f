"""Null-space and span beamforming vectors.

All transmission schemes here steer symbols either along a user's
estimated channel (span beam) or into the joint null space of a set of
estimated channels (zero-forcing beam).  Vectors are unit norm and
carry a deterministic phase convention (first nonzero entry real
positive) so repeated runs produce identical beams.

Null spaces come from a full SVD rather than Gram-Schmidt; the SVD is
robust when the stacked rows are close to rank deficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

RANK_RTOL = 1e-8      # relative singular-value cutoff for "no null space"
PHASE_TOL = 1e-12
NORM_TOL = 1e-12


class NullSpaceEmpty(Exception):
    """The stacked rows already span the full space (degenerate draw)."""


class DimensionMismatch(Exception):
    """A constraint row does not have the advertised length."""


class ZeroVector(Exception):
    """A span beam was requested for a (numerically) zero channel row."""


@dataclass(frozen=True)
class BeamVector:
    """Unit-norm beamforming vector plus the phase factor applied to it."""

    v: np.ndarray
    phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        self.v.setflags(write=False)


def _phase_normalize(v: np.ndarray) -> BeamVector:
    for x in v:
        if abs(x) > PHASE_TOL:
            phase = np.conj(x) / abs(x)
            return BeamVector(v * phase, complex(phase))
    return BeamVector(v)


def null_space_unit(rows: Sequence[np.ndarray], N: int) -> BeamVector:
    """Deterministic unit vector orthogonal to every given channel row.

    With no rows the canonical choice is the first basis vector.  With
    0 < len(rows) < N the vector is the last right-singular vector of
    the stacked rows, phase normalized.  Raises NullSpaceEmpty when the
    rows numerically span the whole space.
    """
    rows = [np.asarray(r).reshape(-1) for r in rows]
    for r in rows:
        if r.shape[0] != N:
            raise DimensionMismatch(f"row of length {r.shape[0]}, expected {N}")
    if not rows:
        e = np.zeros(N, dtype=complex)
        e[0] = 1.0
        return BeamVector(e)

    a = np.vstack(rows).astype(complex)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    if s.size >= N and s[-1] > RANK_RTOL * s[0]:
        raise NullSpaceEmpty(f"{len(rows)} rows span C^{N} (smallest sv {s[-1]:.3e})")
    return _phase_normalize(np.conj(vh[-1]))


def span_unit(row: np.ndarray) -> BeamVector:
    """Unit vector aligned with the conjugated channel row."""
    row = np.asarray(row).reshape(-1).astype(complex)
    nrm = np.linalg.norm(row)
    if nrm <= NORM_TOL:
        raise ZeroVector("cannot take the span of a zero row")
    return _phase_normalize(np.conj(row) / nrm)


def zf_precoder_set(h_est: np.ndarray) -> list[BeamVector]:
    """Per-user zero-forcing beams from an estimated K x N channel.

    Entry i is orthogonal to every estimated row except row i.  A
    degenerate draw propagates NullSpaceEmpty so the caller can
    resample.
    """
    h_est = np.asarray(h_est)
    K, N = h_est.shape
    if K > N:
        raise DimensionMismatch(f"need K <= N for per-user nulls, got {K} > {N}")
    out = []
    for i in range(K):
        rows = [h_est[j] for j in range(K) if j != i]
        out.append(null_space_unit(rows, N))
    return out
