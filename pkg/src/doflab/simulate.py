"""Monte Carlo SNR sweeps with slope-regression DoF estimates.

A sweep runs a scheme over an (alpha, SNR) grid, averages the per-user
accounted rates over many independent episodes, and regresses rate
against log2(SNR) inside a high-SNR window; the slope is the measured
DoF.  The default window is 60-80 dB: wide enough that power levels
separated by half a quality exponent differ by 30 dB, still well inside
double precision.

Rates are reported in bits per slot so the slope compares directly with
the exact symbolic values.  Sweeps are deterministic given the seed:
episode seeds derive from (seed, alpha index, SNR index, trial, attempt)
and aggregation order is fixed by grid index, also under the process
pool.
"""

from __future__ import annotations

import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .alphapoly import as_fraction, format_fraction
from .beamform import NullSpaceEmpty
from .channel import CsitQuality, SnrPoint, sample_episode
from .dofcalc import SchemeSpec, permute_users
from .executor import execute_episode
from . import schemes as _schemes

log = logging.getLogger("doflab.simulate")

DEFAULT_WINDOW_DB = (60.0, 80.0)
OUTPUT_DIR_ENV = "DOFLAB_OUTPUT_DIR"
_MAX_RESAMPLES = 100


class ConfigError(Exception):
    """A sweep configuration file failed to parse or validate."""


class InsufficientPoints(Exception):
    """Slope estimation needs at least two points inside the window."""


@dataclass(frozen=True)
class SweepConfig:
    scheme: str
    alphas: Tuple[Fraction, ...]
    snr_db: Tuple[float, ...]
    trials: int
    seed: int
    output: Optional[str] = None
    window_db: Tuple[float, float] = DEFAULT_WINDOW_DB
    workers: int = 1

    def __post_init__(self):
        if len(self.snr_db) < 2:
            raise ConfigError("need at least 2 snr_db points for slope estimation")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.alphas:
            raise ConfigError("need at least one alpha")


def parse_config(text: str) -> SweepConfig:
    """Parse the flat key=value sweep format.

    Repeated ``alpha=`` and ``snr_db=`` lines accumulate; ``#`` starts a
    comment.  Errors carry the offending line number.
    """
    values = {"alpha": [], "snr_db": []}
    scalars = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        try:
            if key == "alpha":
                values["alpha"].append(as_fraction(val))
            elif key == "snr_db":
                values["snr_db"].append(float(val))
            elif key in ("trials", "seed", "workers"):
                scalars[key] = int(val)
            elif key in ("scheme", "output"):
                scalars[key] = val
            elif key == "window_db":
                lo, hi = (float(x) for x in val.split(","))
                scalars["window_db"] = (lo, hi)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ConfigError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    if "scheme" not in scalars:
        raise ConfigError("missing required key 'scheme'")
    try:
        return SweepConfig(
            scheme=scalars["scheme"],
            alphas=tuple(values["alpha"]),
            snr_db=tuple(values["snr_db"]),
            trials=scalars.get("trials", 100),
            seed=scalars.get("seed", 0),
            output=scalars.get("output"),
            window_db=scalars.get("window_db", DEFAULT_WINDOW_DB),
            workers=scalars.get("workers", 1),
        )
    except ConfigError:
        raise


@dataclass(frozen=True)
class RateRow:
    scheme: str
    K: int
    N: int
    alpha: Fraction
    snr_db: float
    user: int
    rate: float
    stderr: float


@dataclass(frozen=True)
class SlopeRow:
    scheme: str
    alpha: Fraction
    user: int
    dof: float
    window_db: Tuple[float, float]
    residual: float


@dataclass(frozen=True)
class RateReport:
    rows: Tuple[RateRow, ...]
    slopes: Tuple[SlopeRow, ...]

    def to_csv_text(self) -> str:
        lines = ["scheme,K,N,alpha,snr_db,user,rate,stderr"]
        for r in self.rows:
            lines.append(
                f"{r.scheme},{r.K},{r.N},{format_fraction(r.alpha)},"
                f"{r.snr_db:.12g},{r.user},{r.rate:.12g},{r.stderr:.12g}"
            )
        return "\n".join(lines) + "\n"

    def slopes_doc(self) -> list:
        return [
            {
                "scheme": s.scheme,
                "alpha": format_fraction(s.alpha),
                "user": s.user,
                "dof": s.dof,
                "window_db": list(s.window_db),
                "residual": s.residual,
            }
            for s in self.slopes
        ]

    def slope_of(self, alpha, user: int) -> float:
        a = as_fraction(alpha)
        for s in self.slopes:
            if s.alpha == a and s.user == user:
                return s.dof
        raise KeyError((alpha, user))


def estimate_slope(
    rates: Sequence[Tuple[float, float]],
    window_db: Tuple[float, float] = DEFAULT_WINDOW_DB,
) -> Tuple[float, float]:
    """Least-squares slope of rate against log2(SNR) inside the window.

    Returns (slope, RMS residual).  The slope is the DoF estimate.
    """
    lo, hi = window_db
    pts = [(db, r) for db, r in rates if lo <= db <= hi]
    if len(pts) < 2:
        raise InsufficientPoints(f"{len(pts)} points inside window {window_db}")
    x = np.array([db * math.log2(10.0) / 10.0 for db, _ in pts])
    y = np.array([r for _, r in pts])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), residual


def resolve_scheme_ref(ref: str) -> SchemeSpec:
    """A builder name like ``x3:4`` or a path to a scheme document."""
    if ref.endswith(".json") or os.path.sep in ref or os.path.exists(ref):
        with open(ref, "r", encoding="utf-8") as fh:
            return SchemeSpec.loads(fh.read())
    return _schemes.resolve(ref)


def _episode_seed(seed: int, ai: int, si: int, trial: int, attempt: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(ai, si, trial, attempt))
    return int(ss.generate_state(1, np.uint64)[0])


def _run_point(
    scheme_variants: Sequence[SchemeSpec],
    ai: int,
    alpha: Fraction,
    si: int,
    snr_db: float,
    trials: int,
    seed: int,
) -> np.ndarray:
    """Per-user accounted rates (bits/slot) for `trials` episodes."""
    quality = CsitQuality.of(alpha)
    snr = SnrPoint.from_db(snr_db)
    K = scheme_variants[0].K
    rates = np.zeros((trials, K))
    for t in range(trials):
        scheme = scheme_variants[t % len(scheme_variants)]
        attempt = 0
        while True:
            eseed = _episode_seed(seed, ai, si, t, attempt)
            episode = sample_episode(
                scheme.K, scheme.N, scheme.slot_count, quality, snr, eseed
            )
            try:
                _, ledger = execute_episode(scheme, episode, payload_rng_seed=eseed)
                break
            except NullSpaceEmpty:
                attempt += 1
                log.warning(
                    "degenerate channel draw at alpha=%s snr=%s trial=%d; resampling (%d)",
                    alpha, snr_db, t, attempt,
                )
                if attempt > _MAX_RESAMPLES:
                    raise
        for u in range(K):
            rates[t, u] = ledger.accounted_rate_bits(u) / scheme.slot_count
    return rates


def run_sweep(config: SweepConfig) -> RateReport:
    """Run the full (alpha, SNR) grid and fit per-user slopes.

    Grid points execute independently (optionally on a process pool);
    aggregation order is fixed by grid index so reports are
    reproducible bit for bit.
    """
    scheme = resolve_scheme_ref(config.scheme)
    variants = [scheme]
    if scheme.round_robin_users:
        K = scheme.K
        variants = [
            permute_users(scheme, [(u + r) % K for u in range(K)]) for r in range(K)
        ]

    grid = [
        (ai, alpha, si, snr_db)
        for ai, alpha in enumerate(config.alphas)
        for si, snr_db in enumerate(config.snr_db)
    ]
    results: dict = {}
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {
                (ai, si): pool.submit(
                    _run_point, variants, ai, alpha, si, snr_db,
                    config.trials, config.seed,
                )
                for ai, alpha, si, snr_db in grid
            }
            for (ai, si), fut in futures.items():
                results[(ai, si)] = fut.result()
                print(f"[sweep] point alpha#{ai} snr#{si} done", file=sys.stderr)
    else:
        for ai, alpha, si, snr_db in grid:
            results[(ai, si)] = _run_point(
                variants, ai, alpha, si, snr_db, config.trials, config.seed
            )
            print(
                f"[sweep] {scheme.name} alpha={format_fraction(alpha)} "
                f"snr={snr_db:g} dB done",
                file=sys.stderr,
            )

    rows: List[RateRow] = []
    for ai, alpha in enumerate(config.alphas):
        for si, snr_db in enumerate(config.snr_db):
            rates = results[(ai, si)]
            mean = rates.mean(axis=0)
            if config.trials > 1:
                stderr = rates.std(axis=0, ddof=1) / math.sqrt(config.trials)
            else:
                stderr = np.zeros(scheme.K)
            for u in range(scheme.K):
                rows.append(
                    RateRow(
                        scheme=scheme.name,
                        K=scheme.K,
                        N=scheme.N,
                        alpha=alpha,
                        snr_db=snr_db,
                        user=u,
                        rate=float(mean[u]),
                        stderr=float(stderr[u]),
                    )
                )

    slopes: List[SlopeRow] = []
    for ai, alpha in enumerate(config.alphas):
        for u in range(scheme.K):
            pts = [
                (snr_db, float(results[(ai, si)].mean(axis=0)[u]))
                for si, snr_db in enumerate(config.snr_db)
            ]
            try:
                dof, residual = estimate_slope(pts, config.window_db)
            except InsufficientPoints:
                continue
            slopes.append(
                SlopeRow(
                    scheme=scheme.name,
                    alpha=alpha,
                    user=u,
                    dof=dof,
                    window_db=config.window_db,
                    residual=residual,
                )
            )

    report = RateReport(rows=tuple(rows), slopes=tuple(slopes))
    if config.output:
        path = output_path(config.output)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv_text())
        print(f"[sweep] wrote {path}", file=sys.stderr)
    return report


def output_path(name: str) -> str:
    """Resolve an output file against the configured output directory."""
    base = os.environ.get(OUTPUT_DIR_ENV, "")
    if base and not os.path.isabs(name):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, name)
    return name


def leakage_slopes(
    K: int,
    alpha,
    snr_db_grid: Sequence[float],
    trials: int,
    seed: int,
) -> Tuple[float, float]:
    """Slope of the zero-forcing leakage power against log2(SNR).

    Measures the mean interference power of each nulled layer at the
    users it was nulled toward; with full-power layers and quality
    exponent ``a`` the law is slope = 1 - a.  Returns (slope, residual).
    """
    scheme = _schemes.build_zf(K)
    quality = CsitQuality.of(alpha)
    pts = []
    for si, snr_db in enumerate(snr_db_grid):
        snr = SnrPoint.from_db(snr_db)
        acc = 0.0
        count = 0
        for t in range(trials):
            eseed = _episode_seed(seed, 0, si, t, 0)
            episode = sample_episode(K, K, 1, quality, snr, eseed)
            bd, _ = execute_episode(scheme, episode, payload_rng_seed=eseed)
            for u in range(K):
                powers = bd.powers(u, 1)
                for j in range(K):
                    if j != u:
                        acc += powers[f"z{j}"]
                        count += 1
        pts.append((snr_db, math.log2(acc / count)))
    return estimate_slope(pts, (min(snr_db_grid), max(snr_db_grid)))
