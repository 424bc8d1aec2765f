"""doflab: degrees-of-freedom laboratory for multiuser MISO broadcast
channels with quality-limited current CSIT and perfect delayed CSIT.

The package has three legs:

* an exact symbolic calculus over declarative transmission schemes
  (validation plus per-user DoF as rational functions of the quality
  exponent),
* quality-parameterized DoF region polytopes with exact membership,
* a Monte Carlo link-level simulator whose SNR-slope regressions
  reproduce the symbolic values.
"""

from .alphapoly import ALPHA, ONE, ONE_MINUS_ALPHA, ZERO, AffineAlpha, PolyAlpha, as_fraction
from .beamform import (
    BeamVector,
    DimensionMismatch,
    NullSpaceEmpty,
    ZeroVector,
    null_space_unit,
    span_unit,
    zf_precoder_set,
)
from .channel import (
    ChannelSlot,
    CsitQuality,
    EpisodeRealization,
    SnrPoint,
    error_variance,
    sample_episode,
)
from .dofcalc import (
    BeamConstraint,
    DecodeStep,
    DofResult,
    InvalidScheme,
    SchemeSpec,
    SideInfoTerm,
    SlotDecl,
    SymbolDecl,
    UnsupportedK,
    ValidationReport,
    Violation,
    dof_at,
    dof_symbolic,
    effective_exponent,
    permute_users,
    validate,
)
from .executor import (
    ReceivedTermBreakdown,
    SinrLedger,
    SlotMismatch,
    execute_episode,
)
from .region import (
    CrossCheckReport,
    DofRegion,
    HalfSpace,
    achievability_cross_check,
    contains,
    region_theorem1,
    region_theorem3,
    vertex_table,
)
from .schemes import (
    build_mat,
    build_tdma,
    build_x1,
    build_x2,
    build_x3,
    build_x4,
    build_x5,
    build_zf,
    builtin_catalog,
    harmonic,
    resolve,
)
from .simulate import (
    ConfigError,
    InsufficientPoints,
    RateReport,
    SweepConfig,
    estimate_slope,
    leakage_slopes,
    parse_config,
    run_sweep,
)

__version__ = "0.1.0"
