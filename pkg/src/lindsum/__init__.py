"""Exact distributions of sums of Lindley-family lifetimes and the
1-out-of-n cold-standby reliability they induce, with built-in cross-checks
against quadrature and Monte Carlo."""

from .family import (
    AKASH,
    ISHITA,
    LINDLEY,
    MEMBERS,
    PRANAV,
    RAM_AWADH,
    RANI,
    SHANKER,
    AlphaKind,
    DistSpec,
    FamilyMember,
    member_by_name,
)
from .numerics import (
    QuadratureError,
    QuadratureResult,
    erlang_tail,
    integrate,
    ln_binomial,
    ln_factorial,
    logsumexp,
    sum_log_terms,
)
from .reliability import (
    ExponentialStandby,
    MttfRow,
    ReliabilityCurve,
    StandbyModel,
    exponential_mttf,
    exponential_reliability,
    lindley_mttf,
    lindley_reliability,
    mttf_table,
    reliability_curve,
)
from .sums import ErlangMixture, SumSpec
from .validation import (
    DEFAULT_SEEDS,
    KS_99_COEFFICIENT,
    CheckResult,
    KsReport,
    VerificationReport,
    VerifyConfig,
    convolution_oracle_pdf,
    ks_statistic,
    sample_sum,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "AKASH",
    "AlphaKind",
    "CheckResult",
    "DEFAULT_SEEDS",
    "DistSpec",
    "ErlangMixture",
    "ExponentialStandby",
    "FamilyMember",
    "ISHITA",
    "KS_99_COEFFICIENT",
    "KsReport",
    "LINDLEY",
    "MEMBERS",
    "MttfRow",
    "PRANAV",
    "QuadratureError",
    "QuadratureResult",
    "RAM_AWADH",
    "RANI",
    "ReliabilityCurve",
    "SHANKER",
    "StandbyModel",
    "SumSpec",
    "VerificationReport",
    "VerifyConfig",
    "convolution_oracle_pdf",
    "erlang_tail",
    "exponential_mttf",
    "exponential_reliability",
    "integrate",
    "ks_statistic",
    "lindley_mttf",
    "lindley_reliability",
    "ln_binomial",
    "ln_factorial",
    "logsumexp",
    "member_by_name",
    "mttf_table",
    "reliability_curve",
    "sample_sum",
    "sum_log_terms",
    "verify_all",
    "__version__",
]
