"""Engel series expansions, their cylinder geometry and digit growth exponents."""
from .analysis import (
    DimensionValue,
    LambdaEstimate,
    count_monotone,
    d_exponent_hat,
    dim_D_level,
    dim_fast_growth,
    dim_lambda_level,
    dim_phi,
    dim_window,
    enumerate_monotone,
    lambda_hat,
    series_partial,
    xi_estimate,
)
from .constructions import (
    PerturbationFamily,
    TidySequence,
    approximant_irrational,
    approximant_rational,
    digits_for_lambda,
    exponent_A,
    perturbed_digits,
    tidy_sequence,
    window_member_digits,
)
from .core import (
    CylinderInterval,
    DigitSeq,
    cylinder,
    engel_step,
    expand,
    expand_rational,
    is_admissible,
    locate,
    reconstruct,
)
from .errors import (
    AdmissibilityError,
    ConfigError,
    DomainError,
    EngelError,
    LengthError,
    NoBumpIndex,
    ScanBudgetExceeded,
    TerminatedEarly,
    TooLarge,
    WindowTooSmall,
)
from .experiments import (
    McConfig,
    McResult,
    CoverSumResult,
    cover_sum_beta,
    cover_sum_pq,
    ekj_breakdown,
    emit,
    mc_slln,
)
from .growth import GrowthFunction

__version__ = "0.1.0"
