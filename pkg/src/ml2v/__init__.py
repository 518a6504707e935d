"""Two-variable Mittag-Leffler function E(x, y) = sum x^n y^m / Gamma(alpha n + beta m + mu).

Three independent evaluation routes (power series, contour-integral
representations, large-argument asymptotics), an automatic dispatcher, and an
extended-precision oracle for cross-validation.
"""

from .asymptotics import TruncationOrders, classify_case, eval_asymptotic
from .core import (
    ContourSpec,
    Evaluation,
    Parameters,
    Regime,
    RegionLabel,
    admissible_theta_window,
    classify_region,
    derived_contour_params,
    validate_params,
)
from .errors import (
    BudgetExceeded,
    DegenerateDenominator,
    DomainError,
    GeometryError,
    MagnitudeFloor,
    PoleProximityError,
    QuadratureError,
    RegionError,
    ThinWindowWarning,
)
from .gamma import recip_gamma, recip_gamma_hankel
from .oracle import CorpusRecord, load_corpus, make_record, oracle_eval, write_corpus
from .representations import (
    choose_contour,
    classify_pair,
    eval_auto,
    eval_lemma1,
    eval_lemma2,
    eval_lemma3,
    eval_remark1,
    eval_with_contour,
    pole_images,
)
from .series import SeriesBudget, eval_double_series, eval_ml_one

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ContourSpec",
    "CorpusRecord",
    "DegenerateDenominator",
    "DomainError",
    "Evaluation",
    "GeometryError",
    "MagnitudeFloor",
    "Parameters",
    "PoleProximityError",
    "QuadratureError",
    "Regime",
    "RegionError",
    "RegionLabel",
    "SeriesBudget",
    "ThinWindowWarning",
    "TruncationOrders",
    "admissible_theta_window",
    "choose_contour",
    "classify_case",
    "classify_pair",
    "classify_region",
    "derived_contour_params",
    "eval_asymptotic",
    "eval_auto",
    "eval_double_series",
    "eval_lemma1",
    "eval_lemma2",
    "eval_lemma3",
    "eval_ml_one",
    "eval_remark1",
    "eval_with_contour",
    "load_corpus",
    "make_record",
    "oracle_eval",
    "pole_images",
    "recip_gamma",
    "recip_gamma_hankel",
    "validate_params",
    "write_corpus",
    "__version__",
]
