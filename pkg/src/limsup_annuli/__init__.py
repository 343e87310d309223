"""Hausdorff dimension of limsup sets of annuli centred at rational points.

Closed-form dimension formulas (:mod:`.formulas`), exact rational geometry
of the underlying shapes (:mod:`.geometry`), the mass-transference lower
bound and its inputs (:mod:`.mtp`), covering counts for the upper bound
(:mod:`.cover`), family enumeration (:mod:`.enumeration`) and seeded
certificates (:mod:`.verify`).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    HypothesisWarning,
    IndeterminateError,
    InvalidParameterError,
    OutsideRegimeError,
    SelectionUndefinedError,
    UnsupportedDescriptorError,
)
from .formulas import (  # noqa: F401
    DimensionResult,
    ExponentProfile,
    dim_isotropic,
    dim_isotropic_limit,
    dim_weighted,
    exact_order_upper_bound,
    regime,
    threshold,
)
from .geometry import (  # noqa: F401
    Annulus,
    Ball,
    QuasiAnnulus,
    RationalPoint,
    Rect,
    RectAnnulus,
    annulus_family,
    contains,
    inscribed_cube,
    membership_scan,
    rect_annulus,
    rect_annulus_decompose,
    shifted_rect,
)
from .mtp import (  # noqa: F401
    MtpInstance,
    PowerLaw,
    check_shift_condition,
    classify_hf_series,
    dim_mtp,
    dim_perturbed,
    rynne_oracle,
    select_exponents,
    shifted_rect_gamma,
    ww_lower_bound,
)
from .cover import critical_exponent, measured_cover_count, predicted_cover_count  # noqa: F401
