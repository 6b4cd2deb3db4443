"""Bounds, certificates and constructions for coverings and packings of pairs."""

from .bounds import (
    BoundReport,
    ParamSet,
    TrivialParametersError,
    best_bounds,
    covering_lower_bound,
    make_params,
    packing_upper_bound,
)
from .construct import affine_plane, blowup, exact_range, restrict_covering
from .designs import Design, classify, parse_design, format_design
from .oracle import SearchBudget, max_pack, min_cover
from .surd import BoundValue

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundValue",
    "Design",
    "ParamSet",
    "SearchBudget",
    "TrivialParametersError",
    "affine_plane",
    "best_bounds",
    "blowup",
    "classify",
    "covering_lower_bound",
    "exact_range",
    "format_design",
    "make_params",
    "max_pack",
    "min_cover",
    "packing_upper_bound",
    "parse_design",
    "restrict_covering",
]
