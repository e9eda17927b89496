"""Weighted Davenport constants by certified search, plus closed-form predictions."""

from .search import (
    ConstantResult, LevelStat, ZeroSumFreeSearch, search_terms, davenport_constant,
    consecutive_constant, compute_constant, certify_lower_bound,
)
from .predictions import Prediction, NOT_COVERED, predicted_constants, large_primes_squarefree
from .certificates import (
    subsequence_certificate, consecutive_certificate, unit_certificate,
    strengthen_with_construction, constructed_lower_bound,
)

__all__ = [
    "ConstantResult",
    "LevelStat",
    "ZeroSumFreeSearch",
    "search_terms",
    "davenport_constant",
    "consecutive_constant",
    "compute_constant",
    "certify_lower_bound",
    "Prediction",
    "NOT_COVERED",
    "predicted_constants",
    "large_primes_squarefree",
    "subsequence_certificate",
    "consecutive_certificate",
    "unit_certificate",
    "strengthen_with_construction",
    "constructed_lower_bound",
]
