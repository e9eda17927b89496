"""Weighted zero-sum decisions over Z_n."""

from .sequence import Sequence, Witness, ZeroSumMode
from .zerosum import (
    TranslateTable, translate_table, SumReach, ZeroSumCheck, weighted_translates, has_zero_subsequence,
    has_zero_consecutive, has_zero_sum, is_weighted_zero_sum_sequence, terms_have_zero_sum,
    terms_sum_to_zero,
)
from .extender import ExtenderState, empty_state, creates_zero, incremental_extender

__all__ = [
    "Sequence",
    "Witness",
    "ZeroSumMode",
    "TranslateTable",
    "translate_table",
    "SumReach",
    "ZeroSumCheck",
    "weighted_translates",
    "has_zero_subsequence",
    "has_zero_consecutive",
    "has_zero_sum",
    "is_weighted_zero_sum_sequence",
    "terms_have_zero_sum",
    "terms_sum_to_zero",
    "ExtenderState",
    "empty_state",
    "creates_zero",
    "incremental_extender",
]
