"""Extremal sequences, structural forms and the theorem and lemma checks built on them."""

from .registry import ResultRegistry, TheoremEntry, LemmaEntry, get_registry
from .extremal import (
    Strategy, TermClasses, ExtremalFamily, FamilyAudit, term_classes, class_tuples, searched_constant,
    is_extremal, enumerate_extremal, expand_class, audit_family,
)
from .forms import FORMS, FormParams, form_params, matches_form
from .theorems import TheoremReport, Verdict, compare_sides, verify_theorem, check_theorem_hypotheses
from .lemmas import verify_lemma
from .explore import Exploration, explore_dsn, explore_transfer

__all__ = [
    "ResultRegistry",
    "TheoremEntry",
    "LemmaEntry",
    "get_registry",
    "Strategy",
    "TermClasses",
    "ExtremalFamily",
    "FamilyAudit",
    "term_classes",
    "class_tuples",
    "searched_constant",
    "is_extremal",
    "enumerate_extremal",
    "expand_class",
    "audit_family",
    "FORMS",
    "FormParams",
    "form_params",
    "matches_form",
    "TheoremReport",
    "Verdict",
    "compare_sides",
    "verify_theorem",
    "check_theorem_hypotheses",
    "verify_lemma",
    "Exploration",
    "explore_dsn",
    "explore_transfer",
]
