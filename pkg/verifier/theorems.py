"""
Set-equality (or inclusion) checks between families of extremal sequences.

The left side is the family of extremal sequences for the restricted weight set
(S(n), L(n;p') or Q_p). The right side is the family for U(n), when the result
mentions it, united with the sequences matching the listed forms. Both
extremal families come from the pruned extremal DFS over the same per-term
orbit classes of the restricted set, since every predicate involved is
unchanged when a term is multiplied by one of its elements. Only the forms
need a scan over every class tuple of the extremal length.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Set, Tuple

from arithmetic.modulus import Modulus
from config.settings import SearchConfig
from constants.predictions import large_primes_squarefree, predicted_constants
from constants.search import ConstantResult, compute_constant
from engine.sequence import Sequence, ZeroSumMode
from utils.errors import HypothesisError, UsageError
from utils.logger import get_execution_logger, get_logger
from verifier.extremal import ExtremalFamily, Strategy, TermClasses, class_tuples, enumerate_extremal
from verifier.forms import FormParams, form_params, matches_form
from verifier.registry import TheoremEntry, get_registry
from weights.weight_sets import WeightSet, l_weights, s_weights, unit_squares, units

logger = get_logger(__name__)
execution_logger = get_execution_logger()

Classes = Tuple[int, ...]
FormScan = Tuple[Dict[Classes, int], Set[Classes], int]


class Verdict(Enum):
    VERIFIED = "verified"
    COUNTEREXAMPLE = "counterexample"
    WITHHELD = "withheld"


@dataclass
class TheoremReport:
    """Verdict for one theorem or lemma instance; verified iff no counterexample"""
    theorem_id: str
    instance: Dict[str, Any]
    verdict: Verdict
    counterexamples: List[Sequence] = field(default_factory=list)
    counterexample_count: int = 0
    stats: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    exhaustive: bool = True

    @property
    def verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED


@dataclass
class SideComparison:
    holds: bool
    only_left: List[Tuple[int, ...]]
    only_right: List[Tuple[int, ...]]


def compare_sides(left: Set[Tuple[int, ...]], right: Set[Tuple[int, ...]], relation: str) -> SideComparison:
    only_left = sorted(left - right)
    only_right = sorted(right - left) if relation == "equality" else []
    return SideComparison(not only_left and not only_right, only_left, only_right)


def check_theorem_hypotheses(entry: TheoremEntry, modulus: Modulus, p_prime: Optional[int],
                             exploratory: bool = False) -> None:
    if entry.needs_parameter:
        if p_prime is None:
            raise UsageError(f"theorem {entry.id} needs --p (a prime divisor p' of n)")
        if p_prime not in modulus.primes:
            raise UsageError(f"{p_prime} is not a prime divisor of {modulus.n}")

    problems = []
    if entry.hypothesis == "prime" and not modulus.is_prime:
        problems.append("n must be prime")
    if entry.hypothesis == "large_primes_squarefree" and not large_primes_squarefree(modulus):
        problems.append("n must be squarefree with every prime divisor at least 7")
    if not entry.omega_allowed(modulus.omega):
        problems.append(f"Ω(n) = {modulus.omega} is outside the stated range")
    if problems and not exploratory:
        logger.error(f"Hypotheses of {entry.id} fail for n={modulus.n}: {problems}")
        raise HypothesisError(f"{entry.id} does not apply to n={modulus.n}: " + "; ".join(problems)
                              + " (use --exploratory to run anyway)")


def restricted_weights(entry: TheoremEntry, modulus: Modulus, p_prime: Optional[int]) -> WeightSet:
    if entry.restricted == "S":
        return s_weights(modulus)
    if entry.restricted == "L":
        return l_weights(modulus, p_prime)
    return unit_squares(modulus)


@dataclass
class _ModeOutcome:
    stats: Dict[str, Any]
    only_left: List[Tuple[int, ...]]
    only_right: List[Tuple[int, ...]]
    withheld: bool = False


def _constant_or_none(weightset: WeightSet, mode: ZeroSumMode, config: SearchConfig) -> Optional[ConstantResult]:
    result = compute_constant(weightset, mode, config)
    return result if result.exhaustive else None


def _family_or_none(modulus: Modulus, weightset: WeightSet, mode: ZeroSumMode, strategy: Strategy,
                    constant: int, restricted: WeightSet, config: SearchConfig) -> Optional[ExtremalFamily]:
    family = enumerate_extremal(modulus, weightset, mode, strategy, constant, restricted, config)
    return family if family.complete else None


def _scan_forms(forms: Tuple[str, ...], diagnose: bool, mode: ZeroSumMode, length: int,
                classes: TermClasses, params: FormParams, config: SearchConfig) -> Optional[FormScan]:
    """
    Class tuples of the given length matching a listed form. Returns the matches
    with their multiplicities, the tuples matching some form up to permutation,
    and the number scanned; None when the budget runs out.
    """
    matched: Dict[Tuple[int, ...], int] = {}
    permuted: Set[Tuple[int, ...]] = set()
    scanned = 0
    deadline = time.time() + config.time_budget_seconds
    for idx in class_tuples(classes, length, mode):
        scanned += 1
        if scanned > config.node_budget or (scanned & 1023 == 0 and time.time() > deadline):
            return None
        terms = tuple(classes.terms[i] for i in idx)
        sequence = Sequence(params.modulus, terms)
        if any(matches_form(sequence, f, params) for f in forms):
            matched[terms] = classes.multiplicity(idx, mode)
        elif diagnose and any(matches_form(sequence, f, params, permute=True) for f in forms):
            permuted.add(terms)
    return matched, permuted, scanned


def _compare_mode(entry: TheoremEntry, mode: ZeroSumMode, restricted: WeightSet, params: FormParams,
                  strategy: Strategy, config: SearchConfig) -> _ModeOutcome:
    modulus = restricted.modulus
    unit_set = units(modulus)
    stats: Dict[str, Any] = {"mode": mode.value, "strategy": strategy.value}

    left_result = _constant_or_none(restricted, mode, config)
    units_result = _constant_or_none(unit_set, mode, config) if entry.units_side else None
    if left_result is None or (entry.units_side and units_result is None):
        stats["reason"] = "constant search incomplete"
        return _ModeOutcome(stats, [], [], withheld=True)

    length = left_result.value - 1
    stats["length"] = length
    stats["constant"] = left_result.value
    stats["predicted_constant"] = predicted_constants(modulus, restricted).value(mode)
    if units_result is not None:
        stats["units_constant"] = units_result.value

    left_family = _family_or_none(modulus, restricted, mode, strategy, left_result.value, restricted, config)
    if left_family is None:
        stats["reason"] = "extremal enumeration incomplete"
        return _ModeOutcome(stats, [], [], withheld=True)
    weights: Dict[Classes, int] = {s.terms: w for s, w in zip(left_family.sequences, left_family.multiplicities)}
    left = set(weights)

    right: Set[Tuple[int, ...]] = set()
    # U(n)-extremal sequences of another length can only add to the right side
    if units_result is not None and (units_result.value == left_result.value or entry.relation == "equality"):
        units_family = _family_or_none(modulus, unit_set, mode, strategy, units_result.value, restricted, config)
        if units_family is None:
            stats["reason"] = "units family incomplete"
            return _ModeOutcome(stats, [], [], withheld=True)
        for sequence, weight in zip(units_family.sequences, units_family.multiplicities):
            weights[sequence.terms] = weight
            right.add(sequence.terms)

    permuted: Set[Tuple[int, ...]] = set()
    stats["scanned"] = 0
    forms = entry.forms_for(modulus.omega)
    if forms:
        scan = _scan_forms(forms, entry.permutation_diagnostic, mode, length, left_family.classes, params, config)
        if scan is None:
            stats["reason"] = "scan budget exhausted"
            return _ModeOutcome(stats, [], [], withheld=True)
        matched, permuted, stats["scanned"] = scan
        weights.update(matched)
        right.update(matched)

    comparison = compare_sides(left, right, entry.relation)

    def full(keys) -> int:
        return sum(weights[k] for k in keys)

    stats.update({
        "left_classes": len(left),
        "left_sequences": full(left),
        "right_classes": len(right),
        "right_sequences": full(right),
        "only_left_classes": len(comparison.only_left),
        "only_left_sequences": full(comparison.only_left),
        "only_right_classes": len(comparison.only_right),
        "only_right_sequences": full(comparison.only_right),
    })
    if entry.permutation_diagnostic:
        extra = (right | permuted) - left
        stats["permutation_closed_extra"] = len(extra)
        stats["permutation_closed_reading_holds"] = not extra and not comparison.only_left
    return _ModeOutcome(stats, comparison.only_left, comparison.only_right)


def verify_theorem(theorem_id: str, modulus: Modulus, p_prime: Optional[int] = None,
                   config: Optional[SearchConfig] = None,
                   strategy: Strategy = Strategy.CANONICAL) -> TheoremReport:
    entry = get_registry().get_theorem(theorem_id)
    config = config or SearchConfig.from_engine_config()
    check_theorem_hypotheses(entry, modulus, p_prime, config.exploratory)
    restricted = restricted_weights(entry, modulus, p_prime)
    params = form_params(modulus, p_prime, config.exploratory)
    instance = {"n": modulus.n, "p_prime": p_prime}

    counterexamples: List[Sequence] = []
    total = 0
    withheld = False
    per_mode = []
    for mode in entry.modes:
        outcome = _compare_mode(entry, mode, restricted, params, strategy, config)
        per_mode.append(outcome.stats)
        withheld = withheld or outcome.withheld
        found = outcome.only_left + outcome.only_right
        total += len(found)
        counterexamples.extend(Sequence(modulus, t) for t in found)

    if withheld:
        verdict = Verdict.WITHHELD
        counterexamples = []
        total = 0
    elif total:
        verdict = Verdict.COUNTEREXAMPLE
    else:
        verdict = Verdict.VERIFIED

    stats = {"relation": entry.relation, "weights": restricted.label, "modes": per_mode,
             "exploratory": config.exploratory}
    report = TheoremReport(theorem_id, instance, verdict, counterexamples[:config.max_counterexamples],
                           total, stats, exhaustive=not withheld)
    log = logger.warning if verdict is Verdict.COUNTEREXAMPLE else logger.info
    log(f"{theorem_id} at n={modulus.n} p'={p_prime}: {verdict.value}")
    execution_logger.info("verify_theorem", theorem=theorem_id, n=modulus.n, p_prime=p_prime,
                          verdict=verdict.value, counterexamples=total)
    return report
