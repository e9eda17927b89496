"""
Extremal sequences: length constant - 1 and no weighted zero-sum of the mode.

Families are enumerated either over every nonzero residue (full) or over
per-term orbit classes of a group G ⊆ W (canonical). Multiplying a term by an
element of G leaves every W-weighted zero-sum question unchanged, so a class
tuple is extremal exactly when each of its member sequences is. Mode D lists
sorted tuples, mode C ordered ones; multiplicities count full ordered sequences.
"""

import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from math import factorial, prod
from typing import Dict, Iterator, List, Optional, Set, Tuple

from arithmetic.modulus import Modulus
from config.settings import SearchConfig
from constants.predictions import predicted_constants
from constants.search import compute_constant
from engine.extender import ExtenderState, creates_zero, empty_state, incremental_extender
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import has_zero_sum, terms_have_zero_sum, translate_table
from utils.errors import UsageError, WeightSetError
from utils.logger import get_execution_logger, get_logger
from weights.orbits import orbit_table
from weights.weight_sets import WeightSet

logger = get_logger(__name__)
execution_logger = get_execution_logger()


class Strategy(Enum):
    FULL = "full"
    CANONICAL = "canonical"


@dataclass(frozen=True)
class TermClasses:
    """Candidate terms and how many residues each one stands for"""
    modulus: Modulus
    group: Optional[WeightSet]
    terms: Tuple[int, ...]
    sizes: Tuple[int, ...]

    def multiplicity(self, indices: Tuple[int, ...], mode: ZeroSumMode) -> int:
        weight = prod(self.sizes[i] for i in indices)
        if mode is ZeroSumMode.D:
            orderings = factorial(len(indices))
            for count in Counter(indices).values():
                orderings //= factorial(count)
            weight *= orderings
        return weight

    def orbit(self, x: int) -> Tuple[int, ...]:
        if self.group is None:
            return (x,)
        return orbit_table(self.group).orbit(x)


def term_classes(modulus: Modulus, strategy: Strategy, group: Optional[WeightSet] = None,
                 include_zero: bool = False) -> TermClasses:
    if strategy is Strategy.CANONICAL:
        if group is None or not group.is_group:
            raise WeightSetError("orbit canonicalization requires a group weight set")
        table = orbit_table(group)
        reps = table.representatives if include_zero else table.nonzero_representatives
        return TermClasses(modulus, group, reps, tuple(table.orbit_sizes[r] for r in reps))
    terms = tuple(range(0 if include_zero else 1, modulus.n))
    return TermClasses(modulus, None, terms, (1,) * len(terms))


def class_tuples(classes: TermClasses, length: int, mode: ZeroSumMode) -> Iterator[Tuple[int, ...]]:
    """Index tuples into classes.terms: sorted for D, all orderings for C"""
    indices = range(len(classes.terms))
    if mode is ZeroSumMode.D:
        return combinations_with_replacement(indices, length)
    return product(indices, repeat=length)


@lru_cache(maxsize=256)
def searched_constant(weightset: WeightSet, mode: ZeroSumMode) -> int:
    """Constant by exhaustive search, falling back on the closed form"""
    result = compute_constant(weightset, mode, SearchConfig.from_engine_config(threads=1))
    if result.exhaustive:
        return result.value
    prediction = predicted_constants(weightset.modulus, weightset)
    if prediction.covered:
        logger.warning(f"Search for {mode.value}_{weightset.label}({weightset.modulus.n}) incomplete, using closed form")
        return prediction.value(mode)
    logger.error(f"No constant known for {mode.value}_{weightset.label}({weightset.modulus.n})")
    raise UsageError(f"constant {mode.value}_{weightset.label}({weightset.modulus.n}) is unknown")


def is_extremal(sequence: Sequence, weightset: WeightSet, mode: ZeroSumMode,
                known_constant: Optional[int] = None) -> bool:
    if known_constant is None:
        prediction = predicted_constants(sequence.modulus, weightset)
        if not prediction.covered:
            logger.error(f"is_extremal needs a constant for {weightset.label} mod {sequence.modulus.n}")
            raise UsageError(f"no known constant for {weightset.label} modulo {sequence.modulus.n}")
        known_constant = prediction.value(mode)
    if len(sequence) != known_constant - 1:
        return False
    return not has_zero_sum(sequence, weightset, mode, table=translate_table(weightset))


@dataclass
class ExtremalFamily:
    modulus: Modulus
    weightset: WeightSet
    mode: ZeroSumMode
    constant: Optional[int]
    strategy: Strategy
    classes: TermClasses
    sequences: List[Sequence] = field(default_factory=list)
    multiplicities: List[int] = field(default_factory=list)
    complete: bool = True
    nodes: int = 0

    @property
    def class_count(self) -> int:
        return len(self.sequences)

    @property
    def full_count(self) -> int:
        return sum(self.multiplicities)

    def keys(self) -> Set[Tuple[int, ...]]:
        return {s.terms for s in self.sequences}


def _resolve_group(weightset: WeightSet, strategy: Strategy, group: Optional[WeightSet]) -> Tuple[Strategy, Optional[WeightSet]]:
    if strategy is Strategy.FULL:
        return strategy, None
    if not weightset.is_group:
        logger.warning(f"{weightset.label} mod {weightset.modulus.n} is not a group, enumerating all residues")
        return Strategy.FULL, None
    group = group or weightset
    if not group.is_group:
        raise WeightSetError("orbit canonicalization requires a group weight set")
    if not group.is_subset_of(weightset):
        raise WeightSetError(f"orbit group {group.label} is not contained in {weightset.label}")
    return strategy, group


def enumerate_extremal(modulus: Modulus, weightset: WeightSet, mode: ZeroSumMode,
                       strategy: Strategy = Strategy.CANONICAL, constant: Optional[int] = None,
                       group: Optional[WeightSet] = None,
                       config: Optional[SearchConfig] = None) -> ExtremalFamily:
    """Every extremal sequence (or class) by DFS with zero-sum pruning"""
    if weightset.modulus != modulus:
        raise WeightSetError(f"weight set is defined modulo {weightset.modulus.n}, not {modulus.n}")
    config = config or SearchConfig.from_engine_config()
    if constant is None:
        constant = searched_constant(weightset, mode)
    strategy, group = _resolve_group(weightset, strategy, group)
    classes = term_classes(modulus, strategy, group)
    family = ExtremalFamily(modulus, weightset, mode, constant, strategy, classes)
    length = constant - 1
    if length == 0:
        family.sequences.append(Sequence(modulus, ()))
        family.multiplicities.append(1)
        return family

    table = translate_table(weightset)
    terms = classes.terms
    deadline = time.time() + config.time_budget_seconds
    prefix: List[int] = []
    nodes = 0

    def descend(state: ExtenderState) -> bool:
        nonlocal nodes
        start = prefix[-1] if mode is ZeroSumMode.D and prefix else 0
        for index in range(start, len(terms)):
            nodes += 1
            if nodes > config.node_budget or (nodes & 1023 == 0 and time.time() > deadline):
                return False
            x = terms[index]
            if creates_zero(state, x, table):
                continue
            prefix.append(index)
            if len(prefix) == length:
                key = tuple(prefix)
                family.sequences.append(Sequence(modulus, tuple(terms[i] for i in key)))
                family.multiplicities.append(classes.multiplicity(key, mode))
            elif not descend(incremental_extender(state, x, table)):
                prefix.pop()
                return False
            prefix.pop()
        return True

    family.complete = descend(empty_state(mode))
    family.nodes = nodes
    if not family.complete:
        logger.warning(f"Extremal enumeration for {mode.value}_{weightset.label}({modulus.n}) stopped by budget")
    execution_logger.info("extremal_family", n=modulus.n, weights=weightset.label, mode=mode.value,
                          strategy=strategy.value, classes=family.class_count, sequences=family.full_count,
                          complete=family.complete, nodes=nodes)
    return family


def expand_class(sequence: Sequence, family: ExtremalFamily) -> Iterator[Sequence]:
    """All full sequences a class tuple stands for"""
    seen: Set[Tuple[int, ...]] = set()
    orbits = [family.classes.orbit(x) for x in sequence.terms]
    for choice in product(*orbits):
        variants = permutations(choice) if family.mode is ZeroSumMode.D else (choice,)
        for terms in variants:
            if terms not in seen:
                seen.add(terms)
                yield Sequence(family.modulus, terms)


@dataclass
class FamilyAudit:
    checked: int = 0
    reverify_failures: int = 0
    orbit_violations: int = 0
    permutation_violations: int = 0
    reversal_violations: int = 0

    @property
    def ok(self) -> bool:
        return not (self.reverify_failures or self.orbit_violations
                    or self.permutation_violations or self.reversal_violations)

    def as_dict(self) -> Dict[str, int]:
        return {
            "checked": self.checked,
            "reverify_failures": self.reverify_failures,
            "orbit_violations": self.orbit_violations,
            "permutation_violations": self.permutation_violations,
            "reversal_violations": self.reversal_violations,
        }


def _family_key(terms: Tuple[int, ...], mode: ZeroSumMode) -> Tuple[int, ...]:
    return tuple(sorted(terms)) if mode is ZeroSumMode.D else terms


def audit_family(family: ExtremalFamily) -> FamilyAudit:
    """Re-verify members and check orbit, permutation (D) and reversal (C) closure"""
    audit = FamilyAudit()
    if not family.complete:
        return audit
    weightset, mode, n = family.weightset, family.mode, family.modulus.n
    table = translate_table(weightset)
    members = family.keys()
    full = family.strategy is Strategy.FULL
    generators = weightset.generators if weightset.is_group else ()

    for sequence in family.sequences:
        terms = sequence.terms
        audit.checked += 1
        if len(terms) != family.constant - 1 or terms_have_zero_sum(terms, table, mode):
            audit.reverify_failures += 1

        for i in range(len(terms)):
            for a in generators:
                moved = terms[:i] + (a * terms[i] % n,) + terms[i + 1:]
                if full:
                    if _family_key(moved, mode) not in members:
                        audit.orbit_violations += 1
                elif terms_have_zero_sum(moved, table, mode):
                    audit.orbit_violations += 1

        if mode is ZeroSumMode.D:
            for perm in set(permutations(terms)):
                if terms_have_zero_sum(perm, table, mode):
                    audit.permutation_violations += 1
        elif terms[::-1] not in members:
            audit.reversal_violations += 1

    logger.info(f"Audit of {mode.value}_{weightset.label}({n}) family: {audit.as_dict()}")
    return audit
