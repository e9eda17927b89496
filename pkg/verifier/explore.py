"""Informational runs outside the proven range: D_{S(n)}(n) for any odd n and the S(n)/U(n) transfer question."""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from arithmetic.modulus import Modulus
from config.settings import SearchConfig
from constants.predictions import predicted_constants
from constants.search import ConstantResult, compute_constant
from engine.extender import creates_zero, empty_state, incremental_extender
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import terms_have_zero_sum, translate_table
from utils.logger import get_execution_logger, get_logger
from verifier.extremal import Strategy, term_classes
from weights.weight_sets import s_weights, units

logger = get_logger(__name__)
execution_logger = get_execution_logger()


@dataclass
class Exploration:
    question: str
    n: int
    mode: ZeroSumMode
    results: Dict[str, Any] = field(default_factory=dict)
    counterexamples: List[Sequence] = field(default_factory=list)
    counterexample_count: int = 0
    exhaustive: bool = True
    constants: List[ConstantResult] = field(default_factory=list)


def explore_dsn(modulus: Modulus, config: Optional[SearchConfig] = None,
                mode: ZeroSumMode = ZeroSumMode.D) -> Exploration:
    """Constant for S(n) next to Ω(n) + 1 (distinct primes and with multiplicity)"""
    config = config or SearchConfig.from_engine_config()
    weights = s_weights(modulus)
    result = compute_constant(weights, mode, config)
    prediction = predicted_constants(modulus, weights)
    exploration = Exploration("dsn", modulus.n, mode, exhaustive=result.exhaustive, constants=[result])
    exploration.results = {
        "value": result.value,
        "exhaustive": result.exhaustive,
        "certificate": result.certificate.serialize() if result.certificate else "",
        "omega_plus_one": modulus.omega + 1,
        "omega_with_multiplicity_plus_one": modulus.big_omega + 1,
        "two_to_omega": 2 ** modulus.omega,
        "squarefree": modulus.squarefree,
        "predicted": prediction.value(mode),
        "hypothesis": prediction.hypothesis,
    }
    execution_logger.info("explore_dsn", n=modulus.n, mode=mode.value, value=result.value,
                          exhaustive=result.exhaustive)
    return exploration


def explore_transfer(modulus: Modulus, mode: ZeroSumMode = ZeroSumMode.D,
                     config: Optional[SearchConfig] = None) -> Exploration:
    """
    When the constants for S(n) and U(n) agree, is every S(n)-zero-sum-free
    sequence shorter than the constant also U(n)-zero-sum-free?
    """
    config = config or SearchConfig.from_engine_config()
    restricted, unit_set = s_weights(modulus), units(modulus)
    s_result = compute_constant(restricted, mode, config)
    u_result = compute_constant(unit_set, mode, config)
    exploration = Exploration("transfer", modulus.n, mode, constants=[s_result, u_result])
    exploration.results = {"constant_S": s_result.value, "constant_U": u_result.value}
    if not (s_result.exhaustive and u_result.exhaustive):
        exploration.exhaustive = False
        exploration.results["status"] = "constant search incomplete"
        return exploration
    if s_result.value != u_result.value:
        exploration.results["status"] = "constants differ"
        return exploration

    classes = term_classes(modulus, Strategy.CANONICAL, restricted)
    s_table, u_table = translate_table(restricted), translate_table(unit_set)
    longest = s_result.value - 1
    terms = classes.terms
    prefix: List[int] = []
    checked = 0
    found = 0
    complete = True
    deadline = time.time() + config.time_budget_seconds

    def descend(state) -> bool:
        nonlocal checked, found
        start = prefix[-1] if mode is ZeroSumMode.D and prefix else 0
        for index in range(start, len(terms)):
            if checked > config.node_budget or time.time() > deadline:
                return False
            x = terms[index]
            if creates_zero(state, x, s_table):
                continue
            prefix.append(index)
            checked += 1
            sequence = tuple(terms[i] for i in prefix)
            if terms_have_zero_sum(sequence, u_table, mode):
                found += 1
                if len(exploration.counterexamples) < config.max_counterexamples:
                    exploration.counterexamples.append(Sequence(modulus, sequence))
            if len(prefix) < longest and not descend(incremental_extender(state, x, s_table)):
                prefix.pop()
                return False
            prefix.pop()
        return True

    if longest > 0:
        complete = descend(empty_state(mode))
    exploration.exhaustive = complete
    exploration.counterexample_count = found
    exploration.results.update({"status": "checked" if complete else "budget exhausted",
                                "sequences_checked": checked, "transfer_holds": complete and not found})
    logger.info(f"Transfer exploration at n={modulus.n} mode {mode.value}: {found} counterexamples")
    return exploration
