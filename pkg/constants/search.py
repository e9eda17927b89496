"""
Certified exhaustive search for D_A(n) and C_A(n).

Zero-sum-free sequences are closed under taking prefixes, so the constant is
found level by level: depth k looks for one zero-sum-free sequence of length k
and the first depth where none exists is the constant. Terms are orbit
representatives when A is a group. Mode D enumerates non-decreasing tuples,
mode C ordered tuples whose last term is not below the first (reversal).
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

from arithmetic.modulus import Modulus
from config.settings import SearchConfig
from engine.extender import ExtenderState, creates_zero, empty_state, incremental_extender
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import has_zero_sum, translate_table
from utils.errors import WeightSetError
from utils.logger import get_execution_logger, get_logger
from weights.orbits import orbit_table
from weights.weight_sets import WeightSet

logger = get_logger(__name__)
execution_logger = get_execution_logger()


@dataclass(frozen=True)
class LevelStat:
    depth: int
    nodes: int
    found: bool
    complete: bool


@dataclass(frozen=True)
class ConstantResult:
    """value is exact when exhaustive, otherwise the certified lower bound"""
    value: int
    mode: ZeroSumMode
    certificate: Optional[Sequence]
    exhaustive: bool
    lower_bound: int
    upper_bound: Optional[int]
    nodes: int
    levels: Tuple[LevelStat, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class BranchOutcome:
    found: Optional[Tuple[int, ...]]
    nodes: int
    complete: bool


class _BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=64)
def search_terms(weightset: WeightSet, orbit_pruning: bool = True) -> Tuple[int, ...]:
    """Candidate terms: nonzero orbit representatives, or every nonzero residue without a group"""
    if orbit_pruning and weightset.is_group:
        return orbit_table(weightset).nonzero_representatives
    return tuple(range(1, weightset.modulus.n))


def _search_branch(weightset: WeightSet, mode: ZeroSumMode, depth: int, first: int,
                   node_budget: int, deadline: float, orbit_pruning: bool = True) -> BranchOutcome:
    """Depth-limited DFS below the first term candidates[first]; stops at the first zero-sum-free leaf"""
    table = translate_table(weightset)
    candidates = search_terms(weightset, orbit_pruning)
    prefix: List[int] = [first]
    nodes = 1

    def descend(state: ExtenderState) -> bool:
        nonlocal nodes
        position = len(prefix)
        if position == depth:
            return True
        start = prefix[-1] if mode is ZeroSumMode.D else 0
        last = position == depth - 1
        for index in range(start, len(candidates)):
            if mode is ZeroSumMode.C and last and index < prefix[0]:
                continue
            nodes += 1
            if nodes > node_budget or (nodes & 1023 == 0 and time.time() > deadline):
                raise _BudgetExceeded
            x = candidates[index]
            if creates_zero(state, x, table):
                continue
            prefix.append(index)
            if last or descend(incremental_extender(state, x, table)):
                return True
            prefix.pop()
        return False

    x0 = candidates[first]
    state = empty_state(mode)
    if creates_zero(state, x0, table):
        return BranchOutcome(None, nodes, True)
    try:
        ok = depth == 1 or descend(incremental_extender(state, x0, table))
    except _BudgetExceeded:
        return BranchOutcome(None, nodes, False)
    if ok:
        return BranchOutcome(tuple(candidates[i] for i in prefix), nodes, True)
    return BranchOutcome(None, nodes, True)


def _search_branch_args(args) -> BranchOutcome:
    return _search_branch(*args)


class ZeroSumFreeSearch:
    """Iterative deepening over zero-sum-free sequences for one (W, mode)"""

    def __init__(self, weightset: WeightSet, mode: ZeroSumMode, config: Optional[SearchConfig] = None):
        self.weightset = weightset
        self.mode = mode
        self.config = config or SearchConfig.from_engine_config()
        self.candidates = search_terms(weightset, self.config.orbit_pruning)

    def default_cap(self) -> int:
        return 2 ** max(self.weightset.modulus.big_omega, 1) + 2

    def find_free(self, depth: int, node_budget: int, deadline: float,
                  pool: Optional[ProcessPoolExecutor] = None) -> BranchOutcome:
        """
        One zero-sum-free sequence of the given length, lexicographically least.

        Branches are read in order in both modes and the scan stops at the first
        branch that either found a sequence or ran out of budget, so a returned
        certificate always has every smaller first term exhausted before it.
        """
        pruning = self.config.orbit_pruning
        branches = range(len(self.candidates))
        if pool is not None and len(branches) > 1:
            share = max(1, node_budget // len(branches))
            jobs = [(self.weightset, self.mode, depth, b, share, deadline, pruning) for b in branches]
            results = pool.map(_search_branch_args, jobs)
        else:
            results = self._serial_branches(depth, node_budget, deadline, pruning)

        nodes = 0
        scanned = 0
        for outcome in results:
            nodes += outcome.nodes
            scanned += 1
            if outcome.found is not None:
                return BranchOutcome(outcome.found, nodes, True)
            if not outcome.complete:
                return BranchOutcome(None, nodes, False)
        return BranchOutcome(None, nodes, scanned == len(branches))

    def _serial_branches(self, depth: int, node_budget: int, deadline: float, pruning: bool):
        remaining = node_budget
        for b in range(len(self.candidates)):
            if remaining <= 0:
                return
            outcome = _search_branch(self.weightset, self.mode, depth, b, remaining, deadline, pruning)
            remaining -= outcome.nodes
            yield outcome

    def run(self) -> ConstantResult:
        modulus = self.weightset.modulus
        if self.weightset.contains_zero:
            return ConstantResult(1, self.mode, None, True, 1, 1, 0, ())
        cap = self.config.depth_cap or self.default_cap()
        deadline = time.time() + self.config.time_budget_seconds
        budget = self.config.node_budget
        certificate: Optional[Tuple[int, ...]] = None
        levels: List[LevelStat] = []
        total = 0
        pool = ProcessPoolExecutor(max_workers=self.config.threads) if self.config.threads > 1 else None
        try:
            for depth in range(1, cap + 1):
                outcome = self.find_free(depth, budget - total, deadline, pool)
                total += outcome.nodes
                levels.append(LevelStat(depth, outcome.nodes, outcome.found is not None, outcome.complete))
                execution_logger.info("search_level", n=modulus.n, weights=self.weightset.label,
                                      mode=self.mode.value, depth=depth, nodes=outcome.nodes,
                                      found=outcome.found is not None, complete=outcome.complete)
                if outcome.found is not None:
                    certificate = outcome.found
                    continue
                cert = Sequence(modulus, certificate) if certificate else None
                if outcome.complete:
                    logger.info(f"{self.mode.value}_{self.weightset.label}({modulus.n}) = {depth}")
                    return ConstantResult(depth, self.mode, cert, True, depth, depth, total, tuple(levels))
                logger.warning(f"Search budget exhausted at depth {depth} for "
                               f"{self.mode.value}_{self.weightset.label}({modulus.n})")
                return ConstantResult(depth, self.mode, cert, False, depth, None, total, tuple(levels))
        finally:
            if pool is not None:
                pool.shutdown()
        logger.warning(f"Depth cap {cap} reached for {self.mode.value}_{self.weightset.label}({modulus.n})")
        cert = Sequence(modulus, certificate) if certificate else None
        return ConstantResult(cap + 1, self.mode, cert, False, cap + 1, None, total, tuple(levels))


def _check_modulus(modulus: Modulus, weightset: WeightSet) -> None:
    if weightset.modulus != modulus:
        raise WeightSetError(f"weight set is defined modulo {weightset.modulus.n}, not {modulus.n}")
    if weightset.size == 0:
        raise WeightSetError("weight set must be nonempty")


def davenport_constant(modulus: Modulus, weightset: WeightSet,
                       config: Optional[SearchConfig] = None) -> ConstantResult:
    """D_A(n)"""
    _check_modulus(modulus, weightset)
    return ZeroSumFreeSearch(weightset, ZeroSumMode.D, config).run()


def consecutive_constant(modulus: Modulus, weightset: WeightSet,
                         config: Optional[SearchConfig] = None) -> ConstantResult:
    """C_A(n)"""
    _check_modulus(modulus, weightset)
    return ZeroSumFreeSearch(weightset, ZeroSumMode.C, config).run()


def compute_constant(weightset: WeightSet, mode: ZeroSumMode,
                     config: Optional[SearchConfig] = None) -> ConstantResult:
    if mode is ZeroSumMode.D:
        return davenport_constant(weightset.modulus, weightset, config)
    return consecutive_constant(weightset.modulus, weightset, config)


def certify_lower_bound(modulus: Modulus, weightset: WeightSet, sequence: Sequence, mode: ZeroSumMode) -> bool:
    """True iff the sequence has no weighted zero-sum of the mode, i.e. constant ≥ len + 1"""
    _check_modulus(modulus, weightset)
    return not has_zero_sum(sequence, weightset, mode, table=translate_table(weightset))
