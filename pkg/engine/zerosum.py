"""
Weighted zero-sum decisions by reachable-sum dynamic programming.

For a weight set A and a term x the translate set A·x is a bitmap; the set of
sums reachable by weighted subsequences grows by R ← R ∪ A·x ∪ (R ⊕ A·x), and a
zero-sum appears exactly when R meets -(A·x).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from engine.bitset import from_residues, negate, sumset
from engine.sequence import Sequence, Witness, ZeroSumMode
from weights.orbits import orbit_table
from weights.weight_sets import WeightSet


class TranslateTable:
    """A·x bitmaps for one weight set, cached per orbit when A is a group"""

    def __init__(self, weightset: WeightSet):
        self.weightset = weightset
        self.n = weightset.modulus.n
        self.orbits = orbit_table(weightset) if weightset.is_group else None
        self._masks: Dict[int, Tuple[int, int, Tuple[int, ...]]] = {}

    def _key(self, x: int) -> int:
        return self.orbits.representative[x] if self.orbits is not None else x

    def entry(self, x: int) -> Tuple[int, int, Tuple[int, ...]]:
        """(A·x mask, -(A·x) mask, sorted elements of A·x)"""
        key = self._key(x)
        cached = self._masks.get(key)
        if cached is None:
            elements = tuple(sorted(self.weightset.translates(x)))
            mask = from_residues(elements)
            cached = (mask, negate(mask, self.n), elements)
            self._masks[key] = cached
        return cached

    def mask(self, x: int) -> int:
        return self.entry(x)[0]

    def sumset(self, reach: int, x: int) -> int:
        mask, _, elements = self.entry(x)
        return sumset(reach, mask, elements, self.n)


@lru_cache(maxsize=128)
def translate_table(weightset: WeightSet) -> TranslateTable:
    """Shared table per weight set for the lifetime of the process"""
    return TranslateTable(weightset)


@dataclass(frozen=True)
class SumReach:
    """All achievable weighted sums of some family of subsequences"""
    n: int
    achievable: int

    def __contains__(self, x: int) -> bool:
        return bool(self.achievable >> x & 1)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.n) if self.achievable >> x & 1)


@dataclass(frozen=True)
class ZeroSumCheck:
    """Outcome of a zero-sum decision; truthy iff a zero-sum exists"""
    found: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.found


def _table_for(weightset: WeightSet, table: Optional[TranslateTable]) -> TranslateTable:
    return table if table is not None and table.weightset == weightset else translate_table(weightset)


def weighted_translates(weightset: WeightSet, x: int) -> SumReach:
    """A·x"""
    n = weightset.modulus.n
    return SumReach(n, from_residues(weightset.translates(x % n)))


def has_zero_subsequence(sequence: Sequence, weightset: WeightSet, want_witness: bool = False,
                         table: Optional[TranslateTable] = None) -> ZeroSumCheck:
    """Some nonempty subsequence has an A-weighted zero sum"""
    table = _table_for(weightset, table)
    reach = 0
    found = False
    for x in sequence.terms:
        mask, neg, elements = table.entry(x)
        if mask & 1 or reach & neg:
            found = True
            break
        reach |= mask | sumset(reach, mask, elements, table.n)
    if not found:
        return ZeroSumCheck(False)
    witness = _trace_subsequence(sequence, weightset) if want_witness else None
    return ZeroSumCheck(True, witness)


def has_zero_consecutive(sequence: Sequence, weightset: WeightSet, want_witness: bool = False,
                         table: Optional[TranslateTable] = None) -> ZeroSumCheck:
    """Some window x_i..x_j, every term weighted, has an A-weighted zero sum"""
    table = _table_for(weightset, table)
    window = _first_zero_window(sequence.terms, table)
    if window is None:
        return ZeroSumCheck(False)
    witness = _trace_window(sequence, weightset, *window) if want_witness else None
    return ZeroSumCheck(True, witness)


def is_weighted_zero_sum_sequence(sequence: Sequence, weightset: WeightSet,
                                  table: Optional[TranslateTable] = None) -> bool:
    """Σ a_i x_i = 0 for some weights a_i ∈ A, every term used"""
    if not sequence.terms:
        return False
    table = _table_for(weightset, table)
    return _whole_sum_reaches_zero(sequence.terms, table)


def _whole_sum_reaches_zero(terms: Tuple[int, ...], table: TranslateTable) -> bool:
    reach = table.mask(terms[0])
    for x in terms[1:-1]:
        reach = table.sumset(reach, x)
        if not reach:
            return False
    if len(terms) == 1:
        return bool(reach & 1)
    return bool(reach & table.entry(terms[-1])[1])


def _first_zero_window(terms: Tuple[int, ...], table: TranslateTable) -> Optional[Tuple[int, int]]:
    """Lexicographically first (i, j) whose window has a zero sum, folding windows rightward per start"""
    length = len(terms)
    for i in range(length):
        mask = table.mask(terms[i])
        if mask & 1:
            return (i, i)
        reach = mask
        for j in range(i + 1, length):
            if reach & table.entry(terms[j])[1]:
                return (i, j)
            reach = table.sumset(reach, terms[j])
    return None


def _trace_subsequence(sequence: Sequence, weightset: WeightSet) -> Optional[Witness]:
    """Re-derive a zero-sum subsequence with explicit weights (slow, traceable pass)"""
    n = sequence.modulus.n
    weights = weightset.elements
    # sum -> (index, weight, previous sum or None)
    parent: Dict[int, Tuple[int, int, Optional[int]]] = {}
    for i, x in enumerate(sequence.terms):
        snapshot = list(parent.items())
        step: Dict[int, Tuple[int, int, Optional[int]]] = {}
        for a in weights:
            t = a * x % n
            if t not in parent and t not in step:
                step[t] = (i, a, None)
            for s, _ in snapshot:
                u = (s + t) % n
                if u not in parent and u not in step:
                    step[u] = (i, a, s)
        if 0 in step:
            chain: List[Tuple[int, int]] = []
            node: Optional[Tuple[int, int, Optional[int]]] = step[0]
            while node is not None:
                index, weight, prev = node
                chain.append((index, weight))
                node = parent[prev] if prev is not None else None
            chain.reverse()
            return Witness(tuple(c[0] for c in chain), tuple(c[1] for c in chain), ZeroSumMode.D)
        parent.update(step)
    return None


def _trace_window(sequence: Sequence, weightset: WeightSet, start: int, end: int) -> Witness:
    n = sequence.modulus.n
    weights = weightset.elements
    # layers[k]: sum -> (weight, previous sum)
    layers: List[Dict[int, Tuple[int, Optional[int]]]] = []
    first: Dict[int, Tuple[int, Optional[int]]] = {}
    for a in weights:
        first.setdefault(a * sequence.terms[start] % n, (a, None))
    layers.append(first)
    for j in range(start + 1, end + 1):
        x = sequence.terms[j]
        layer: Dict[int, Tuple[int, Optional[int]]] = {}
        for s in layers[-1]:
            for a in weights:
                layer.setdefault((s + a * x) % n, (a, s))
        layers.append(layer)
    chosen: List[int] = []
    s: Optional[int] = 0
    for layer in reversed(layers):
        weight, prev = layer[s]
        chosen.append(weight)
        s = prev
    chosen.reverse()
    return Witness(tuple(range(start, end + 1)), tuple(chosen), ZeroSumMode.C)


def has_zero_sum(sequence: Sequence, weightset: WeightSet, mode: ZeroSumMode,
                 want_witness: bool = False, table: Optional[TranslateTable] = None) -> ZeroSumCheck:
    if mode is ZeroSumMode.D:
        return has_zero_subsequence(sequence, weightset, want_witness, table)
    return has_zero_consecutive(sequence, weightset, want_witness, table)


def terms_sum_to_zero(terms: Iterable[int], table: TranslateTable) -> bool:
    """Whole-sequence test on raw residues"""
    terms = tuple(terms)
    return bool(terms) and _whole_sum_reaches_zero(terms, table)


def terms_have_zero_sum(terms: Iterable[int], table: TranslateTable, mode: ZeroSumMode) -> bool:
    """Fast boolean path on raw residues, used by enumeration and lemma scans"""
    terms = tuple(terms)
    if mode is ZeroSumMode.C:
        return _first_zero_window(terms, table) is not None
    reach = 0
    for x in terms:
        mask, neg, elements = table.entry(x)
        if mask & 1 or reach & neg:
            return True
        reach |= mask | sumset(reach, mask, elements, table.n)
    return False
