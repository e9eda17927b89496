"""
Incremental zero-sum tracking for depth-first searches.

A state is a value: it can be copied, hashed and sent to worker processes.
In subsequence mode `reach` holds every sum of a nonempty weighted subsequence
of the prefix. In consecutive mode it holds the union of the sums of all
windows ending at the last position; since ⊕ distributes over ∪, one sumset
per appended term keeps it current.
"""

from dataclasses import dataclass

from engine.sequence import ZeroSumMode
from engine.zerosum import TranslateTable


@dataclass(frozen=True)
class ExtenderState:
    mode: ZeroSumMode
    length: int = 0
    reach: int = 0
    zero: bool = False


def empty_state(mode: ZeroSumMode) -> ExtenderState:
    return ExtenderState(mode)


def creates_zero(state: ExtenderState, x: int, table: TranslateTable) -> bool:
    """Would appending x produce a new weighted zero-sum?"""
    mask, neg, _ = table.entry(x)
    return bool(mask & 1 or state.reach & neg)


def incremental_extender(state: ExtenderState, next_term: int, table: TranslateTable) -> ExtenderState:
    mask, neg, elements = table.entry(next_term)
    new_zero = bool(mask & 1 or state.reach & neg)
    grown = mask | table.sumset(state.reach, next_term)
    if state.mode is ZeroSumMode.D:
        grown |= state.reach
    return ExtenderState(state.mode, state.length + 1, grown, state.zero or new_zero)
