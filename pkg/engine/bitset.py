"""
Subsets of Z_n as Python int bitmaps.

Bit x set means residue x is in the set. Translation by t is a rotation of the
low n bits, so a sumset R ⊕ X is the OR of |X| rotations of R (or of |R|
rotations of X, whichever side is smaller).
"""

from typing import Iterable, Iterator, Tuple


def full_mask(n: int) -> int:
    return (1 << n) - 1


def rotate(mask: int, t: int, n: int) -> int:
    """{x + t mod n : x ∈ mask}"""
    t %= n
    if t == 0:
        return mask
    return ((mask << t) | (mask >> (n - t))) & ((1 << n) - 1)


def negate(mask: int, n: int) -> int:
    """{-x mod n : x ∈ mask}"""
    out = mask & 1
    for x in iter_bits(mask >> 1):
        out |= 1 << (n - 1 - x)
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def from_residues(residues: Iterable[int]) -> int:
    mask = 0
    for x in residues:
        mask |= 1 << x
    return mask


def sumset(reach: int, translate_mask: int, translate_elements: Tuple[int, ...], n: int) -> int:
    """reach ⊕ X where X is given both as a bitmap and as its element list"""
    if not reach or not translate_mask:
        return 0
    full = (1 << n) - 1
    acc = 0
    if reach.bit_count() < len(translate_elements):
        for r in iter_bits(reach):
            acc |= ((translate_mask << r) | (translate_mask >> (n - r))) & full if r else translate_mask
            if acc == full:
                break
    else:
        for t in translate_elements:
            acc |= ((reach << t) | (reach >> (n - t))) & full if t else reach
            if acc == full:
                break
    return acc
