"""
Weight sets U(n), U(n)^2, Q_p, S(n), L(n;p) and custom subsets of Z_n.

Members are kept as a bitmap (a Python int, bit x set iff x is a member) so
that sumsets and membership tests work on whole words at a time.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from math import gcd
from typing import FrozenSet, Iterable, Optional, Tuple

from arithmetic.jacobi import jacobi
from arithmetic.modulus import Modulus
from utils.errors import WeightSetError
from utils.logger import get_logger

logger = get_logger(__name__)


class WeightKind(Enum):
    U = "U"
    QP = "Q"
    S = "S"
    L = "L"
    CUSTOM = "custom"


def mask_of(residues: Iterable[int]) -> int:
    mask = 0
    for x in residues:
        mask |= 1 << x
    return mask


def members_of(mask: int) -> Tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class WeightSet:
    """A labeled subset of Z_n"""
    modulus: Modulus
    members: int
    kind: WeightKind
    parameter: Optional[int] = None

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        return members_of(self.members)

    @property
    def size(self) -> int:
        return bin(self.members).count("1")

    @property
    def label(self) -> str:
        """CLI spelling of this weight set"""
        if self.kind is WeightKind.L:
            return f"L:{self.parameter}"
        if self.kind is WeightKind.CUSTOM:
            return "custom:" + ",".join(str(a) for a in self.elements)
        return self.kind.value

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.modulus.n and bool(self.members >> x & 1)

    def __len__(self) -> int:
        return self.size

    @cached_property
    def contains_zero(self) -> bool:
        return bool(self.members & 1)

    @cached_property
    def within_units(self) -> bool:
        n = self.modulus.n
        return all(gcd(a, n) == 1 for a in self.elements)

    @cached_property
    def is_group(self) -> bool:
        """Executed closure check: 1 ∈ W, W ⊆ U(n) and W closed under products"""
        if self.modulus.n == 1:
            return True
        if 1 not in self or not self.within_units:
            return False
        return generated_subgroup_mask(self.modulus, self.elements) == self.members

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """A small generating set, greedily chosen in increasing order (group weight sets only)"""
        if not self.is_group:
            raise WeightSetError(f"{self.label} is not a group")
        gens = []
        span = mask_of([1 % self.modulus.n])
        for a in self.elements:
            if not span >> a & 1:
                gens.append(a)
                span = generated_subgroup_mask(self.modulus, gens)
        return tuple(gens)

    def image(self, m: int) -> FrozenSet[int]:
        """f_{n|m}(W)"""
        if self.modulus.n % m:
            raise WeightSetError(f"{m} does not divide {self.modulus.n}")
        return frozenset(a % m for a in self.elements)

    def is_subset_of(self, other: "WeightSet") -> bool:
        return self.members & ~other.members == 0

    def translates(self, x: int) -> FrozenSet[int]:
        n = self.modulus.n
        return frozenset(a * x % n for a in self.elements)


def generated_subgroup_mask(modulus: Modulus, generators: Iterable[int]) -> int:
    """Bitmap of the subgroup of U(n) generated by the given units (U(n) is abelian)"""
    n = modulus.n
    group = {1 % n}
    for g in generators:
        g %= n
        if gcd(g, n) != 1:
            raise WeightSetError(f"{g} is not a unit modulo {n}")
        if g in group:
            continue
        # <H, g> is the union of the cosets g^k H
        coset_base = list(group)
        power = g
        while power not in group:
            group.update(power * h % n for h in coset_base)
            power = power * g % n
    return mask_of(group)


@lru_cache(maxsize=256)
def units(modulus: Modulus) -> WeightSet:
    """U(n)"""
    n = modulus.n
    return WeightSet(modulus, mask_of(x for x in range(n) if gcd(x, n) == 1), WeightKind.U)


@lru_cache(maxsize=256)
def unit_squares(modulus: Modulus) -> WeightSet:
    """U(n)^2; for a prime p this is Q_p"""
    n = modulus.n
    squares = {x * x % n for x in units(modulus).elements}
    return WeightSet(modulus, mask_of(squares), WeightKind.QP)


@lru_cache(maxsize=256)
def s_weights(modulus: Modulus) -> WeightSet:
    """S(n) = {x ∈ U(n) : (x/n) = 1}"""
    members = (x for x in units(modulus).elements if jacobi(x, modulus) == 1)
    return WeightSet(modulus, mask_of(members), WeightKind.S)


@lru_cache(maxsize=256)
def l_weights(modulus: Modulus, p: int) -> WeightSet:
    """L(n;p) = {a ∈ U(n) : (a/n) = (a/p)}"""
    if p not in modulus.primes:
        logger.error(f"L weight set requested for {p} which is not a prime divisor of {modulus.n}")
        raise WeightSetError(f"{p} is not a prime divisor of {modulus.n}")
    members = (a for a in units(modulus).elements if jacobi(a, modulus) == jacobi(a, p))
    return WeightSet(modulus, mask_of(members), WeightKind.L, p)


def custom_weights(modulus: Modulus, residues: Iterable[int]) -> WeightSet:
    values = list(residues)
    if not values:
        raise WeightSetError("custom weight set must be nonempty")
    for a in values:
        if not 0 <= a < modulus.n:
            raise WeightSetError(f"weight {a} out of range for modulus {modulus.n}")
    return WeightSet(modulus, mask_of(values), WeightKind.CUSTOM)


def subgroup_weights(modulus: Modulus, generators: Iterable[int]) -> WeightSet:
    """Custom weight set equal to the subgroup generated by the given units"""
    return WeightSet(modulus, generated_subgroup_mask(modulus, generators), WeightKind.CUSTOM)


def product_preimage(modulus: Modulus, m1: int, first: Iterable[int], second: Iterable[int]) -> WeightSet:
    """ψ^{-1}(A1 × A2) ∩ U(n) for the CRT split n = m1 · (n/m1)"""
    m2 = modulus.n // m1
    a1, a2 = set(first), set(second)
    members = (x for x in units(modulus).elements if x % m1 in a1 and x % m2 in a2)
    return WeightSet(modulus, mask_of(members), WeightKind.CUSTOM)


def build_weight_set(modulus: Modulus, kind: WeightKind, parameter: Optional[int] = None,
                     residues: Optional[Iterable[int]] = None) -> WeightSet:
    if kind is WeightKind.U:
        return units(modulus)
    if kind is WeightKind.QP:
        return unit_squares(modulus)
    if kind is WeightKind.S:
        return s_weights(modulus)
    if kind is WeightKind.L:
        if parameter is None:
            raise WeightSetError("L weight set needs a prime parameter")
        return l_weights(modulus, parameter)
    if residues is None:
        raise WeightSetError("custom weight set needs residues")
    return custom_weights(modulus, residues)
