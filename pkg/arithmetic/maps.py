"""Natural maps f_{n|m} and the Chinese remainder isomorphism."""

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Tuple

from arithmetic.modulus import Modulus
from utils.errors import ModulusError, ProjectionError
from utils.logger import get_logger

logger = get_logger(__name__)


def _check_residue(x: int, n: int) -> None:
    if not 0 <= x < n:
        raise ProjectionError(f"residue {x} out of range for modulus {n}")


@dataclass(frozen=True)
class ProjectionMap:
    """Reduction Z_n -> Z_m for a divisor m of n"""
    source: Modulus
    target: Modulus

    @classmethod
    def to(cls, source: Modulus, m: int) -> "ProjectionMap":
        if m <= 0 or source.n % m:
            logger.error(f"Projection target {m} does not divide {source.n}")
            raise ProjectionError(f"{m} does not divide {source.n}")
        return cls(source, source.divisor(m))

    def __post_init__(self):
        if self.source.n % self.target.n:
            raise ProjectionError(f"{self.target.n} does not divide {self.source.n}")


def natural_map(x: int, pm: ProjectionMap) -> int:
    _check_residue(x, pm.source.n)
    return x % pm.target.n


def project_sequence(terms: Iterable[int], pm: ProjectionMap) -> Tuple[int, ...]:
    """Termwise natural map; length and order preserved"""
    return tuple(natural_map(x, pm) for x in terms)


@dataclass(frozen=True)
class CrtIso:
    """Z_n ≅ Z_{m1} × Z_{m2} for coprime m1·m2 = n"""
    modulus: Modulus
    m1: int
    m2: int
    _e1: int = field(init=False, repr=False)
    _e2: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.m1 * self.m2 != self.modulus.n:
            raise ModulusError(f"{self.m1}·{self.m2} != {self.modulus.n}")
        if gcd(self.m1, self.m2) != 1:
            logger.error(f"CRT split of {self.modulus.n} with non-coprime {self.m1}, {self.m2}")
            raise ModulusError(f"crt factors {self.m1} and {self.m2} are not coprime")
        # idempotents: e1 ≡ 1 (m1), ≡ 0 (m2); e2 the other way round
        e1 = self.m2 * pow(self.m2, -1, self.m1) % self.modulus.n if self.m1 > 1 else 0
        e2 = self.m1 * pow(self.m1, -1, self.m2) % self.modulus.n if self.m2 > 1 else 0
        object.__setattr__(self, "_e1", e1)
        object.__setattr__(self, "_e2", e2)

    @classmethod
    def split_off(cls, modulus: Modulus, m1: int) -> "CrtIso":
        if m1 <= 0 or modulus.n % m1:
            raise ModulusError(f"{m1} does not divide {modulus.n}")
        return cls(modulus, m1, modulus.n // m1)

    def split(self, x: int) -> Tuple[int, int]:
        _check_residue(x, self.modulus.n)
        return x % self.m1, x % self.m2

    def combine(self, a: int, b: int) -> int:
        _check_residue(a, self.m1)
        _check_residue(b, self.m2)
        return (a * self._e1 + b * self._e2) % self.modulus.n


def crt_split(x: int, iso: CrtIso) -> Tuple[int, int]:
    return iso.split(x)


def crt_combine(a: int, b: int, iso: CrtIso) -> int:
    return iso.combine(a, b)
