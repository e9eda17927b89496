"""
Odd moduli with their full factorization.

Residues are always stored as canonical representatives in [0, n).
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, prod
from typing import Iterator, List, Optional, Tuple

from sympy import isprime

from config.settings import get_engine_config
from utils.errors import ModulusError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Modulus:
    """
    An odd modulus n together with its prime factorization.

    omega counts distinct primes, big_omega counts them with multiplicity;
    the two agree when n is squarefree.
    """
    n: int
    factors: Tuple[Tuple[int, int], ...]
    omega: int = field(init=False)
    big_omega: int = field(init=False)
    squarefree: bool = field(init=False)

    def __post_init__(self):
        if prod(p ** r for p, r in self.factors) != self.n:
            raise ModulusError(f"factorization {self.factors} does not multiply to {self.n}")
        if any(p < 3 for p, _ in self.factors):
            raise ModulusError("modulus must be odd and ≥ 3")
        object.__setattr__(self, "omega", len(self.factors))
        object.__setattr__(self, "big_omega", sum(r for _, r in self.factors))
        object.__setattr__(self, "squarefree", all(r == 1 for _, r in self.factors))

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_prime(self) -> bool:
        return self.factors == ((self.n, 1),) if self.n > 1 else False

    @property
    def is_perfect_square(self) -> bool:
        return all(r % 2 == 0 for _, r in self.factors)

    @property
    def phi(self) -> int:
        return prod((p - 1) * p ** (r - 1) for p, r in self.factors)

    def valuation(self, p: int) -> int:
        """v_p(n)"""
        for q, r in self.factors:
            if q == p:
                return r
        return 0

    def divisors(self) -> List[int]:
        divs = [1]
        for p, r in self.factors:
            divs = [d * p ** e for d in divs for e in range(r + 1)]
        return sorted(divs)

    def divisor(self, m: int) -> "Modulus":
        """Modulus for a divisor m of n, factorization inherited (m = 1 allowed)"""
        if m <= 0 or self.n % m:
            raise ModulusError(f"{m} does not divide {self.n}")
        factors = []
        for p, _ in self.factors:
            r = 0
            while m % p ** (r + 1) == 0:
                r += 1
            if r:
                factors.append((p, r))
        return Modulus(m, tuple(factors))

    def is_unit(self, x: int) -> bool:
        return gcd(x, self.n) == 1

    def residues(self) -> Iterator[int]:
        return iter(range(self.n))

    def __str__(self) -> str:
        return str(self.n)


def factorize(n: int, ceiling: Optional[int] = None) -> Modulus:
    """Trial division with a deterministic primality check on the cofactor"""
    if ceiling is None:
        ceiling = get_engine_config()["modulus_ceiling"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ModulusError(f"modulus must be an integer, got {n!r}")
    if n < 3 or n % 2 == 0:
        logger.error(f"Rejected modulus {n}")
        raise ModulusError("modulus must be odd and ≥ 3")
    if n > ceiling:
        logger.error(f"Rejected modulus {n} above ceiling {ceiling}")
        raise ModulusError(f"modulus {n} exceeds configured ceiling {ceiling}")
    return _factorize(n)


@lru_cache(maxsize=4096)
def _factorize(n: int) -> Modulus:
    factors = []
    rest = n
    d = 3
    while rest > 1 and not isprime(rest) and d <= isqrt(rest):
        if rest % d == 0:
            r = 0
            while rest % d == 0:
                rest //= d
                r += 1
            factors.append((d, r))
        d += 2
    if rest > 1:
        factors.append((rest, 1))
    return Modulus(n, tuple(sorted(factors)))
