"""Closed-form values of D_A(n) and C_A(n) wherever a known theorem covers (n, A)."""

from dataclasses import dataclass
from typing import Optional

from arithmetic.modulus import Modulus
from engine.sequence import ZeroSumMode
from weights.weight_sets import WeightKind, WeightSet


@dataclass(frozen=True)
class Prediction:
    value_d: Optional[int]
    value_c: Optional[int]
    hypothesis: str

    @property
    def covered(self) -> bool:
        return self.value_d is not None

    def value(self, mode: ZeroSumMode) -> Optional[int]:
        return self.value_d if mode is ZeroSumMode.D else self.value_c


NOT_COVERED = Prediction(None, None, "not covered")


def large_primes_squarefree(modulus: Modulus) -> bool:
    """n squarefree and every prime divisor at least 7"""
    return modulus.squarefree and all(p >= 7 for p in modulus.primes)


def _omega_pair(omega: int, hypothesis: str) -> Prediction:
    return Prediction(omega + 1, 2 ** omega, hypothesis)


def predicted_constants(modulus: Modulus, weightset: WeightSet) -> Prediction:
    if weightset.modulus != modulus:
        return NOT_COVERED
    if weightset.contains_zero:
        return Prediction(1, 1, "0 is a weight")

    kind = weightset.kind
    if kind is WeightKind.U:
        # prime divisors counted with multiplicity
        return _omega_pair(modulus.big_omega, "units, n odd")
    if kind in (WeightKind.QP, WeightKind.S) and modulus.is_prime:
        return Prediction(3, 3, "quadratic residues, n prime")
    if kind is WeightKind.S and large_primes_squarefree(modulus):
        return _omega_pair(modulus.omega, "S(n), n squarefree composite, primes ≥ 7")
    if kind is WeightKind.L and large_primes_squarefree(modulus):
        if modulus.omega == 2:
            return Prediction(4, 6, "L(n;p), n a product of two distinct primes ≥ 7")
        return _omega_pair(modulus.omega, "L(n;p), n squarefree not a product of two primes, primes ≥ 7")
    return NOT_COVERED
