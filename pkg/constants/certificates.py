"""
Constructed zero-sum-free sequences for U(n), n squarefree.

A sequence free of U(n)-weighted zero-sums is free of A-weighted zero-sums for
every A ⊆ U(n), so these certify lower bounds for S(n) and L(n;p) as well.
"""

from dataclasses import replace
from typing import Optional, Tuple

from arithmetic.maps import CrtIso
from arithmetic.modulus import Modulus
from constants.search import ConstantResult, certify_lower_bound
from engine.sequence import Sequence, ZeroSumMode
from utils.errors import ModulusError
from utils.logger import get_logger
from weights.weight_sets import WeightSet

logger = get_logger(__name__)


def _require_squarefree(modulus: Modulus) -> None:
    if not modulus.squarefree:
        logger.error(f"Constructed certificate requested for non-squarefree {modulus.n}")
        raise ModulusError(f"constructed certificates need a squarefree modulus, got {modulus.n}")


def subsequence_certificate(modulus: Modulus) -> Sequence:
    """(n/p_1, ..., n/p_k): modulo p_i only the i-th term survives"""
    _require_squarefree(modulus)
    return Sequence(modulus, tuple(modulus.n // p for p in modulus.primes))


def _window_terms(modulus: Modulus) -> Tuple[int, ...]:
    if modulus.omega == 1:
        return (1,)
    p = modulus.primes[0]
    rest = modulus.divisor(modulus.n // p)
    iso = CrtIso(modulus, p, rest.n)
    # halves vanish mod p and reduce to a window-free sequence mod n/p; the middle is a unit
    half = tuple(iso.combine(0, t) for t in _window_terms(rest))
    return half + (1,) + half


def consecutive_certificate(modulus: Modulus) -> Sequence:
    """Length 2^Ω(n) - 1 sequence without U(n)-weighted zero-sum windows"""
    _require_squarefree(modulus)
    return Sequence(modulus, _window_terms(modulus))


def unit_certificate(modulus: Modulus, mode: ZeroSumMode) -> Sequence:
    if mode is ZeroSumMode.D:
        return subsequence_certificate(modulus)
    return consecutive_certificate(modulus)


def strengthen_with_construction(weightset: WeightSet, result: ConstantResult) -> ConstantResult:
    """Raise the lower bound of a non-exhaustive result using the constructed certificate, if it is longer"""
    modulus = weightset.modulus
    if result.exhaustive or not modulus.squarefree or not weightset.within_units:
        return result
    certificate = unit_certificate(modulus, result.mode)
    if len(certificate) + 1 <= result.lower_bound:
        return result
    if not certify_lower_bound(modulus, weightset, certificate, result.mode):
        logger.warning(f"Constructed certificate {certificate.serialize()} failed for {weightset.label} mod {modulus.n}")
        return result
    bound = len(certificate) + 1
    logger.info(f"Constructed certificate raises {result.mode.value}_{weightset.label}({modulus.n}) lower bound to {bound}")
    return replace(result, value=bound, lower_bound=bound, certificate=certificate)


def constructed_lower_bound(weightset: WeightSet, mode: ZeroSumMode) -> Optional[int]:
    """Certified lower bound from the construction alone, or None when it does not apply"""
    modulus = weightset.modulus
    if not modulus.squarefree or not weightset.within_units:
        return None
    certificate = unit_certificate(modulus, mode)
    if certify_lower_bound(modulus, weightset, certificate, mode):
        return len(certificate) + 1
    return None
