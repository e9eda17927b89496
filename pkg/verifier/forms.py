"""
Structural forms of extremal sequences.

Every sub-predicate "is D-/C-extremal for S(n') / Q_q / U(n')" is decided by
running the zero-sum engine on the projected sequence, with the constant taken
from an exhaustive search. Forms marked permuted hold for a sequence when they
hold for some reordering of it; the others are positional.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from arithmetic.modulus import Modulus
from engine.sequence import Sequence, ZeroSumMode
from utils.errors import HypothesisError, UnknownIdentifierError, WeightSetError
from utils.logger import get_logger
from verifier.extremal import is_extremal, searched_constant
from weights.weight_sets import WeightSet, s_weights, unit_squares, units

logger = get_logger(__name__)


@dataclass(frozen=True)
class FormParams:
    """Instance data for the forms: n, p' and the cofactor n' = n/p' (q when Ω(n) = 2)"""
    modulus: Modulus
    p_prime: Optional[int] = None
    exploratory: bool = False

    @property
    def cofactor(self) -> Modulus:
        return self.modulus.divisor(self.modulus.n // self.p_prime)


def form_params(modulus: Modulus, p_prime: Optional[int] = None, exploratory: bool = False) -> FormParams:
    if p_prime is not None and p_prime not in modulus.primes:
        logger.error(f"p' = {p_prime} is not a prime divisor of {modulus.n}")
        raise WeightSetError(f"{p_prime} is not a prime divisor of {modulus.n}")
    return FormParams(modulus, p_prime, exploratory)


def _image(terms: Tuple[int, ...], target: Modulus) -> Sequence:
    return Sequence(target, tuple(x % target.n for x in terms))


def _extremal_image(terms: Tuple[int, ...], weightset: WeightSet, mode: ZeroSumMode) -> bool:
    return is_extremal(_image(terms, weightset.modulus), weightset, mode, searched_constant(weightset, mode))


def _pair_split(terms: Tuple[int, ...], restricted: WeightSet) -> bool:
    n = restricted.modulus.n
    x1, x2 = terms
    minus_x2 = (n - x2) % n
    return x1 in restricted and minus_x2 in units(restricted.modulus) and minus_x2 not in restricted


def _pair_split_s(terms, params: FormParams) -> bool:
    return _pair_split(terms, s_weights(params.modulus))


def _pair_split_qp(terms, params: FormParams) -> bool:
    return _pair_split(terms, unit_squares(params.modulus))


def _extl3_bullet1(terms, params: FormParams) -> bool:
    x1, x2, x3 = terms
    cofactor = params.cofactor
    return x3 % cofactor.n == 0 and _extremal_image((x1, x2), s_weights(cofactor), ZeroSumMode.D)


def _extl3_bullet2(terms, params: FormParams) -> bool:
    x1, x2, x3 = terms
    p = params.p_prime
    if x1 % p == 0 or x2 % p or x3 % p:
        return False
    cofactor = params.cofactor
    return (_extremal_image((x2, x3), s_weights(cofactor), ZeroSumMode.D)
            and not _extremal_image((x2, x3), units(cofactor), ZeroSumMode.D))


def _extl2_bullet1(terms, params: FormParams) -> bool:
    x1, x2, x3 = terms
    q = params.cofactor
    return x3 % q.n == 0 and _extremal_image((x1, x2), unit_squares(q), ZeroSumMode.D)


def _extl2_bullet2(terms, params: FormParams) -> bool:
    x1, x2, x3 = terms
    p = params.p_prime
    if x1 % p == 0 or x2 % p or x3 % p:
        return False
    return _extremal_image((x2, x3), unit_squares(params.cofactor), ZeroSumMode.D)


def _lext2_bullet1(terms, params: FormParams) -> bool:
    x1, x2, x3, x4, x5 = terms
    q = params.cofactor
    if x1 % q.n or x3 % q.n or x5 % q.n:
        return False
    return _extremal_image((x2, x4), unit_squares(q), ZeroSumMode.C)


def _lext2_bullet2(terms, params: FormParams) -> bool:
    x1, x2, x3, x4, x5 = terms
    p = params.p_prime
    if x3 % p == 0 or any(x % p for x in (x1, x2, x4, x5)):
        return False
    squares = unit_squares(params.cofactor)
    return (_extremal_image((x1, x2), squares, ZeroSumMode.C)
            and _extremal_image((x4, x5), squares, ZeroSumMode.C))


class FormSpec(NamedTuple):
    predicate: Callable[[Tuple[int, ...], FormParams], bool]
    length: int
    permuted: bool
    omega: Optional[int]
    needs_p_prime: bool


FORMS: Dict[str, FormSpec] = {
    "pair_split_S": FormSpec(_pair_split_s, 2, True, 2, False),
    "pair_split_Qp": FormSpec(_pair_split_qp, 2, True, 1, False),
    "extl3_bullet1": FormSpec(_extl3_bullet1, 3, True, 3, True),
    "extl3_bullet2": FormSpec(_extl3_bullet2, 3, True, 3, True),
    "extl2_bullet1": FormSpec(_extl2_bullet1, 3, True, 2, True),
    "extl2_bullet2": FormSpec(_extl2_bullet2, 3, True, 2, True),
    "lext2_bullet1": FormSpec(_lext2_bullet1, 5, False, 2, True),
    "lext2_bullet2": FormSpec(_lext2_bullet2, 5, False, 2, True),
}


def check_applicable(form_id: str, params: FormParams) -> FormSpec:
    spec = FORMS.get(form_id)
    if spec is None:
        raise UnknownIdentifierError(f"unknown form id '{form_id}'")
    if spec.needs_p_prime and params.p_prime is None:
        raise HypothesisError(f"form {form_id} needs a prime divisor p'")
    if spec.needs_p_prime and params.p_prime == params.modulus.n:
        raise HypothesisError(f"form {form_id} needs p' to be a proper divisor of {params.modulus.n}")
    if not params.exploratory and spec.omega is not None and params.modulus.omega != spec.omega:
        raise HypothesisError(f"form {form_id} applies only when Ω(n) = {spec.omega}")
    if not params.exploratory and form_id == "pair_split_Qp" and not params.modulus.is_prime:
        raise HypothesisError(f"form {form_id} applies only to a prime modulus")
    return spec


def matches_form(sequence: Sequence, form_id: str, params: FormParams, permute: Optional[bool] = None) -> bool:
    """permute overrides the form's own permutation closure (used for diagnostics)"""
    spec = check_applicable(form_id, params)
    terms = sequence.terms
    if len(terms) != spec.length or 0 in terms:
        return False
    closed = spec.permuted if permute is None else permute
    candidates = set(permutations(terms)) if closed else (terms,)
    return any(spec.predicate(t, params) for t in candidates)
