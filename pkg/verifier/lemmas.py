"""
Lemma checks.

Inclusion lemmas compare images of weight sets exactly. Constructive lemmas
("then S is an A-weighted zero-sum sequence") are checked over every sequence
meeting the hypotheses, scanned as sorted tuples of per-term orbit classes of a
group that leaves hypothesis and conclusion unchanged, or over uniformly
sampled sequences when the class space is too large or sampling is requested.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb, gcd, isqrt
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from arithmetic.maps import CrtIso
from arithmetic.modulus import Modulus
from config.settings import SearchConfig
from constants.predictions import large_primes_squarefree
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import terms_sum_to_zero, translate_table
from utils.errors import HypothesisError
from utils.logger import get_execution_logger, get_logger
from verifier.extremal import Strategy, TermClasses, term_classes
from verifier.registry import get_registry
from verifier.theorems import TheoremReport, Verdict
from weights.weight_sets import (
    WeightSet, custom_weights, l_weights, product_preimage, s_weights, units,
)

logger = get_logger(__name__)
execution_logger = get_execution_logger()


def _is_square(d: int) -> bool:
    return isqrt(d) ** 2 == d


def _reject(lemma_id: str, message: str, exploratory: bool) -> None:
    if not exploratory:
        logger.error(f"Hypotheses of {lemma_id} fail: {message}")
        raise HypothesisError(f"{lemma_id}: {message} (use --exploratory to run anyway)")


# ---------------------------------------------------------------- inclusions

@dataclass
class InclusionCheck:
    label: str
    required: int
    missing: List[int]
    modulus: Modulus

    def as_dict(self) -> Dict[str, Any]:
        return {"instance": self.label, "required": self.required, "missing": len(self.missing)}


def _inclusion(label: str, target: Modulus, required: Iterable[int], image: Iterable[int]) -> InclusionCheck:
    have = set(image)
    needed = sorted(set(required))
    return InclusionCheck(label, len(needed), [x for x in needed if x not in have], target)


def _u2s(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[InclusionCheck]:
    n = modulus.n
    if "d" in params:
        d = params["d"]
        if d <= 0 or n % d or d == n:
            raise HypothesisError(f"u2s: {d} is not a proper divisor of {n}")
        if _is_square(d) or gcd(d, n // d) != 1:
            _reject("u2s", f"d={d} must be a non-square divisor coprime to n/d", exploratory)
        divisors = [d]
    else:
        divisors = [d for d in modulus.divisors() if d != n and not _is_square(d) and gcd(d, n // d) == 1]
    checks = []
    sn = s_weights(modulus)
    for d in divisors:
        target = modulus.divisor(n // d)
        checks.append(_inclusion(f"d={d}", target, units(target).elements, sn.image(target.n)))
    return checks


def _s2l_pairs(modulus: Modulus, params: Dict[str, int]) -> List[Tuple[int, int]]:
    primes = modulus.primes
    p_primes = [params["p_prime"]] if "p_prime" in params else list(primes)
    ps = [params["p"]] if "p" in params else list(primes)
    for q in p_primes + ps:
        if q not in primes:
            raise HypothesisError(f"{q} is not a prime divisor of {modulus.n}")
    return [(pp, p) for pp in p_primes for p in ps]


def _s2l(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[InclusionCheck]:
    n = modulus.n
    checks = []
    for p_prime, p in _s2l_pairs(modulus, params):
        rest = n // p
        if rest == 1:
            continue
        if gcd(rest, p) != 1:
            if "p" in params:
                _reject("s2l", f"n/p = {rest} must be coprime to p = {p}", exploratory)
            elif not exploratory:
                continue
        target = modulus.divisor(rest)
        image = l_weights(modulus, p_prime).image(rest)
        checks.append(_inclusion(f"p'={p_prime},p={p}", target, s_weights(target).elements, image))
        if p_prime == p:
            # f(L(n;p)) ⊆ S(n/p): anything in the image outside S(n/p) is a failure
            outside = [x for x in sorted(image) if x not in s_weights(target)]
            checks.append(InclusionCheck(f"f(L(n;{p}))⊆S({rest})", len(image), outside, target))
    return checks


def _u2l(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[InclusionCheck]:
    n = modulus.n
    p_primes = [params["p_prime"]] if "p_prime" in params else list(modulus.primes)
    checks = []
    for p_prime in p_primes:
        if p_prime not in modulus.primes:
            raise HypothesisError(f"{p_prime} is not a prime divisor of {n}")
        if gcd(p_prime, n // p_prime) != 1:
            if "p_prime" in params:
                _reject("u2l", f"p'={p_prime} must be coprime to n/p'", exploratory)
            elif not exploratory:
                continue
        target = modulus.divisor(p_prime)
        image = l_weights(modulus, p_prime).image(p_prime)
        checks.append(_inclusion(f"p'={p_prime}", target, units(target).elements, image))
    return checks


def _gl_prime(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[InclusionCheck]:
    n = modulus.n
    if not modulus.squarefree:
        _reject("gl'", "n must be squarefree", exploratory)
    if modulus.omega < 2:
        raise HypothesisError("gl': n needs at least two prime divisors")
    p_primes = [params["p_prime"]] if "p_prime" in params else list(modulus.primes)
    checks = []
    for p_prime in p_primes:
        if p_prime not in modulus.primes:
            raise HypothesisError(f"{p_prime} is not a prime divisor of {n}")
        rest = modulus.divisor(n // p_prime)
        if gcd(rest.n, p_prime) != 1:
            continue
        iso = CrtIso(modulus, rest.n, p_prime)
        lw = l_weights(modulus, p_prime)
        pairs = [(b, c) for b in s_weights(rest).elements for c in units(modulus.divisor(p_prime)).elements]
        missing = [iso.combine(b, c) for b, c in pairs if iso.combine(b, c) not in lw]
        checks.append(InclusionCheck(f"p'={p_prime}", len(pairs), sorted(missing), modulus))
    return checks


def _s2l3(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[InclusionCheck]:
    n = modulus.n
    if not (modulus.squarefree and modulus.omega == 3):
        _reject("s2l3", "n must be a product of three distinct primes", exploratory)
    pairs = _s2l_pairs(modulus, params)
    checks = []
    for p_prime, p in pairs:
        if p == p_prime:
            if "p" in params and "p_prime" in params:
                raise HypothesisError("s2l3: p and p' must be distinct")
            continue
        if gcd(n // p, p) != 1:
            continue
        target = modulus.divisor(n // p)
        image = l_weights(modulus, p_prime).image(target.n)
        checks.append(_inclusion(f"p'={p_prime},p={p}", target, units(target).elements, image))
    return checks


INCLUSIONS: Dict[str, Callable[[Modulus, Dict[str, int], bool], List[InclusionCheck]]] = {
    "u2s": _u2s,
    "s2l": _s2l,
    "u2l": _u2l,
    "gl'": _gl_prime,
    "s2l3": _s2l3,
}


# -------------------------------------------------------------- constructive

Predicate = Callable[[Tuple[int, ...]], bool]


@dataclass(frozen=True)
class ScanSpec:
    label: str
    modulus: Modulus
    group: WeightSet
    lengths: Tuple[int, ...]
    hypothesis: Predicate
    conclusion: Predicate
    allowed: Optional[Callable[[int], bool]] = None


@dataclass
class ScanOutcome:
    label: str
    method: str
    instances: int = 0
    sequences: int = 0
    attempts: int = 0
    failures: List[Tuple[int, ...]] = field(default_factory=list)
    failure_count: int = 0

    def as_dict(self) -> Dict[str, Any]:
        return {"instance": self.label, "method": self.method, "instances": self.instances,
                "sequences": self.sequences, "attempts": self.attempts, "failures": self.failure_count}


def _classes_for(spec: ScanSpec) -> TermClasses:
    classes = term_classes(spec.modulus, Strategy.CANONICAL, spec.group, include_zero=True)
    if spec.allowed is None:
        return classes
    keep = [i for i, x in enumerate(classes.terms) if spec.allowed(x)]
    return TermClasses(classes.modulus, classes.group, tuple(classes.terms[i] for i in keep),
                       tuple(classes.sizes[i] for i in keep))


def _record_failure(outcome: ScanOutcome, terms: Tuple[int, ...], limit: int) -> None:
    outcome.failure_count += 1
    if len(outcome.failures) < limit:
        outcome.failures.append(terms)


def scan_exhaustive(spec: ScanSpec, classes: TermClasses, limit: int) -> ScanOutcome:
    outcome = ScanOutcome(spec.label, "exhaustive")
    for length in spec.lengths:
        for idx in combinations_with_replacement(range(len(classes.terms)), length):
            terms = tuple(classes.terms[i] for i in idx)
            if not spec.hypothesis(terms):
                continue
            outcome.instances += 1
            outcome.sequences += classes.multiplicity(idx, ZeroSumMode.D)
            if not spec.conclusion(terms):
                _record_failure(outcome, terms, limit)
    return outcome


def scan_sampled(spec: ScanSpec, samples: int, seed: int, limit: int) -> ScanOutcome:
    outcome = ScanOutcome(spec.label, "sampled")
    rng = random.Random(seed)
    residues = [x for x in range(spec.modulus.n) if spec.allowed is None or spec.allowed(x)]
    max_attempts = max(samples, 1) * 200
    while outcome.instances < samples and outcome.attempts < max_attempts:
        outcome.attempts += 1
        length = rng.choice(spec.lengths)
        terms = tuple(rng.choice(residues) for _ in range(length))
        if not spec.hypothesis(terms):
            continue
        outcome.instances += 1
        outcome.sequences += 1
        if not spec.conclusion(terms):
            _record_failure(outcome, terms, limit)
    if outcome.instances < samples:
        logger.warning(f"{spec.label}: only {outcome.instances} of {samples} samples met the hypotheses")
    return outcome


def _class_space(classes: TermClasses, lengths: Iterable[int]) -> int:
    k = len(classes.terms)
    return sum(comb(k + length - 1, length) for length in lengths)


def run_scan(spec: ScanSpec, config: SearchConfig, samples: Optional[int], seed: int) -> ScanOutcome:
    classes = _classes_for(spec)
    space = _class_space(classes, spec.lengths)
    if samples is None and space <= config.max_instances:
        return scan_exhaustive(spec, classes, config.max_counterexamples)
    if samples is None:
        samples = config.sample_size or 100_000
        logger.info(f"{spec.label}: {space} classes exceed the instance budget, sampling {samples}")
    return scan_sampled(spec, samples, seed, config.max_counterexamples)


def _whole_sum(weightset: WeightSet) -> Predicate:
    table = translate_table(weightset)
    return lambda terms: terms_sum_to_zero(terms, table)


def _coprime_counts(modulus: Modulus, terms: Tuple[int, ...]) -> Dict[int, int]:
    return {p: sum(1 for x in terms if x % p) for p in modulus.primes}


def _units_in(terms: Tuple[int, ...], m: int) -> int:
    return sum(1 for x in terms if gcd(x, m) == 1)


def _gs_specs(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[ScanSpec]:
    if not modulus.squarefree:
        _reject("gs", "n must be squarefree", exploratory)
    lengths = tuple(range(2, params.get("max_length", modulus.omega + 1) + 1))

    def hypothesis(terms):
        return (all(c >= 2 for c in _coprime_counts(modulus, terms).values())
                and _units_in(terms, modulus.n) <= 1)

    sn = s_weights(modulus)
    return [ScanSpec(f"n={modulus.n}", modulus, sn, lengths, hypothesis, _whole_sum(sn))]


def _gs_prime_specs(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[ScanSpec]:
    if not large_primes_squarefree(modulus):
        _reject("gs'", "n must be squarefree with every prime divisor at least 7", exploratory)
    lengths = tuple(range(2, params.get("max_length", modulus.omega + 1) + 1))

    def hypothesis(terms):
        counts = _coprime_counts(modulus, terms).values()
        return all(c >= 2 for c in counts) and any(c >= 3 for c in counts)

    sn = s_weights(modulus)
    return [ScanSpec(f"n={modulus.n}", modulus, sn, lengths, hypothesis, _whole_sum(sn))]


def _gl_specs(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[ScanSpec]:
    if not modulus.squarefree:
        _reject("gl", "n must be squarefree", exploratory)
    if modulus.omega < 2:
        raise HypothesisError("gl: n needs at least two prime divisors")
    lengths = tuple(range(2, params.get("max_length", modulus.omega + 1) + 1))
    p_primes = [params["p_prime"]] if "p_prime" in params else list(modulus.primes)
    specs = []
    for p_prime in p_primes:
        if p_prime not in modulus.primes:
            raise HypothesisError(f"{p_prime} is not a prime divisor of {modulus.n}")
        rest = modulus.n // p_prime
        others = [p for p in modulus.primes if p != p_prime]

        def hypothesis(terms, rest=rest, others=others):
            counts = _coprime_counts(modulus, terms)
            if any(c < 2 for c in counts.values()):
                return False
            return _units_in(terms, rest) <= 1 or any(counts[p] >= 3 for p in others)

        lw = l_weights(modulus, p_prime)
        specs.append(ScanSpec(f"p'={p_prime}", modulus, lw, lengths, hypothesis, _whole_sum(lw)))
    return specs


def _lift_weight_choices(modulus: Modulus) -> List[WeightSet]:
    return [units(modulus), s_weights(modulus)] + [l_weights(modulus, p) for p in modulus.primes]


def _lifts_specs(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[ScanSpec]:
    n = modulus.n
    if "d" in params:
        d = params["d"]
        if d <= 0 or n % d or d == n:
            raise HypothesisError(f"lifts': {d} is not a proper divisor of {n}")
        if gcd(d, n // d) != 1:
            _reject("lifts'", f"d={d} must be coprime to n/d", exploratory)
        divisors = [d]
    else:
        divisors = [d for d in modulus.divisors() if 1 < d < n and gcd(d, n // d) == 1]
    lengths = tuple(range(1, params.get("max_length", 3) + 1))
    specs = []
    for d in divisors:
        target = modulus.divisor(n // d)
        for weights in _lift_weight_choices(modulus):
            # B = f(A) is the largest admissible B
            image = custom_weights(target, sorted(weights.image(target.n)))
            image_sum = _whole_sum(image)

            def hypothesis(terms, m=target.n, image_sum=image_sum):
                return image_sum(tuple(x % m for x in terms))

            specs.append(ScanSpec(f"d={d},A={weights.label}", modulus, weights, lengths, hypothesis,
                                  _whole_sum(weights), allowed=lambda x, d=d: x % d == 0))
    return specs


def _obs3_specs(modulus: Modulus, params: Dict[str, int], exploratory: bool) -> List[ScanSpec]:
    n = modulus.n
    lengths = tuple(range(2, params.get("max_length", 3) + 1))
    specs = []
    for p in modulus.primes:
        m1, m2 = p ** modulus.valuation(p), n // p ** modulus.valuation(p)
        if m2 == 1:
            continue
        first_mod, second_mod = modulus.divisor(m1), modulus.divisor(m2)
        firsts = [units(first_mod), s_weights(first_mod)]
        seconds = [units(second_mod), s_weights(second_mod)]
        for weights in _lift_weight_choices(modulus):
            for a1 in firsts:
                for a2 in seconds:
                    group = product_preimage(modulus, m1, a1.elements, a2.elements)
                    if not group.is_subset_of(weights):
                        continue
                    sum1, sum2 = _whole_sum(a1), _whole_sum(a2)

                    def hypothesis(terms, m1=m1, m2=m2, sum1=sum1, sum2=sum2):
                        return sum1(tuple(x % m1 for x in terms)) and sum2(tuple(x % m2 for x in terms))

                    label = f"A={weights.label},m1={m1},A1={a1.label},A2={a2.label}"
                    specs.append(ScanSpec(label, modulus, group, lengths, hypothesis, _whole_sum(weights)))
    if not specs:
        raise HypothesisError(f"obs3: no admissible instance for n={n}")
    return specs


SCANS: Dict[str, Callable[[Modulus, Dict[str, int], bool], List[ScanSpec]]] = {
    "gs": _gs_specs,
    "gs'": _gs_prime_specs,
    "gl": _gl_specs,
    "lifts'": _lifts_specs,
    "obs3": _obs3_specs,
}


def verify_lemma(lemma_id: str, modulus: Modulus, params: Optional[Dict[str, int]] = None,
                 config: Optional[SearchConfig] = None, samples: Optional[int] = None) -> TheoremReport:
    entry = get_registry().get_lemma(lemma_id)
    config = config or SearchConfig.from_engine_config()
    params = dict(params or {})
    instance: Dict[str, Any] = {"n": modulus.n, **params}
    limit = config.max_counterexamples

    if entry.kind == "inclusion":
        checks = INCLUSIONS[lemma_id](modulus, params, config.exploratory)
        if not checks:
            raise HypothesisError(f"{lemma_id}: no admissible instance for n={modulus.n}")
        failures = [Sequence(c.modulus, (x,)) for c in checks for x in c.missing]
        stats = {"method": "image", "instances": [c.as_dict() for c in checks]}
        report = TheoremReport(lemma_id, instance, Verdict.COUNTEREXAMPLE if failures else Verdict.VERIFIED,
                               failures[:limit], len(failures), stats)
    else:
        specs = SCANS[lemma_id](modulus, params, config.exploratory)
        if not specs:
            raise HypothesisError(f"{lemma_id}: no admissible instance for n={modulus.n}")
        seed = config.sample_seed
        per_spec = None if samples is None else max(1, -(-samples // len(specs)))
        outcomes = [run_scan(spec, config, per_spec, seed) for spec in specs]
        failures = [Sequence(modulus, t) for o in outcomes for t in o.failures]
        total = sum(o.failure_count for o in outcomes)
        sampled = any(o.method == "sampled" for o in outcomes)
        stats = {
            "method": "sampled" if sampled else "exhaustive",
            "instances_checked": sum(o.instances for o in outcomes),
            "sequences_checked": sum(o.sequences for o in outcomes),
            "instances": [o.as_dict() for o in outcomes],
        }
        report = TheoremReport(lemma_id, instance, Verdict.COUNTEREXAMPLE if total else Verdict.VERIFIED,
                               failures[:limit], total, stats, seed=seed if sampled else None,
                               exhaustive=not sampled)

    log = logger.warning if report.verdict is Verdict.COUNTEREXAMPLE else logger.info
    log(f"{lemma_id} at n={modulus.n}: {report.verdict.value}")
    execution_logger.info("verify_lemma", lemma=lemma_id, n=modulus.n, verdict=report.verdict.value,
                          counterexamples=report.counterexample_count)
    return report
