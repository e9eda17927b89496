"""
Input Validation Utilities for zslab
====================================

Parsing of command-line values: moduli, weight-set specs, sequences and
theorem / lemma identifiers.
"""

import re
from dataclasses import dataclass
from typing import Optional, Tuple

from arithmetic.modulus import Modulus, factorize
from engine.sequence import Sequence, ZeroSumMode
from utils.errors import ModulusError, UsageError, WeightSetError
from utils.logger import get_logger
from weights.weight_sets import WeightKind, WeightSet, build_weight_set

logger = get_logger(__name__)

WEIGHT_SPEC_PATTERN = re.compile(r"^(U|Q|S|L:(\d+)|custom:(\d+(?:,\d+)*))$")
SEQUENCE_PATTERN = re.compile(r"^\s*(-?\d+\s*(,\s*-?\d+\s*)*)?$")
IDENTIFIER_PATTERN = re.compile(r"^[a-z0-9_]+'?$")


@dataclass(frozen=True)
class WeightSpec:
    """Parsed form of `U | Q | S | L:<p> | custom:<r1,r2,...>`"""
    kind: WeightKind
    parameter: Optional[int] = None
    residues: Optional[Tuple[int, ...]] = None

    @property
    def text(self) -> str:
        if self.kind is WeightKind.L:
            return f"L:{self.parameter}"
        if self.kind is WeightKind.CUSTOM:
            return "custom:" + ",".join(str(r) for r in self.residues)
        return self.kind.value

    def build(self, modulus: Modulus) -> WeightSet:
        return build_weight_set(modulus, self.kind, self.parameter, self.residues)


def parse_modulus(value) -> Modulus:
    try:
        n = int(value)
    except (TypeError, ValueError):
        logger.error(f"Invalid modulus: {value!r}")
        raise ModulusError(f"modulus must be an integer, got {value!r}")
    return factorize(n)


def parse_weight_spec(spec: str) -> WeightSpec:
    if not spec or not isinstance(spec, str):
        raise WeightSetError("empty weight-set spec")
    match = WEIGHT_SPEC_PATTERN.match(spec.strip())
    if not match:
        logger.error(f"Malformed weight-set spec: {spec!r}")
        raise WeightSetError(f"malformed weight-set spec {spec!r} (expected U, Q, S, L:<p> or custom:<r1,r2,...>)")
    text, prime, residues = match.groups()
    if prime is not None:
        return WeightSpec(WeightKind.L, parameter=int(prime))
    if residues is not None:
        return WeightSpec(WeightKind.CUSTOM, residues=tuple(int(r) for r in residues.split(",")))
    return WeightSpec(WeightKind(text))


def parse_weight_set(spec: str, modulus: Modulus) -> WeightSet:
    return parse_weight_spec(spec).build(modulus)


def parse_mode(value: str) -> ZeroSumMode:
    try:
        return ZeroSumMode(value.upper())
    except (AttributeError, ValueError):
        raise UsageError(f"mode must be D or C, got {value!r}")


def parse_sequence(value: str, modulus: Modulus) -> Sequence:
    """Comma-separated integers, reduced mod n"""
    if value is None or not SEQUENCE_PATTERN.match(value):
        logger.error(f"Malformed sequence: {value!r}")
        raise UsageError(f"malformed sequence {value!r} (expected comma-separated integers)")
    terms = [int(t) for t in value.split(",") if t.strip()]
    return Sequence(modulus, tuple(t % modulus.n for t in terms))


def validate_identifier(identifier: str) -> bool:
    """Registry ids are lower-case alphanumerics with an optional trailing prime"""
    if not identifier or not isinstance(identifier, str):
        return False
    return bool(IDENTIFIER_PATTERN.match(identifier))
