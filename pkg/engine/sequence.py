from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

from arithmetic.maps import ProjectionMap, project_sequence
from arithmetic.modulus import Modulus
from utils.errors import ProjectionError


class ZeroSumMode(Enum):
    """D: any subsequence; C: windows of consecutive terms"""
    D = "D"
    C = "C"

    @property
    def description(self) -> str:
        return "subsequence" if self is ZeroSumMode.D else "consecutive"


@dataclass(frozen=True)
class Sequence:
    """Ordered terms in Z_n"""
    modulus: Modulus
    terms: Tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        for x in self.terms:
            if not 0 <= x < n:
                raise ProjectionError(f"term {x} out of range for modulus {n}")

    @classmethod
    def of(cls, modulus: Modulus, terms: Iterable[int]) -> "Sequence":
        return cls(modulus, tuple(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def project(self, pm: ProjectionMap) -> "Sequence":
        return Sequence(pm.target, project_sequence(self.terms, pm))

    def reversed(self) -> "Sequence":
        return Sequence(self.modulus, self.terms[::-1])

    def serialize(self) -> str:
        return ",".join(str(x) for x in self.terms)


@dataclass(frozen=True)
class Witness:
    """Positions and weights of a weighted zero-sum (sub)sequence"""
    indices: Tuple[int, ...]
    weights: Tuple[int, ...]
    mode: ZeroSumMode

    def verify(self, sequence: Sequence, weight_members: Iterable[int]) -> bool:
        allowed = set(weight_members)
        if not self.indices or len(self.indices) != len(self.weights):
            return False
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            return False
        if self.indices[0] < 0 or self.indices[-1] >= len(sequence):
            return False
        if self.mode is ZeroSumMode.C and self.indices[-1] - self.indices[0] + 1 != len(self.indices):
            return False
        if any(w not in allowed for w in self.weights):
            return False
        total = sum(w * sequence.terms[i] for i, w in zip(self.indices, self.weights))
        return total % sequence.modulus.n == 0
