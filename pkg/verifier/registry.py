from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml

from engine.sequence import ZeroSumMode
from utils.errors import UnknownIdentifierError
from utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_REGISTRY = Path(__file__).resolve().parent.parent / "theorems_and_lemmas.yaml"


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    description: str
    modes: Tuple[ZeroSumMode, ...]
    relation: str
    restricted: str
    hypothesis: str
    units_side: bool
    forms: Tuple[str, ...] = ()
    forms_when_omega: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    omega_in: Optional[Tuple[int, ...]] = None
    omega_not_in: Tuple[int, ...] = ()
    omega_min: Optional[int] = None
    permutation_diagnostic: bool = False

    @property
    def needs_parameter(self) -> bool:
        return self.restricted == "L"

    def forms_for(self, omega: int) -> Tuple[str, ...]:
        return self.forms + self.forms_when_omega.get(omega, ())

    def omega_allowed(self, omega: int) -> bool:
        if self.omega_in is not None and omega not in self.omega_in:
            return False
        if omega in self.omega_not_in:
            return False
        return self.omega_min is None or omega >= self.omega_min

    def __hash__(self) -> int:
        return hash(self.id)


@dataclass(frozen=True)
class LemmaEntry:
    id: str
    description: str
    kind: str
    params: Tuple[str, ...] = ()


class ResultRegistry:
    """Theorem and lemma identifiers loaded from theorems_and_lemmas.yaml"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = Path(config_file) if config_file else DEFAULT_REGISTRY
        self.theorems: Dict[str, TheoremEntry] = {}
        self.lemmas: Dict[str, LemmaEntry] = {}
        self.load_registry()

    def load_registry(self):
        if not self.config_file.exists():
            logger.error(f"Registry file {self.config_file} not found")
            raise UnknownIdentifierError(f"registry file {self.config_file} not found")

        with self.config_file.open("r", encoding="utf-8") as f:
            config = yaml.safe_load(f) or {}

        for spec in config.get("theorems", []):
            entry = TheoremEntry(
                id=spec["id"],
                description=spec.get("description", ""),
                modes=tuple(ZeroSumMode(m) for m in spec.get("modes", ["D"])),
                relation=spec.get("relation", "equality"),
                restricted=spec["restricted"],
                hypothesis=spec.get("hypothesis", "large_primes_squarefree"),
                units_side=bool(spec.get("units_side", False)),
                forms=tuple(spec.get("forms", [])),
                forms_when_omega={int(k): tuple(v) for k, v in (spec.get("forms_when_omega") or {}).items()},
                omega_in=tuple(spec["omega_in"]) if "omega_in" in spec else None,
                omega_not_in=tuple(spec.get("omega_not_in", [])),
                omega_min=spec.get("omega_min"),
                permutation_diagnostic=bool(spec.get("permutation_diagnostic", False)),
            )
            self.theorems[entry.id] = entry
            logger.debug(f"Loaded theorem: {entry.id}")

        for spec in config.get("lemmas", []):
            entry = LemmaEntry(
                id=spec["id"],
                description=spec.get("description", ""),
                kind=spec.get("kind", "inclusion"),
                params=tuple(spec.get("params", [])),
            )
            self.lemmas[entry.id] = entry
            logger.debug(f"Loaded lemma: {entry.id}")

    def get_theorem(self, theorem_id: str) -> TheoremEntry:
        entry = self.theorems.get(theorem_id)
        if entry is None:
            logger.error(f"Unknown theorem id {theorem_id}")
            raise UnknownIdentifierError(f"unknown theorem id '{theorem_id}'")
        return entry

    def get_lemma(self, lemma_id: str) -> LemmaEntry:
        entry = self.lemmas.get(lemma_id)
        if entry is None:
            logger.error(f"Unknown lemma id {lemma_id}")
            raise UnknownIdentifierError(f"unknown lemma id '{lemma_id}'")
        return entry

    def is_theorem(self, identifier: str) -> bool:
        return identifier in self.theorems

    def is_lemma(self, identifier: str) -> bool:
        return identifier in self.lemmas

    def identifiers(self) -> List[str]:
        return list(self.theorems) + list(self.lemmas)


_registry: Optional[ResultRegistry] = None


def get_registry() -> ResultRegistry:
    global _registry
    if _registry is None:
        _registry = ResultRegistry()
    return _registry
