from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from weights.weight_sets import WeightSet
from utils.errors import WeightSetError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class OrbitTable:
    """Partition of Z_n into orbits {a·x : a ∈ W}; representative = orbit minimum"""
    weightset: WeightSet
    representative: Tuple[int, ...]
    orbit_sizes: Dict[int, int]

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(sorted(self.orbit_sizes))

    @property
    def nonzero_representatives(self) -> Tuple[int, ...]:
        return tuple(r for r in self.representatives if r != 0)

    def orbit(self, x: int) -> Tuple[int, ...]:
        rep = self.representative[x]
        return tuple(y for y, r in enumerate(self.representative) if r == rep)

    def orbit_size(self, x: int) -> int:
        return self.orbit_sizes[self.representative[x]]

    def __hash__(self) -> int:
        return hash((self.weightset, self.representative))


@lru_cache(maxsize=256)
def orbit_table(weightset: WeightSet) -> OrbitTable:
    if not weightset.is_group:
        logger.error(f"Orbit table requested for non-group weight set {weightset.label} mod {weightset.modulus}")
        raise WeightSetError("orbit canonicalization requires a group weight set")
    n = weightset.modulus.n
    rep = [-1] * n
    sizes: Dict[int, int] = {}
    # scanning upward, the first unvisited residue is the minimum of its orbit
    for x in range(n):
        if rep[x] >= 0:
            continue
        orbit = {a * x % n for a in weightset.elements}
        for y in orbit:
            rep[y] = x
        sizes[x] = len(orbit)
    logger.debug(f"Orbit table for {weightset.label} mod {n}: {len(sizes)} orbits")
    return OrbitTable(weightset, tuple(rep), sizes)


def canonicalize_term(x: int, table: OrbitTable) -> int:
    return table.representative[x]
