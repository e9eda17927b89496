"""Exact modular primitives: factorization, Jacobi symbol, natural maps, CRT."""

from .modulus import Modulus, factorize
from .jacobi import jacobi
from .maps import ProjectionMap, CrtIso, natural_map, project_sequence, crt_split, crt_combine

__all__ = [
    "Modulus",
    "factorize",
    "jacobi",
    "ProjectionMap",
    "CrtIso",
    "natural_map",
    "project_sequence",
    "crt_split",
    "crt_combine",
]
