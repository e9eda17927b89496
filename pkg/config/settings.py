"""
Engine Configuration for zslab
==============================

This module defines search budgets, cache and parallelism settings.
Values come from the environment (optionally a .env file).
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional
import os

from dotenv import load_dotenv

load_dotenv()

TOOL_VERSION = "1.0.0"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


# Engine settings
ENGINE_CONFIG = {
    "modulus_ceiling": _env_int("ZSLAB_MODULUS_CEILING", 1_000_000),
    "cache_dir": os.getenv("ZSLAB_CACHE") or None,  # unset -> cache disabled
    "threads": max(1, _env_int("ZSLAB_THREADS", os.cpu_count() or 1)),

    # Search budgets
    "node_budget": _env_int("ZSLAB_NODE_BUDGET", 200_000_000),
    "time_budget_seconds": _env_int("ZSLAB_TIME_BUDGET", 1800),

    # Reporting
    "max_counterexamples": _env_int("ZSLAB_MAX_COUNTEREXAMPLES", 10),

    # Lemma scans
    "sample_seed": _env_int("ZSLAB_SEED", 20240117),
    "sample_size": _env_int("ZSLAB_SAMPLE_SIZE", 100_000),
    "max_instances": _env_int("ZSLAB_MAX_INSTANCES", 2_000_000),

    "log_dir": os.getenv("ZSLAB_LOG_DIR", "logs"),
}


def get_engine_config() -> Dict[str, Any]:
    """Get current engine configuration"""
    return ENGINE_CONFIG.copy()


@dataclass(frozen=True)
class SearchConfig:
    """Per-call view of the engine configuration used by searches and scans"""
    node_budget: int = 200_000_000
    time_budget_seconds: float = 1800.0
    threads: int = 1
    depth_cap: Optional[int] = None
    max_counterexamples: int = 10
    sample_seed: int = 20240117
    sample_size: Optional[int] = None
    max_instances: int = 2_000_000
    exploratory: bool = False
    # off: every nonzero residue is a candidate term even for group weight sets
    orbit_pruning: bool = True

    @classmethod
    def from_engine_config(cls, **overrides: Any) -> "SearchConfig":
        cfg = get_engine_config()
        base = cls(
            node_budget=cfg["node_budget"],
            time_budget_seconds=float(cfg["time_budget_seconds"]),
            threads=cfg["threads"],
            max_counterexamples=cfg["max_counterexamples"],
            sample_seed=cfg["sample_seed"],
            sample_size=cfg["sample_size"],
            max_instances=cfg["max_instances"],
        )
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})

    def with_overrides(self, **overrides: Any) -> "SearchConfig":
        return replace(self, **overrides)
