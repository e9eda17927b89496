"""Semantic payloads: everything in a report except its manifest. These are what the disk cache stores."""

from typing import Any, Dict, List, Optional

from constants.predictions import Prediction
from constants.search import ConstantResult
from engine.sequence import Sequence, ZeroSumMode
from engine.zerosum import ZeroSumCheck
from verifier.explore import Exploration
from verifier.extremal import ExtremalFamily, FamilyAudit, expand_class
from verifier.theorems import TheoremReport
from weights.orbits import orbit_table
from weights.weight_sets import WeightSet


def _serialize_all(sequences: List[Sequence]) -> List[str]:
    return [s.serialize() for s in sequences]


def constant_payload(result: ConstantResult, weightset: WeightSet, prediction: Prediction,
                     certified: Optional[bool] = None) -> Dict[str, Any]:
    return {
        "n": weightset.modulus.n,
        "weights": weightset.label,
        "mode": result.mode.value,
        "value": result.value,
        "certificate": result.certificate.serialize() if result.certificate is not None else "",
        "exhaustive": result.exhaustive,
        "lower_bound": result.lower_bound,
        "upper_bound": result.upper_bound,
        "predicted": prediction.value(result.mode),
        "stats": {
            "nodes": result.nodes,
            "levels": [{"depth": s.depth, "nodes": s.nodes, "found": s.found, "complete": s.complete}
                       for s in result.levels],
            "hypothesis": prediction.hypothesis,
            "certified": certified,
        },
    }


def verdict_payload(report: TheoremReport, weights: str, modes: List[ZeroSumMode]) -> Dict[str, Any]:
    stats = dict(report.stats)
    stats["seed"] = report.seed
    return {
        "n": report.instance["n"],
        "weights": weights,
        "mode": ",".join(m.value for m in modes) if modes else None,
        "theorem": report.theorem_id,
        "parameters": {k: v for k, v in report.instance.items() if k != "n" and v is not None},
        "verdict": report.verdict.value,
        "counterexamples": _serialize_all(report.counterexamples),
        "counterexample_count": report.counterexample_count,
        "exhaustive": report.exhaustive,
        "stats": stats,
    }


def extremal_payload(family: ExtremalFamily, audit: Optional[FamilyAudit], expand: bool = False) -> Dict[str, Any]:
    if expand:
        sequences = [full for seq in family.sequences for full in expand_class(seq, family)]
        multiplicities = [1] * len(sequences)
    else:
        sequences = list(family.sequences)
        multiplicities = list(family.multiplicities)
    return {
        "n": family.modulus.n,
        "weights": family.weightset.label,
        "mode": family.mode.value,
        "value": family.constant,
        "strategy": family.strategy.value,
        "complete": family.complete,
        "class_count": family.class_count,
        "sequence_count": family.full_count,
        "sequences": _serialize_all(sequences),
        "multiplicities": multiplicities,
        "audit": audit.as_dict() if audit is not None else {},
        "stats": {"nodes": family.nodes, "expanded": expand, "audit_ok": audit.ok if audit is not None else None},
    }


def check_payload(sequence: Sequence, weightset: WeightSet, mode: ZeroSumMode,
                  check: ZeroSumCheck) -> Dict[str, Any]:
    kind = "subsequence" if mode is ZeroSumMode.D else "consecutive subsequence"
    witness = None
    if check.witness is not None:
        witness = {"indices": list(check.witness.indices), "weights": list(check.witness.weights)}
    return {
        "n": sequence.modulus.n,
        "weights": weightset.label,
        "mode": mode.value,
        "sequence": sequence.serialize(),
        "zero_sum": check.found,
        "message": f"weighted zero-sum {kind} found" if check.found else f"no weighted zero-sum {kind}",
        "witness": witness,
        "stats": {"length": len(sequence)},
    }


def weights_payload(weightset: WeightSet) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "n": weightset.modulus.n,
        "weights": weightset.label,
        "mode": None,
        "size": weightset.size,
        "is_group": weightset.is_group,
        "members": list(weightset.elements),
        "orbit_count": None,
        "orbit_representatives": [],
        "stats": {"within_units": weightset.within_units, "contains_zero": weightset.contains_zero,
                  "phi": weightset.modulus.phi},
    }
    if weightset.is_group:
        table = orbit_table(weightset)
        payload["orbit_count"] = table.orbit_count
        payload["orbit_representatives"] = list(table.representatives)
        payload["stats"]["generators"] = list(weightset.generators)
    return payload


def explore_payload(exploration: Exploration, weights: str) -> Dict[str, Any]:
    return {
        "n": exploration.n,
        "weights": weights,
        "mode": exploration.mode.value,
        "question": exploration.question,
        "exhaustive": exploration.exhaustive,
        "results": dict(exploration.results),
        "counterexamples": _serialize_all(exploration.counterexamples),
        "counterexample_count": exploration.counterexample_count,
        "stats": {"nodes": sum(c.nodes for c in exploration.constants)},
    }
