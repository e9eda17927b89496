"""
Report schema. Field declaration order is the JSON key order; every report
ends with its stats and the run manifest.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from config.settings import TOOL_VERSION


class RunManifest(BaseModel):
    command: str = Field(..., description="Command line as invoked")
    modulus: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    timings: Dict[str, float] = Field(default_factory=dict, description="Wall-clock milliseconds")
    exhaustive: bool = True
    nodes: int = 0
    tool_version: str = TOOL_VERSION
    seed: Optional[int] = None


class ConstantReport(BaseModel):
    kind: Literal["constant"] = "constant"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    value: int
    certificate: str = ""
    exhaustive: bool
    lower_bound: int
    upper_bound: Optional[int] = None
    predicted: Optional[int] = None
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


class VerdictReport(BaseModel):
    kind: Literal["verify"] = "verify"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    theorem: str
    parameters: Dict[str, int] = Field(default_factory=dict)
    verdict: str
    counterexamples: List[str] = Field(default_factory=list)
    counterexample_count: int = 0
    exhaustive: bool = True
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


class ExtremalReport(BaseModel):
    kind: Literal["extremal"] = "extremal"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    value: int
    strategy: str
    complete: bool
    class_count: int
    sequence_count: int
    sequences: List[str] = Field(default_factory=list)
    multiplicities: List[int] = Field(default_factory=list)
    audit: Dict[str, Any] = Field(default_factory=dict)
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


class WitnessModel(BaseModel):
    indices: List[int]
    weights: List[int]


class CheckReport(BaseModel):
    kind: Literal["check"] = "check"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    sequence: str
    zero_sum: bool
    message: str
    witness: Optional[WitnessModel] = None
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


class WeightsReport(BaseModel):
    kind: Literal["weights"] = "weights"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    size: int
    is_group: bool
    members: List[int] = Field(default_factory=list)
    orbit_count: Optional[int] = None
    orbit_representatives: List[int] = Field(default_factory=list)
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


class ExploreReport(BaseModel):
    kind: Literal["explore"] = "explore"
    n: int
    weights: Optional[str] = None
    mode: Optional[str] = None
    question: str
    exhaustive: bool
    results: Dict[str, Any] = Field(default_factory=dict)
    counterexamples: List[str] = Field(default_factory=list)
    counterexample_count: int = 0
    stats: Dict[str, Any] = Field(default_factory=dict)
    manifest: RunManifest


REPORT_MODELS = {
    "constant": ConstantReport,
    "verify": VerdictReport,
    "extremal": ExtremalReport,
    "check": CheckReport,
    "weights": WeightsReport,
    "explore": ExploreReport,
}
