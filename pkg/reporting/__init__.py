"""Report schema, payload builders and output formats."""

from .models import (
    RunManifest, ConstantReport, VerdictReport, ExtremalReport, CheckReport, WeightsReport, ExploreReport,
    WitnessModel, REPORT_MODELS,
)
from .emitter import FORMATS, build_report, emit_report, parse_report, render_table, render_jsonl

__all__ = [
    "RunManifest",
    "ConstantReport",
    "VerdictReport",
    "ExtremalReport",
    "CheckReport",
    "WeightsReport",
    "ExploreReport",
    "WitnessModel",
    "REPORT_MODELS",
    "FORMATS",
    "build_report",
    "emit_report",
    "parse_report",
    "render_table",
    "render_jsonl",
]
