import json
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel

from reporting.models import REPORT_MODELS, RunManifest
from utils.errors import UsageError
from utils.logger import get_logger

logger = get_logger(__name__)

FORMATS = ("json", "table", "jsonl")


def build_report(kind: str, payload: Dict[str, Any], manifest: RunManifest) -> BaseModel:
    """Report model from a cached or freshly computed payload"""
    model = REPORT_MODELS[kind]
    return model(**payload, manifest=manifest)


def parse_report(text: str) -> BaseModel:
    data = json.loads(text)
    model = REPORT_MODELS.get(data.get("kind"))
    if model is None:
        raise UsageError(f"unknown report kind {data.get('kind')!r}")
    return model.model_validate(data)


def _flatten(data: Dict[str, Any], prefix: str = "") -> List[Tuple[str, str]]:
    rows = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            rows.extend(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            if all(isinstance(v, (str, int)) for v in value):
                rows.append((name, "; ".join(str(v) for v in value) if value else "[]"))
            else:
                rows.append((name, json.dumps(value, sort_keys=True)))
        elif value is None:
            rows.append((name, "-"))
        else:
            rows.append((name, str(value).lower() if isinstance(value, bool) else str(value)))
    return rows


def render_table(report: BaseModel) -> str:
    """Aligned two-column listing; nested fields use dotted keys"""
    rows = _flatten(report.model_dump(mode="json"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)


def render_jsonl(report: BaseModel) -> str:
    """Summary line without the sequence list, then one line per sequence"""
    if "sequences" not in type(report).model_fields:
        return report.model_dump_json()
    lines = [report.model_dump_json(exclude={"sequences", "multiplicities"})]
    multiplicities = getattr(report, "multiplicities", [])
    for i, sequence in enumerate(report.sequences):
        record = {"sequence": sequence}
        if i < len(multiplicities):
            record["multiplicity"] = multiplicities[i]
        lines.append(json.dumps(record))
    return "\n".join(lines)


def emit_report(report: BaseModel, fmt: str = "json") -> str:
    if fmt not in FORMATS:
        logger.error(f"Unknown output format: {fmt}")
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    if fmt == "json":
        return report.model_dump_json()
    if fmt == "table":
        return render_table(report)
    return render_jsonl(report)
