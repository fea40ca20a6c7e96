"""
Report module: result collection, number formatting and json/csv/text emission.
"""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from config.config import (
    EXIT_CHAIN_FAILURE, EXIT_OK, LINK_ASYMPTOTIC, LINK_FAILS, LINK_FLAGGED, LINK_HOLDS,
    SIGNIFICANT_DIGITS, STATUS_MARKERS,
)
from services.bounds import ChainReport

logger = logging.getLogger(__name__)

# Link operands keep full precision so every holds flag can be recomputed from the output.
_FULL_PRECISION_KEYS = {"lhs", "rhs", "slack"}


def format_number(x: Any) -> Any:
    if isinstance(x, str):
        return x
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def normalize(value: Any, full_precision: bool = False) -> Any:
    """JSON-ready copy of `value` with floats cut to the report precision."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if full_precision and math.isfinite(value):
            return value
        return format_number(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): normalize(v, str(k) in _FULL_PRECISION_KEYS) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v, full_precision) for v in value]
    if hasattr(value, "to_record"):
        return normalize(value.to_record())
    raise TypeError(f"cannot emit value of type {type(value).__name__}")


@dataclass
class Report:
    """Command echo, per-item results sorted by label, summary and exit status."""

    command: List[str]
    strict: bool = False
    items: List[Dict[str, Any]] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    error_status: Optional[int] = None
    _counts: Dict[str, int] = field(default_factory=lambda: {
        LINK_HOLDS: 0, LINK_FAILS: 0, LINK_FLAGGED: 0, LINK_ASYMPTOTIC: 0,
    })

    def add_item(self, label: str, kind: str, data: Dict[str, Any]) -> None:
        self.items.append({"label": label, "kind": kind, "data": data})

    def add_chain(self, label: str, chain: ChainReport) -> None:
        for status, n in chain.status_counts().items():
            self._counts[status] += n
        self.add_item(label, chain.name, chain.to_record())

    def fail(self, message: str, status: int) -> None:
        logger.error(message)
        self.errors.append(message)
        if self.error_status is None:
            self.error_status = status

    def sorted_items(self) -> List[Dict[str, Any]]:
        return sorted(self.items, key=lambda item: (item["label"], item["kind"]))

    @property
    def exit_status(self) -> int:
        if self.error_status is not None:
            return self.error_status
        if self.strict and (self._counts[LINK_FAILS] or self._counts[LINK_FLAGGED]):
            return EXIT_CHAIN_FAILURE
        return EXIT_OK

    def summary(self) -> Dict[str, Any]:
        return {"items": len(self.items), **self._counts, "errors": len(self.errors)}

    def to_record(self) -> Dict[str, Any]:
        return normalize({
            "command": list(self.command),
            "results": self.sorted_items(),
            "summary": self.summary(),
            "errors": list(self.errors),
            "exit_status": self.exit_status,
        })


# -- emission ----------------------------------------------------------------

def _flatten(value: Any, prefix: str = "") -> Iterator[Tuple[str, Any]]:
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, value


def emit_json(report: Report) -> str:
    return json.dumps(report.to_record(), indent=2, ensure_ascii=False) + "\n"


def emit_csv(report: Report) -> str:
    record = report.to_record()
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["label", "kind", "key", "value"])
    for item in record["results"]:
        for key, value in _flatten(item["data"]):
            writer.writerow([item["label"], item["kind"], key, json.dumps(value, ensure_ascii=False)])
    for key, value in record["summary"].items():
        writer.writerow(["", "summary", key, value])
    for message in record["errors"]:
        writer.writerow(["", "error", "", message])
    return buffer.getvalue()


def _text_links(chain: Dict[str, Any]) -> List[str]:
    lines = []
    for link in chain["links"]:
        marker = STATUS_MARKERS[link["status"]]
        line = (f"  {marker} {link['name']}: {format_number(link['lhs'])} "
                f"{link['relation']} {format_number(link['rhs'])}")
        if link["note"]:
            line += f"  ({link['note']})"
        lines.append(line)
    for note in chain["notes"]:
        lines.append(f"  📝 {note}")
    verdict = "✅ verdict: all links hold" if chain["verdict"] else "❌ verdict: not every link holds"
    lines.append(f"  {verdict}")
    return lines


def emit_text(report: Report) -> str:
    record = report.to_record()
    lines = [f"🧮 {' '.join(record['command'])}", ""]
    for item in record["results"]:
        lines.append(f"📌 {item['label']} [{item['kind']}]")
        data = item["data"]
        if isinstance(data, dict) and "links" in data:
            lines.extend(_text_links(data))
        else:
            for key, value in _flatten(data):
                lines.append(f"  {key}: {value}")
        lines.append("")
    summary = record["summary"]
    lines.append(
        f"📊 {summary['items']} items: {summary[LINK_HOLDS]} hold, {summary[LINK_FAILS]} fail, "
        f"{summary[LINK_FLAGGED]} flagged, {summary[LINK_ASYMPTOTIC]} asymptotic"
    )
    for message in record["errors"]:
        lines.append(f"❌ {message}")
    lines.append(f"exit status {record['exit_status']}")
    return "\n".join(lines) + "\n"


EMITTERS = {"json": emit_json, "csv": emit_csv, "text": emit_text}


def emit(report: Report, output_format: str) -> str:
    if output_format not in EMITTERS:
        raise ValueError(f"unknown output format {output_format!r}")
    return EMITTERS[output_format](report)
