"""
Corpus module: ingestion and normalization of certified field and algebra corpora.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from config.config import ALGEBRA_KEYS, CORPUS_KEYS, CORPUS_VERSION, FIELD_KEYS, STARTER_CORPUS_PATH
from services.numfield import NumberField, validate_field
from services.quatalg import QuaternionAlgebra, validate_algebra
from utils.verification import ArithmeticVerificationError, CorpusError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusFile:
    """Validated corpus: fields and algebras sorted by label."""

    version: str
    fields: Tuple[NumberField, ...]
    algebras: Tuple[QuaternionAlgebra, ...] = ()
    source: str = ""

    def field(self, label: str) -> NumberField:
        for candidate in self.fields:
            if candidate.label == label:
                return candidate
        raise CorpusError(f"unknown field label '{label}'", location=self.source or None)

    def algebra(self, label: str) -> QuaternionAlgebra:
        for candidate in self.algebras:
            if candidate.label == label:
                return candidate
        raise CorpusError(f"unknown algebra label '{label}'", location=self.source or None)

    def to_record(self) -> Dict[str, Any]:
        """Normalized form: sorted labels and derived index_sq, re-ingestible as is."""
        return {
            "version": self.version,
            "fields": [f.to_record() for f in self.fields],
            "algebras": [a.to_record() for a in self.algebras],
        }


def _check_keys(record: Mapping[str, Any], allowed: set, location: str, strict: bool) -> None:
    unknown = sorted(set(record) - allowed)
    if not unknown:
        return
    if strict:
        raise CorpusError(f"unknown keys {unknown}", location=location)
    logger.warning(f"{location}: ignoring unknown keys {unknown}")


def _require_list(data: Mapping[str, Any], key: str, source: str) -> List[Any]:
    value = data.get(key, [])
    if not isinstance(value, list):
        raise CorpusError(f"'{key}' must be a list", location=source)
    return value


def parse_corpus(data: Any, strict: bool = False, source: str = "<corpus>") -> CorpusFile:
    """Validate a decoded corpus document; every bad entry is reported, not only the first."""
    if not isinstance(data, dict):
        raise CorpusError("corpus must be a JSON object", location=source)
    _check_keys(data, CORPUS_KEYS, source, strict)

    version = data.get("version")
    if version is None:
        raise CorpusError("missing 'version'", location=source)
    if str(version) != CORPUS_VERSION:
        raise CorpusError(f"unsupported corpus version {version!r}, expected {CORPUS_VERSION!r}",
                          location=source)

    errors: List[str] = []
    invalid_fields = set()
    fields: Dict[str, NumberField] = {}
    for i, record in enumerate(_require_list(data, "fields", source)):
        location = f"{source}: fields[{i}]"
        if not isinstance(record, dict):
            raise CorpusError("field record must be an object", location=location)
        _check_keys(record, FIELD_KEYS, location, strict)
        label = str(record.get("label", ""))
        if label in fields or label in invalid_fields:
            raise CorpusError(f"duplicate field label '{label}'", location=location)
        try:
            fields[label] = validate_field(record)
        except ArithmeticVerificationError as e:
            invalid_fields.add(label)
            logger.error(f"{location}: {e}")
            errors.append(f"{location}: {e}")

    algebras: Dict[str, QuaternionAlgebra] = {}
    for i, record in enumerate(_require_list(data, "algebras", source)):
        location = f"{source}: algebras[{i}]"
        if not isinstance(record, dict):
            raise CorpusError("algebra record must be an object", location=location)
        _check_keys(record, ALGEBRA_KEYS, location, strict)
        label = str(record.get("label", ""))
        if not label:
            raise CorpusError("algebra record has no label", location=location)
        if label in algebras:
            raise CorpusError(f"duplicate algebra label '{label}'", location=location)
        field_label = str(record.get("field", ""))
        if field_label not in fields:
            if field_label in invalid_fields:
                errors.append(f"{location}: algebra '{label}' references invalid field '{field_label}'")
                continue
            raise CorpusError(f"algebra '{label}' references unknown field '{field_label}'",
                              location=location)
        try:
            algebras[label] = validate_algebra(
                fields[field_label], record.get("ram_inf", []), record.get("ram_f", []), label=label
            )
        except ArithmeticVerificationError as e:
            logger.error(f"{location}: {e}")
            errors.append(f"{location}: {e}")

    if errors:
        raise CorpusError(f"{len(errors)} invalid corpus entries: " + " | ".join(errors))

    logger.info(f"Ingested {len(fields)} fields and {len(algebras)} algebras from {source}")
    return CorpusFile(
        version=CORPUS_VERSION,
        fields=tuple(fields[k] for k in sorted(fields)),
        algebras=tuple(algebras[k] for k in sorted(algebras)),
        source=source,
    )


def ingest_corpus(path: Optional[Union[str, Path]] = None, strict: bool = False) -> CorpusFile:
    """Read, parse and validate a corpus file (the bundled starter corpus by default)."""
    path = Path(path) if path is not None else STARTER_CORPUS_PATH
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"corpus is not valid UTF-8: {e.reason}", location=f"{path}:byte {e.start}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CorpusError(f"invalid JSON: {e.msg}", location=f"{path}:{e.lineno}:{e.colno}")
    return parse_corpus(data, strict=strict, source=str(path))


def write_normalized(corpus: CorpusFile, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(corpus.to_record(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
