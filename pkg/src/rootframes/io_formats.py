"""Frame and report documents.

Both documents are JSON written in a canonical layout: fixed field order,
one vector per line, and every float printed with 17 significant digits so
that a load after a save reproduces each double bit for bit.  Loading is
strict: unknown fields, wrong shapes and nonpositive weights are rejected
with the offending field or row named.

Frame document::

    {
      "format_version": 1,
      "dim": 2,
      "vectors": [
        [1.0, 0.0],
        [0.0, 1.0]
      ],
      "weights": [1.0, 1.0],          optional
      "tag": "B",                     optional
      "beta": [0.9, 0.4]              optional
    }
"""

from __future__ import annotations

import hashlib
import json
import math
import sys
from pathlib import Path
from typing import IO, Any, Union

import numpy as np

from .errors import (
    DocumentParseError,
    DocumentValidationError,
    DocumentVersionError,
    InvalidInputError,
)
from .frame_analysis import Frame

FORMAT_VERSION = 1
FRAME_FIELDS = ("format_version", "dim", "vectors", "weights", "tag", "beta")
REPORT_FIELDS = (
    "format_version",
    "subject",
    "verdicts",
    "eigen_clusters",
    "residuals",
    "failures",
    "closure",
)

PathOrStream = Union[str, Path, IO[str]]


def format_float(x: float) -> str:
    """17 significant digits, always with a decimal point or exponent."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite number {x!r} cannot be serialized")
    s = format(x, ".17g")
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def _scalar(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _is_flat(seq) -> bool:
    return all(not isinstance(x, (list, tuple, dict, np.ndarray)) for x in seq)


def dumps(obj: Any, indent: int = 0) -> str:
    """Canonical JSON: dict order preserved, flat lists on one line."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if _is_flat(obj):
            return "[" + ", ".join(_scalar(x) for x in obj) + "]"
        items = [inner + dumps(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar(obj)


def _open_read(src: PathOrStream) -> str:
    if isinstance(src, (str, Path)):
        if str(src) == "-":
            return sys.stdin.read()
        return Path(src).read_text(encoding="utf-8")
    return src.read()


def _write(text: str, dst: PathOrStream | None) -> None:
    if dst is None or (isinstance(dst, (str, Path)) and str(dst) == "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    elif isinstance(dst, (str, Path)):
        Path(dst).write_text(text, encoding="utf-8")
    else:
        dst.write(text)


def _number_list(value, where: str, length: int | None = None) -> list[float]:
    if not isinstance(value, list):
        raise DocumentValidationError(f"{where}: expected a list of numbers")
    if length is not None and len(value) != length:
        raise DocumentValidationError(f"{where}: expected {length} entries, got {len(value)}")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise DocumentValidationError(f"{where}[{i}]: expected a number, got {x!r}")
        x = float(x)
        if not math.isfinite(x):
            raise DocumentValidationError(f"{where}[{i}]: number is not finite")
        out.append(x)
    return out


def parse_frame(text: str) -> Frame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise DocumentParseError("top level must be an object")

    unknown = [k for k in doc if k not in FRAME_FIELDS]
    if unknown:
        raise DocumentValidationError(f"unknown field {unknown[0]!r}")
    if "format_version" not in doc:
        raise DocumentVersionError("missing format_version")
    if doc["format_version"] != FORMAT_VERSION or isinstance(doc["format_version"], bool):
        raise DocumentVersionError(f"unsupported format_version {doc['format_version']!r}")
    for req in ("dim", "vectors"):
        if req not in doc:
            raise DocumentValidationError(f"missing field {req!r}")

    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise DocumentValidationError(f"dim: expected a positive integer, got {dim!r}")
    rows = doc["vectors"]
    if not isinstance(rows, list) or not rows:
        raise DocumentValidationError("vectors: expected a nonempty list of rows")
    vectors = []
    for i, row in enumerate(rows):
        v = _number_list(row, f"vectors[{i}]", dim)
        if not any(x != 0.0 for x in v):
            raise DocumentValidationError(f"vectors[{i}]: zero vector")
        vectors.append(v)

    weights = None
    if doc.get("weights") is not None:
        weights = _number_list(doc["weights"], "weights", len(vectors))
        for i, w in enumerate(weights):
            if not w > 0:
                raise DocumentValidationError(f"weights[{i}]: must be positive, got {w!r}")
    tag = doc.get("tag")
    if tag is not None and not isinstance(tag, str):
        raise DocumentValidationError("tag: expected a string")
    beta = None
    if doc.get("beta") is not None:
        beta = _number_list(doc["beta"], "beta", dim)

    try:
        return Frame(np.array(vectors, dtype=float).reshape(len(vectors), dim), weights, tag=tag, beta=beta)
    except InvalidInputError as exc:
        raise DocumentValidationError(str(exc)) from exc


def load_frame(src: PathOrStream) -> Frame:
    """Read and validate a frame document from a path, ``"-"`` (stdin) or a stream."""
    return parse_frame(_open_read(src))


def frame_to_dict(F: Frame, include_unit_weights: bool = False) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "dim": F.dim,
        "vectors": F.vectors.tolist(),
    }
    if F.is_weighted or include_unit_weights:
        doc["weights"] = F.weights.tolist()
    if F.tag is not None:
        doc["tag"] = F.tag
    if F.beta is not None:
        doc["beta"] = F.beta.tolist()
    return doc


def dumps_frame(F: Frame) -> str:
    return dumps(frame_to_dict(F)) + "\n"


def save_frame(F: Frame, dst: PathOrStream | None = None) -> None:
    """Write ``F`` in canonical form (to stdout when ``dst`` is None or ``"-"``)."""
    _write(dumps_frame(F), dst)


def frame_digest(F: Frame) -> str:
    """``sha256:<hex>`` of the canonical frame document."""
    return "sha256:" + hashlib.sha256(dumps_frame(F).encode("utf-8")).hexdigest()


def build_report(
    subject: Frame,
    verdicts: dict[str, bool | None],
    eigen_clusters: list[tuple[float, int]] | None = None,
    residuals: dict[str, float] | None = None,
    failures: list[dict] | None = None,
    closure: dict | None = None,
) -> dict:
    """Assemble a report dict in canonical field order."""
    report: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "subject": frame_digest(subject),
        "verdicts": dict(verdicts),
        "eigen_clusters": [[float(lam), int(m)] for lam, m in (eigen_clusters or [])],
        "residuals": {k: float(v) for k, v in (residuals or {}).items()},
        "failures": list(failures or []),
    }
    if closure is not None:
        report["closure"] = closure
    return report


def dumps_report(report: dict) -> str:
    unknown = [k for k in report if k not in REPORT_FIELDS]
    if unknown:
        raise ValueError(f"unknown report field {unknown[0]!r}")
    ordered = {k: report[k] for k in REPORT_FIELDS if k in report}
    return dumps(ordered) + "\n"


def emit_report(report: dict, dst: PathOrStream | None = None) -> None:
    """Write a report document; output is byte-identical for identical content."""
    _write(dumps_report(report), dst)


def load_report(src: PathOrStream) -> dict:
    text = _open_read(src)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise DocumentParseError("top level must be an object")
    unknown = [k for k in doc if k not in REPORT_FIELDS]
    if unknown:
        raise DocumentValidationError(f"unknown field {unknown[0]!r}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentVersionError(f"unsupported format_version {doc.get('format_version')!r}")
    return doc


__all__ = [
    "FORMAT_VERSION",
    "build_report",
    "dumps",
    "dumps_frame",
    "dumps_report",
    "emit_report",
    "format_float",
    "frame_digest",
    "frame_to_dict",
    "load_frame",
    "load_report",
    "parse_frame",
    "save_frame",
]
