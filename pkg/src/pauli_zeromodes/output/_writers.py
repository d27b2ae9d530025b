"""Shared JSON/CSV writers and the output manifest for CLI commands."""
import csv
import hashlib
import json
import math
from collections.abc import Iterable, Mapping
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

UTC = timezone.utc  # datetime.UTC alias (Python 3.11+)


def to_jsonable(obj):
    """Convert results to JSON types: complex -> [re, im], non-finite floats -> strings."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real)), to_jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        if math.isnan(val):
            return "nan"
        if math.isinf(val):
            return "inf" if val > 0 else "-inf"
        return val
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path: Path, data) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(to_jsonable(data), f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")
    return path


def write_csv(path: Path, rows: Iterable[Mapping], fieldnames: list[str]) -> Path:
    """CSV with a header row, LF line endings, UTF-8."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_value(row.get(k)) for k in fieldnames})
    return path


def _csv_value(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return path


def file_sha256(path: Path) -> str:
    """Return SHA-256 hex digest of file."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(manifest_path: Path, command: str, files: list[Path]) -> None:
    """Write manifest.json listing the command's output files with their hashes.

    Paths are stored relative to the manifest's directory.
    """
    base = manifest_path.parent
    entries = []
    for fp in files:
        try:
            rel = fp.resolve().relative_to(base.resolve())
        except ValueError:
            rel = fp
        entries.append({"path": str(rel), "file_hash": file_sha256(fp)})
    data = {
        "command": command,
        "created": datetime.now(UTC).isoformat(),
        "files": entries,
    }
    write_json(manifest_path, data)
