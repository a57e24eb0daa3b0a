"""Deterministic CSV/JSON table output and run manifests."""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

FLOAT_FORMAT = "{:.12g}"


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT.format(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        # round through the CSV format so both outputs carry the same digits
        return float(FLOAT_FORMAT.format(float(value)))
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def write_table(path, header, rows, fmt_name="csv"):
    """Write rows as CSV (``\\n`` line endings) or as a JSON list of records.

    Returns the path actually written (extension follows the format).
    """
    path = Path(path)
    if fmt_name == "json":
        path = path.with_suffix(".json")
        records = [dict(zip(header, map(_json_value, row))) for row in rows]
        path.write_text(json.dumps(records, indent=1) + "\n", encoding="utf-8")
        return path
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(output_dir, command, model_path, parameters, files, tool_version):
    output_dir = Path(output_dir)
    manifest = {
        "command": command,
        "model_path": str(model_path),
        "output_dir": str(output_dir),
        "parameters": parameters,
        "tool_version": tool_version,
        "files": {Path(f).name: sha256(f) for f in sorted(files, key=lambda p: Path(p).name)},
    }
    path = output_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
