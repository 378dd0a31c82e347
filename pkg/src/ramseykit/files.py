"""Coloring files, run records, and CSV batch output.

Coloring file schema (JSON):
    {"r": int >= 1, "n": int >= 0, "colorCount": int | null,
     "values": [int, ...]}            # length C(n, r), colex-rank indexed

Run payloads are serialized with sorted keys and compact separators so a
run with fixed inputs is byte-identical across repetitions, platforms,
and thread counts.  Wall time lives only in the persisted record file,
never in the payload.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

from . import __version__
from .core import Coloring
from .generators import GENERATOR_NAME

CSV_HEADER = ("command", "kind", "seed", "trial", "metric", "value", "status")


class ColoringFileError(ValueError):
    """Malformed coloring file."""


def coloring_to_dict(f: Coloring) -> dict:
    return {"r": f.r, "n": f.n, "colorCount": f.color_count,
            "values": list(f.values)}


def coloring_from_dict(data: Any) -> Coloring:
    if not isinstance(data, dict):
        raise ColoringFileError("coloring file must hold a JSON object")
    missing = {"r", "n", "values"} - set(data)
    if missing:
        raise ColoringFileError(f"missing fields: {sorted(missing)}")
    r, n = data["r"], data["n"]
    values = data["values"]
    color_count = data.get("colorCount")
    if not isinstance(r, int) or not isinstance(n, int):
        raise ColoringFileError("r and n must be integers")
    if not isinstance(values, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ColoringFileError("values must be a list of integers")
    if color_count is not None and not isinstance(color_count, int):
        raise ColoringFileError("colorCount must be an integer or null")
    try:
        return Coloring(r, n, tuple(values), color_count)
    except ValueError as exc:
        raise ColoringFileError(str(exc)) from None


def load_coloring(path: str | Path) -> Coloring:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ColoringFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ColoringFileError(f"invalid JSON in {path}: {exc}") from None
    return coloring_from_dict(data)


def save_coloring(f: Coloring, path: str | Path) -> None:
    Path(path).write_text(payload_json(coloring_to_dict(f)), encoding="utf-8")


def payload_json(doc: Any) -> str:
    """Canonical serialization: sorted keys, compact, one trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def run_payload(command: str, parameters: dict, seed: int | None,
                result: Any) -> dict:
    """The deterministic part of a run record (printed on stdout)."""
    return {
        "command": command,
        "generator": GENERATOR_NAME,
        "parameters": parameters,
        "result": result,
        "seed": seed,
        "version": __version__,
    }


def write_record(path: str | Path, payload: dict, wall_time_ms: float) -> None:
    """Persist the full run record: payload plus wall time."""
    record = dict(payload)
    record["wall_time_ms"] = wall_time_ms
    Path(path).write_text(payload_json(record), encoding="utf-8")


def write_csv(path: str | Path, rows) -> None:
    """Batch output with the fixed documented header."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([row.get(k, "") for k in CSV_HEADER])
