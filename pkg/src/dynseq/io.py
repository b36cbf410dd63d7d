"""Reading and writing point files, step logs and reports."""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from .greedy import StepRecord


class MalformedInput(ValueError):
    """An input file does not follow the expected layout."""


def tool_version():
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def format_float(v):
    # repr gives the shortest string that round-trips exactly
    return repr(float(v))


def write_points_csv(path, points):
    P = np.asarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P.reshape(-1, 1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index"] + [f"x{j + 1}" for j in range(P.shape[1])])
        for i, row in enumerate(P, start=1):
            w.writerow([i] + [format_float(v) for v in row])


def read_points_csv(path):
    """Points from a CSV with header ``index,x1[,x2,...]``; a header-less file is accepted."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise MalformedInput(f"{path}: no rows")
    if rows[0][0].strip().lower() == "index":
        rows = rows[1:]
    if not rows:
        raise MalformedInput(f"{path}: no data rows")
    width = len(rows[0])
    if width < 2:
        raise MalformedInput(f"{path}: expected index plus at least one coordinate")
    try:
        data = np.array([[float(c) for c in r[1:]] for r in rows if len(r) == width])
    except ValueError as exc:
        raise MalformedInput(f"{path}: {exc}") from None
    if data.shape[0] != len(rows):
        raise MalformedInput(f"{path}: rows have differing widths")
    if not np.all(np.isfinite(data)) or np.any(data < 0) or np.any(data > 1):
        raise MalformedInput(f"{path}: coordinates must lie in [0, 1]")
    return data


def write_steps_jsonl(path, steps):
    with open(path, "w") as fh:
        for rec in steps:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")


def read_steps_jsonl(path):
    out = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                try:
                    out.append(StepRecord.from_dict(json.loads(line)))
                except (KeyError, ValueError, TypeError) as exc:
                    raise MalformedInput(f"{path}: {exc}") from None
    return out


def write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        print(text, end="")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def manifest(command, config, outputs, inputs=()):
    return {
        "command": command,
        "config": config,
        "inputs": list(inputs),
        "outputs": list(outputs),
        "version": tool_version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def write_manifest(path, command, config, outputs, inputs=()):
    """Write the manifest next to ``path`` as ``<path>.manifest.json``."""
    write_json(f"{path}.manifest.json", manifest(command, config, outputs, inputs))
