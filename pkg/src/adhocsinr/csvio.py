"""CSV and JSON-sidecar output helpers.

CSV files carry a header row, '.' decimals, LF line endings and a fixed
float format, so identical data produces byte-identical files. The JSON
sidecar records the generating command, the full configuration with a
hash, the git revision when available, and wall time.
"""

from __future__ import annotations

import hashlib
import json
import subprocess
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = ["write_csv", "write_sidecar", "read_csv_columns", "config_hash"]

_FLOAT_FMT = "{:.12g}"


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return _FLOAT_FMT.format(float(x))
    return str(x)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv_columns(path) -> dict:
    """Read a numeric CSV written by write_csv into {column: array}."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(header)}


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _git_revision() -> str | None:
    try:
        out = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            capture_output=True, text=True, timeout=5, check=False,
        )
    except OSError:
        return None
    rev = out.stdout.strip()
    return rev if out.returncode == 0 and rev else None


def write_sidecar(csv_path, command: str, config: dict, summary: dict, wall_time_s: float) -> None:
    sidecar = Path(csv_path).with_suffix(".json")
    payload = {
        "command": command,
        "config": config,
        "config_hash": config_hash(config),
        "git_revision": _git_revision(),
        "summary": summary,
        "wall_time_s": round(wall_time_s, 3),
    }
    with open(sidecar, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
