"""Report envelopes, JSON serialization and CSV emission."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import is_dataclass, asdict
from datetime import datetime, timezone
from importlib import resources

import numpy as np

SCHEMA_VERSION = "1.0"
LIBRARY_VERSION = "0.1.0"
CSV_HEADER = ("x", "y", "value")


def clean(obj):
    """Convert to plain JSON types; non-finite floats become ``None``."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return clean(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def summary(value) -> str | None:
    """Six significant digits for human eyes; the payload keeps full precision."""
    if value is None or not math.isfinite(float(value)):
        return None
    return f"{float(value):.6g}"


def envelope(command: str, config: dict, result, paper_comparison=None, timing=None) -> dict:
    cfg = dict(config)
    cfg["library_version"] = LIBRARY_VERSION
    t = {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    t.update(timing or {})
    return clean({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg,
        "result": result,
        "paper_comparison": paper_comparison,
        "timing": t,
    })


def dumps(env: dict) -> str:
    # float repr is the shortest string that round-trips, so no digits are lost
    return json.dumps(env, indent=2, allow_nan=False) + "\n"


def payload_without_timing(text: str) -> str:
    """Canonical form of a report for byte-level reproducibility checks."""
    env = json.loads(text)
    env.pop("timing", None)
    return json.dumps(env, indent=2, allow_nan=False)


def load_schema() -> dict:
    return json.loads(resources.files("ljcert").joinpath("report.schema.json").read_text())


def csv_text(rows) -> str:
    """CSV with header ``x,y,value``, LF line endings and ``.`` decimals."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for x, y, v in rows:
        w.writerow([repr(float(x)), repr(float(y)), repr(float(v))])
    return buf.getvalue()
