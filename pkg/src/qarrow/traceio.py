"""Trace files: JSON ``{algorithm, n, snapshots: [{label, probs}]}`` or CSV
with header ``label,p0,p1,...``.  Floats are written with 17 significant
digits so a round trip is exact at double precision.
"""
from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path

from .majorder import MajorizationError, Trace, lorenz_points


class TraceFormatError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_for(path, fmt: str | None = None) -> str:
    if fmt:
        return fmt
    return "csv" if str(path).lower().endswith(".csv") else "json"


def trace_to_json(trace: Trace) -> str:
    # json would print repr(); emit the digits ourselves to pin the precision
    snaps = ",\n".join(
        "    {\"label\": %s, \"probs\": [%s]}"
        % (json.dumps(label), ", ".join(_fmt(x) for x in p))
        for label, p in trace.snapshots
    )
    return (
        "{\n"
        f"  \"algorithm\": {json.dumps(trace.algorithm)},\n"
        f"  \"n\": {int(trace.n_qubits)},\n"
        f"  \"snapshots\": [\n{snaps}\n  ]\n"
        "}\n"
    )


def trace_to_csv(trace: Trace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label"] + [f"p{i}" for i in range(trace.dim)])
    for label, p in trace.snapshots:
        w.writerow([label] + [_fmt(x) for x in p])
    return buf.getvalue()


def _write_atomic(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def export_trace(trace: Trace, path, fmt: str | None = None) -> None:
    if len(trace) == 0:
        raise TraceFormatError("refusing to export an empty trace")
    fmt = format_for(path, fmt)
    if fmt == "json":
        text = trace_to_json(trace)
    elif fmt == "csv":
        text = trace_to_csv(trace)
    else:
        raise TraceFormatError(f"unknown format {fmt!r}")
    _write_atomic(path, text)


def _trace_from_rows(algorithm, n, rows) -> Trace:
    trace = Trace(algorithm, n)
    try:
        for label, probs in rows:
            trace.add(str(label), [float(x) for x in probs])
    except (MajorizationError, ValueError, TypeError) as exc:
        raise TraceFormatError(str(exc)) from exc
    if len(trace) == 0:
        raise TraceFormatError("trace has no snapshots")
    return trace


def trace_from_json(text: str) -> Trace:
    try:
        doc = json.loads(text)
        rows = [(s["label"], s["probs"]) for s in doc["snapshots"]]
        algorithm, n = str(doc.get("algorithm", "")), int(doc.get("n", 0))
    except (ValueError, KeyError, TypeError) as exc:
        raise TraceFormatError(f"malformed trace JSON: {exc}") from exc
    return _trace_from_rows(algorithm, n, rows)


def trace_from_csv(text: str) -> Trace:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[0] != "label":
        raise TraceFormatError("CSV trace must start with a 'label,p0,...' header")
    rows = [(r[0], r[1:]) for r in reader if r]
    return _trace_from_rows("", 0, rows)


def import_trace(path, fmt: str | None = None) -> Trace:
    text = Path(path).read_text()
    if format_for(path, fmt) == "csv":
        return trace_from_csv(text)
    return trace_from_json(text)


def lorenz_csv(trace: Trace) -> str:
    """One row per rank k, one cumulative-sum column per snapshot."""
    cols = [[c for _, c in lorenz_points(p)] for _, p in trace.snapshots]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k"] + trace.labels)
    for k in range(trace.dim):
        w.writerow([k] + [_fmt(col[k]) for col in cols])
    return buf.getvalue()


def export_lorenz(trace: Trace, path) -> None:
    _write_atomic(path, lorenz_csv(trace))
