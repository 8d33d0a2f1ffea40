"""Serialization of lab results to JSON, CSV and plain text.

JSON is canonical.  Floats are written by :func:`repr`, the shortest string
that round-trips; non-finite floats become the strings ``"inf"``, ``"-inf"``
and ``"nan"`` so the output stays strict JSON.  Matrices use the
``{"dim", "re", "im"}`` layout of :mod:`cosinelab.algebra`.
"""

import csv
import dataclasses
import io
import json
import math

import mpmath
import numpy as np

from .algebra import matrix_to_dict

SCHEMA_VERSION = 1


def to_jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
            if not np.all(np.isfinite(obj)):
                return None
            return matrix_to_dict(obj)
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(obj.real), "im": to_jsonable(obj.imag)}
    if isinstance(obj, mpmath.mpf):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def document(kind, payload, timestamp=None):
    doc = {"schema_version": SCHEMA_VERSION, "report": kind}
    if timestamp is not None:
        doc["timestamp"] = timestamp
    doc.update(to_jsonable(payload))
    return doc


def dumps_json(doc):
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def dumps_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else to_jsonable(v)
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


def dumps_text(header, rows, title=None):
    cells = [[str(h) for h in header]] + [[_text_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = [title] if title else []
    for k, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _text_cell(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


# -- fixed column orders ------------------------------------------------------

VERIFY_COLUMNS = ("module", "name", "anchor", "passed", "worst", "tolerance", "trials")
TRACE_COLUMNS = ("n", "t", "deviation", "norm_gap", "envelope", "certified_envelope",
                 "precondition_rho", "within_eta", "status", "flagged")
PROFILE_COLUMNS = ("branch", "delta", "sup")
CONVERGE_COLUMNS = ("n", "u_n", "ratio")


def verify_rows(results):
    return [tuple(getattr(r, c) for c in VERIFY_COLUMNS) for r in results]


def trace_rows(trace):
    return [tuple(getattr(s, c) for c in TRACE_COLUMNS) for s in trace.steps]


def profile_rows(report):
    return [(report.branch, d, s) for d, s in report.sup_profile]


def converge_rows(seq):
    ratios = seq.ratios
    return [(n, u, ratios[n] if n < len(ratios) else math.nan) for n, u in enumerate(seq.values)]
