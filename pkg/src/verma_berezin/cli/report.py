"""JSON and CSV emission.

Exact numbers are written as ``"p/q"`` strings; floats carry 17 significant
digits; non-finite floats become ``null``.  Payloads contain no timestamps,
so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from ..defects import DefectReport
from ..operators import BandOperator, Weight, sparse_entries
from ..ratfunc import Diverges
from ..scalar import GaussianRational, exact_str, frac_str


def scalar_str(x) -> str:
    if isinstance(x, Diverges):
        return "diverges"
    return exact_str(x)


def operator_json(op: BandOperator) -> dict:
    return {
        "bands": [{"degree": d, **f.to_json()} for d, f in op.band_items],
        "corrections": [[r, c] + x.to_quad() for (r, c), x in op.correction_items],
    }


def weight_json(w: Weight) -> dict:
    return {"h": frac_str(w.h), "hbar": frac_str(w.hbar)}


def report_json(rep: DefectReport) -> dict:
    hs = rep.hs
    return {
        **weight_json(rep.operator.weight),
        "operator": operator_json(rep.operator),
        "hs": {
            "verdict": rep.verdict,
            "partial": hs.partial_sum,
            "tail_bound": hs.tail_bound,
            "N": hs.N_used,
            "exact": None if hs.exact_partial is None else frac_str(hs.exact_partial),
            "offending": list(rep.offending),
            "decay_orders": [_order(b.decay_order) for b in rep.bands],
        },
        "asymptotic_scalar": scalar_str(rep.asymptotic_scalar),
        "finite_rank_norm_sq": frac_str(rep.finite_rank_norm_sq),
    }


def _order(x):
    return None if math.isinf(x) else int(x)


def check_json(check) -> dict:
    return {"name": check.name, "passed": check.passed,
            "detail": check.detail, "witness": check.witness}


# ---------------------------------------------------------------------------

def _float_text(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if all(ch not in text for ch in ".eEn"):
        text += ".0"
    return text


def dumps(obj, indent: int = 2) -> str:
    """JSON text with floats printed at 17 significant digits."""
    return _dump(obj, 0, indent) + "\n"


def _dump(obj, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float_text(obj)
    if isinstance(obj, (Fraction, GaussianRational)):
        return json.dumps(scalar_str(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, level + 1, indent)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, str, bool, type(None))) or isinstance(v, float)
               for v in obj):
            return "[" + ", ".join(_dump(v, level + 1, indent) for v in obj) + "]"
        items = [pad + _dump(v, level + 1, indent) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def truncation_csv(op: BandOperator, size: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["row", "col", "re", "im"])
    for (r, c), x in sorted(sparse_entries(op, size).items()):
        writer.writerow([r, c, frac_str(x.re), frac_str(x.im)])
    return buf.getvalue()
