"""The q_R-conformal generators ``L_k`` and their Witt defects.

For ``k >= 0``, ``L_k = (xi + (k+1)h) d^k/dz^k``; for ``k = j > 0`` lowered,
``L_{-j} = z^j (xi + (j+1)h) / ((xi + 2h)...(xi + 2h + j - 1))`` with the
function of ``xi`` applied first.  The Witt defect

    Delta_{m,n} = [L_m, L_n] - (m - n) L_{m+n}

measures how far the family is from a true representation of the Witt
algebra.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .berezin import CheckResult, gen_D, gen_F, gen_sl2, identity_check
from .defects import DefectReport, hs_report
from .operators import (BandOperator, OperatorError, Weight, adjoint, commutator,
                        make_band)
from .ratfunc import INF, RatFunc, falling, pochhammer
from .scalar import exact_str, frac_str

DEFAULT_CAP = 16


class CapExceeded(OperatorError):
    pass


def _weight(weight) -> Weight:
    return weight if isinstance(weight, Weight) else Weight(weight)


def gen_L(k: int, weight, cap: int = DEFAULT_CAP) -> BandOperator:
    if abs(k) > cap:
        raise CapExceeded(f"|k| = {abs(k)} exceeds the generator cap {cap}")
    return _gen_L(int(k), _weight(weight))


@lru_cache(maxsize=None)
def _gen_L(k: int, w: Weight) -> BandOperator:
    h = w.h
    if k >= 0:
        coeff = RatFunc.linear(1, -k + (k + 1) * h) * falling(k)
        return make_band(w, {-k: coeff})
    j = -k
    coeff = RatFunc.linear(1, (j + 1) * h) / pochhammer(2 * h, j)
    return make_band(w, {j: coeff})


@dataclass(frozen=True)
class WittDefect:
    m: int
    n: int
    weight: Weight
    defect: BandOperator
    report: DefectReport


def witt_bracket_defect(m: int, n: int, weight, cap: int = DEFAULT_CAP) -> BandOperator:
    w = _weight(weight)
    lm, ln = gen_L(m, w, cap), gen_L(n, w, cap)
    return commutator(lm, ln) - gen_L(m + n, w, max(cap, abs(m + n))).scale(m - n)


def witt_defect(m: int, n: int, weight, N: int = 1000, cap: int = DEFAULT_CAP) -> WittDefect:
    w = _weight(weight)
    defect = witt_bracket_defect(m, n, w, cap)
    return WittDefect(m, n, w, defect, hs_report(defect, N))


def exact_identity_suite(weight) -> list[CheckResult]:
    """Exact Witt and sl(2) identities that hold at every weight."""
    w = _weight(weight)
    L = lambda k: gen_L(k, w)
    out = [
        identity_check("[L1, L-1] = 2 L0", commutator(L(1), L(-1)), L(0).scale(2)),
        identity_check("[L2, L-1] = 3 L1", commutator(L(2), L(-1)), L(1).scale(3)),
        identity_check("[L1, L2] = -L3", commutator(L(1), L(2)), L(3).scale(-1)),
    ]
    for k in range(-5, 6):
        if k:
            out.append(identity_check(f"[L0, L{k}] = {-k} L{k}",
                                      commutator(L(0), L(k)), L(k).scale(-k)))
    for k in range(1, 6):
        out.append(identity_check(f"adjoint(L{k}) = L-{k}", adjoint(L(k)), L(-k)))
    sl2 = gen_sl2(w)
    for k, op in zip((-1, 0, 1), sl2):
        out.append(identity_check(f"gen_L({k}) = sl2 formula", L(k), op))
    out.append(identity_check("adjoint(D) = F", adjoint(gen_D(w)), gen_F(w)))
    return out


def sl2_suite(weight) -> list[CheckResult]:
    w = _weight(weight)
    l_m1, l_0, l_1 = gen_sl2(w)
    return [
        identity_check("[L1, L-1] = 2 L0", commutator(l_1, l_m1), l_0.scale(2)),
        identity_check("[L0, L-1] = L-1", commutator(l_0, l_m1), l_m1),
        identity_check("[L0, L1] = -L1", commutator(l_0, l_1), l_1.scale(-1)),
        identity_check("adjoint(L1) = L-1", adjoint(l_1), l_m1),
        identity_check("adjoint(L0) = L0", adjoint(l_0), l_0),
    ]


def hs_claim(weight, span: int = 3, N: int = 200) -> list[CheckResult]:
    """Every band of every ``Delta_{m,n}`` with ``|m|, |n| <= span`` is HS."""
    w = _weight(weight)
    out = []
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            wd = witt_defect(m, n, w, N)
            bad = [b for b in wd.report.bands if not b.hs]
            witness = {}
            if bad:
                witness = {"degree": bad[0].degree, "entry_sq": str(bad[0].entry_sq),
                           "decay_order": bad[0].decay_order}
            out.append(CheckResult(f"Delta({m},{n}) is Hilbert-Schmidt", not bad,
                                   "" if not bad else "band decays too slowly", witness))
    return out


def limit_finite_rank(span: int = 3) -> list[CheckResult]:
    """At ``h = 1/2`` each ``Delta_{m,n}`` is a pure finite-rank table."""
    w = Weight(Fraction(1, 2))
    out = []
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            defect = witt_bracket_defect(m, n, w)
            out.append(CheckResult(
                f"Delta({m},{n}) finite rank at h=1/2", defect.is_finite_rank(),
                "" if defect.is_finite_rank() else "rational band survives",
                {"bands": [d for d in defect.degrees]} if not defect.is_finite_rank() else {}))
    return out


# ---------------------------------------------------------------------------
# sweeps

SWEEP_COLUMNS = ("h", "hbar", "m", "n", "hs_norm", "decay_order_min",
                 "asymptotic_scalar", "finite_rank_norm")


def format_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def defect_sweep(pairs: Sequence[tuple[int, int]], weights: Iterable, N: int = 1000) -> list[dict]:
    """One row per (h, m, n); rows ordered by h, then m, then n."""
    ws = sorted({_weight(h) for h in weights}, key=lambda w: w.h)
    rows = []
    for w in ws:
        for m, n in sorted(set(map(tuple, pairs))):
            rep = witt_defect(m, n, w, N).report
            order = rep.decay_order_min
            rows.append({
                "h": frac_str(w.h),
                "hbar": frac_str(w.hbar),
                "m": m,
                "n": n,
                "hs_norm": format_float(rep.hs_norm),
                "decay_order_min": "inf" if order == INF else str(order),
                "asymptotic_scalar": exact_str(rep.asymptotic_scalar),
                "finite_rank_norm": format_float(rep.finite_rank_norm),
            })
    return rows


def sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
