"""Lobachevskii-Berezin generators on ``V_h`` and their defining relations.

``t`` acts as ``D = d/dz`` and ``t*`` as ``F = z (xi + 2h)^-1`` with
``xi = z d/dz``; the relations are

    [t t*, t* t] = 0,      [t, t*] = q_R (1 - t t*)(1 - t* t).

Relation checks multiply the second identity through by ``hbar = 1/q_R`` so
that the same code path covers ``h = 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .defects import op_norm_bound
from .operators import (BandOperator, OperatorError, Weight, WeightMismatch,
                        adjoint, commutator, compose, identity, make_band,
                        projector)
from .ratfunc import RatFunc


def _weight(weight) -> Weight:
    return weight if isinstance(weight, Weight) else Weight(weight)


def gen_D(weight) -> BandOperator:
    w = _weight(weight)
    return make_band(w, {-1: RatFunc.var()})


def gen_F(weight) -> BandOperator:
    w = _weight(weight)
    return make_band(w, {1: 1 / RatFunc.linear(1, 2 * w.h)})


def gen_F_reversed(weight) -> BandOperator:
    """The other reading ``(xi + 2h)^-1 z``: ``e_n -> e_{n+1}/(n + 1 + 2h)``."""
    w = _weight(weight)
    return make_band(w, {1: 1 / RatFunc.linear(1, 1 + 2 * w.h)})


def gen_sl2(weight) -> tuple[BandOperator, BandOperator, BandOperator]:
    """``(L_-1, L_0, L_1) = (z, z d/dz + h, z d^2/dz^2 + 2h d/dz)``."""
    w = _weight(weight)
    n = RatFunc.var()
    l_m1 = make_band(w, {1: 1})
    l_0 = make_band(w, {0: n + w.h})
    l_1 = make_band(w, {-1: n * (n - 1 + 2 * w.h)})
    return l_m1, l_0, l_1


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def residual_witness(residual: BandOperator) -> dict:
    """First nonzero piece of a residual operator, for reporting."""
    if residual.band_items:
        d, f = residual.band_items[0]
        return {"kind": "band", "degree": d, "residual": str(f)}
    if residual.correction_items:
        (r, c), x = residual.correction_items[0]
        return {"kind": "correction", "row": r, "col": c, "residual": str(x)}
    return {}


def identity_check(name: str, lhs: BandOperator, rhs: BandOperator) -> CheckResult:
    residual = lhs - rhs
    if residual.is_zero():
        return CheckResult(name, True)
    return CheckResult(name, False, "nonzero residual", residual_witness(residual))


def check_berezin_relations(weight, d_op: BandOperator = None,
                            f_op: BandOperator = None) -> list[CheckResult]:
    """``[DF, FD] = 0`` and ``hbar [D, F] = (1 - DF)(1 - FD)`` exactly.

    ``d_op``/``f_op`` override the generators, which is how a rival
    realization is tested against the same relations.
    """
    w = _weight(weight)
    d_op = d_op if d_op is not None else gen_D(w)
    f_op = f_op if f_op is not None else gen_F(w)
    one = identity(w)
    df = compose(d_op, f_op)
    fd = compose(f_op, d_op)
    return [
        identity_check("[tt*, t*t] = 0", commutator(df, fd), one.scale(0)),
        identity_check("hbar [t, t*] = (1 - tt*)(1 - t*t)",
                       commutator(d_op, f_op).scale(w.hbar),
                       compose(one - df, one - fd)),
    ]


def check_s_form(weight) -> list[CheckResult]:
    """``[s, s*] = (1 - q_R s s*)(1 - q_R s* s)`` with ``s = q_R^{-1/2} t``.

    Only products of ``s`` with ``s*`` occur, so the square root enters as
    ``(q_R^{-1/2})^2 = hbar`` and every operator stays exact.
    """
    w = _weight(weight)
    q_r = w.q_r  # raises at h = 1/2
    d_op, f_op = gen_D(w), gen_F(w)
    one = identity(w)
    ss_star = compose(d_op, f_op).scale(w.hbar)
    s_star_s = compose(f_op, d_op).scale(w.hbar)
    bracket = commutator(d_op, f_op).scale(w.hbar)
    results = [identity_check(
        "[s, s*] = (1 - q_R ss*)(1 - q_R s*s)", bracket,
        compose(one - ss_star.scale(q_r), one - s_star_s.scale(q_r)))]
    return results + check_berezin_relations(w)


def toeplitz_limit_check(weight) -> list[CheckResult]:
    """At ``h = 1/2``: ``DF = I`` and ``FD = I - P_0`` exactly."""
    w = _weight(weight)
    if not w.is_limit:
        raise WeightMismatch(f"toeplitz limit needs h = 1/2, got {w.h}")
    d_op, f_op = gen_D(w), gen_F(w)
    one = identity(w)
    return [
        identity_check("DF = I", compose(d_op, f_op), one),
        identity_check("FD = I - P0", compose(f_op, d_op), one - projector(w, 0)),
    ]


def boundedness_report(weight, scan: int = 64) -> dict[str, float]:
    w = _weight(weight)
    d_op, f_op = gen_D(w), gen_F(w)
    ops = {"D": d_op, "F": f_op, "DF": compose(d_op, f_op), "FD": compose(f_op, d_op)}
    return {name: op_norm_bound(op, scan) for name, op in ops.items()}


def run_berezin_suite(weight) -> list[CheckResult]:
    w = _weight(weight)
    results = check_berezin_relations(w)
    wrong = check_berezin_relations(w, f_op=gen_F_reversed(w))
    fails = not all(wrong)
    results.append(CheckResult(
        "reversed ordering (xi+2h)^-1 z violates the relations", fails,
        "" if fails else "reversed ordering unexpectedly satisfies the relations",
        next((r.witness for r in wrong if not r), {})))
    if w.is_limit:
        results += toeplitz_limit_check(w)
    else:
        results += check_s_form(w)[:1]
    results.append(identity_check("adjoint(D) = F", adjoint(gen_D(w)), gen_F(w)))
    results.append(identity_check("adjoint(F) = D", adjoint(gen_F(w)), gen_D(w)))
    bounds = boundedness_report(w)
    finite = all(b < float("inf") for b in bounds.values())
    unit = bounds["D"] == 1.0 and bounds["F"] == 1.0
    results.append(CheckResult("D, F, DF, FD bounded; |D| = |F| = 1",
                               finite and unit, "" if finite and unit else str(bounds),
                               {k: v for k, v in bounds.items()}))
    return results


__all__ = [
    "CheckResult", "OperatorError", "boundedness_report", "check_berezin_relations",
    "check_s_form", "gen_D", "gen_F", "gen_F_reversed", "gen_sl2", "identity_check",
    "run_berezin_suite", "toeplitz_limit_check",
]
