"""Verification suites run by ``verify``."""

from __future__ import annotations

from fractions import Fraction

from ..berezin import CheckResult, gen_D, gen_F, identity_check, run_berezin_suite
from ..conformal import (exact_identity_suite, gen_L, hs_claim, limit_finite_rank,
                         sl2_suite, witt_bracket_defect)
from ..operators import Weight, adjoint, commutator, compose, identity, make_band, projector
from ..quantize import (Symbol, VField, derivation_defect_operator, op_quantize,
                        product_defect, product_defect_operator)
from ..ratfunc import RatFunc
from ..scalar import GaussianRational
from .report import operator_json

SUITES = ("berezin", "sl2", "witt", "quantize")


def witt_suite(w: Weight) -> list[CheckResult]:
    out = exact_identity_suite(w)
    for m, n in ((2, -1), (3, -2), (2, -3), (3, 1)):
        out.append(identity_check(f"Delta({m},{n}) = -Delta({n},{m})",
                                  witt_bracket_defect(m, n, w),
                                  witt_bracket_defect(n, m, w).scale(-1)))
    out += hs_claim(w)
    if w.is_limit:
        out += limit_finite_rank()
        delta = witt_bracket_defect(2, -2, w)
        target = (projector(w, 0) + projector(w, 1)).scale(Fraction(1, 4))
        check = identity_check("Delta(2,-2) = (P0 + P1)/4", delta, target)
        check.witness = {"corrections": operator_json(delta)["corrections"]}
        out.append(check)
    return out


_F1 = Symbol({1: 1, -1: 2, 3: Fraction(-1, 3)})
_G1 = Symbol({-2: 1, 1: GaussianRational(0, 1)})


def quantize_suite(w: Weight) -> list[CheckResult]:
    z, zi = Symbol.monomial(1), Symbol.monomial(-1)
    d_op, f_op, one = gen_D(w), gen_F(w), identity(w)
    out = [
        identity_check("Op(z) = F", op_quantize(z, w), f_op),
        identity_check("Op(1/z) = D", op_quantize(zi, w), d_op),
        identity_check("[L-1, F] = F^2", commutator(gen_L(-1, w), f_op), compose(f_op, f_op)),
        identity_check("[L1, F] = I", commutator(gen_L(1, w), f_op), one),
        identity_check("[L1, D] = -D^2", commutator(gen_L(1, w), d_op),
                       compose(d_op, d_op).scale(-1)),
        identity_check("[L-1, D] = -I", commutator(gen_L(-1, w), d_op), one.scale(-1)),
    ]
    for k, (label, f) in ((1, ("z", z)), (1, ("1/z", zi)), (-1, ("z", z)), (-1, ("1/z", zi))):
        defect = derivation_defect_operator(VField.basis(k), f, w)
        out.append(identity_check(f"derivation defect (l{k}, {label}) = 0", defect, one.scale(0)))
    closed = make_band(w, {0: RatFunc.const(1 - 2 * w.h) / RatFunc.linear(1, 2 * w.h)})
    out.append(identity_check("Op(1/z)Op(z) - I = diag((1-2h)/(n+2h))",
                              product_defect_operator(zi, z, w), closed))
    f = Symbol({1: 1, -2: Fraction(1, 2)})
    out.append(identity_check("Op(conj f) = adjoint(Op f)",
                              op_quantize(f.conj(), w), adjoint(op_quantize(f, w))))
    if w.is_limit:
        out.append(identity_check("Op(z)Op(1/z) - I = -P0",
                                  product_defect_operator(z, zi, w), projector(w, 0).scale(-1)))
        defect = product_defect_operator(_F1, _G1, w)
        out.append(CheckResult("product defect is finite rank at h=1/2",
                               defect.is_finite_rank(), "",
                               {"bands": defect.degrees}))
    else:
        rep = product_defect(_F1, _G1, w, N=200)
        out.append(CheckResult("product defect bands are Hilbert-Schmidt", rep.verdict,
                               "", {"offending": list(rep.offending)}))
    return out


def run_suite(name: str, w: Weight) -> list[CheckResult]:
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, w)]
    if name == "berezin":
        return run_berezin_suite(w)
    if name == "sl2":
        return sl2_suite(w)
    if name == "witt":
        return witt_suite(w)
    if name == "quantize":
        return quantize_suite(w)
    raise ValueError(f"unknown suite {name!r}")
