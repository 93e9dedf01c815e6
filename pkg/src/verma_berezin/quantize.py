"""Quantization of Laurent symbols on the circle into the Berezin algebra.

A symbol ``f = sum c_k z^k`` is sent to ``Op(f) = sum_{k>=0} c_k F^k +
sum_{k<0} c_k D^{-k}``, so ``z -> t* = F`` and ``1/z -> t = D``.  Vector
fields ``sum a_k l_k`` with ``l_k = z^{1-k} d/dz`` act through the
conformal generators ``L_k``.  Two defects measure how far this is from an
honest homomorphism:

* product defect ``Op(f) Op(g) - Op(fg)``,
* derivation defect ``[L_v, Op(f)] - Op(l_v f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .berezin import gen_D, gen_F
from .conformal import DEFAULT_CAP, CapExceeded, gen_L
from .defects import DefectReport, hs_distance_sq, hs_report
from .operators import BandOperator, OperatorError, Weight, compose, identity, zero
from .scalar import ZERO, GaussianRational


def _clean(coeffs: Mapping) -> dict[int, GaussianRational]:
    out = {}
    for k, c in coeffs.items():
        c = GaussianRational.coerce(c)
        if c:
            out[int(k)] = c
    return out


class _Laurent:
    """Finitely supported map ``k -> coefficient`` with zero entries pruned."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping = None):
        object.__setattr__(self, "coeffs", _clean(coeffs or {}))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        return type(self) is type(other) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.items())))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = GaussianRational.coerce(c)
        return type(self)({k: v * c for k, v in self.coeffs.items()})

    def to_json(self) -> list:
        return [[k] + c.to_quad() for k, c in self.items()]

    @classmethod
    def from_json(cls, data: Sequence):
        out: dict[int, GaussianRational] = {}
        for entry in data:
            if len(entry) == 2:
                k, c = entry
                c = GaussianRational.parse(str(c))
            elif len(entry) == 5:
                k, c = entry[0], GaussianRational.from_quad(entry[1:])
            else:
                raise ValueError(f"malformed coefficient entry {entry!r}")
            out[int(k)] = out.get(int(k), ZERO) + c
        return cls(out)


class Symbol(_Laurent):
    """Laurent polynomial ``sum c_k z^k`` on the unit circle."""

    @classmethod
    def monomial(cls, k: int, c=1) -> "Symbol":
        return cls({k: c})

    def __mul__(self, other):
        if not isinstance(other, Symbol):
            return self.scale(other)
        out: dict[int, GaussianRational] = {}
        for j, a in self.coeffs.items():
            for k, b in other.coeffs.items():
                out[j + k] = out.get(j + k, ZERO) + a * b
        return Symbol(out)

    __rmul__ = __mul__

    def conj(self) -> "Symbol":
        """Complex conjugate on ``|z| = 1``, where ``conj(z) = 1/z``."""
        return Symbol({-k: c.conj() for k, c in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})z^{k}" for k, c in self.items())


class VField(_Laurent):
    """Vector field ``sum a_k l_k`` with ``l_k = z^{1-k} d/dz``."""

    @classmethod
    def basis(cls, k: int, a=1) -> "VField":
        return cls({k: a})

    def act(self, f: Symbol) -> Symbol:
        """``l_k z^m = m z^{m-k}``."""
        out: dict[int, GaussianRational] = {}
        for k, a in self.coeffs.items():
            for m, c in f.coeffs.items():
                if m:
                    out[m - k] = out.get(m - k, ZERO) + a * c * m
        return Symbol(out)

    def bracket(self, other: "VField") -> "VField":
        """Witt bracket ``[l_m, l_n] = (m - n) l_{m+n}``."""
        out: dict[int, GaussianRational] = {}
        for m, a in self.coeffs.items():
            for n, b in other.coeffs.items():
                if m != n:
                    out[m + n] = out.get(m + n, ZERO) + a * b * (m - n)
        return VField(out)


# ---------------------------------------------------------------------------

def _weight(weight) -> Weight:
    return weight if isinstance(weight, Weight) else Weight(weight)


@lru_cache(maxsize=None)
def _power(w: Weight, k: int) -> BandOperator:
    if k == 0:
        return identity(w)
    base = gen_F(w) if k > 0 else gen_D(w)
    step = 1 if k > 0 else -1
    return compose(base, _power(w, k - step))


def op_quantize(f: Symbol, weight) -> BandOperator:
    w = _weight(weight)
    out = zero(w)
    for k, c in f.items():
        out = out + _power(w, k).scale(c)
    return out


def product_defect_operator(f: Symbol, g: Symbol, weight) -> BandOperator:
    w = _weight(weight)
    return compose(op_quantize(f, w), op_quantize(g, w)) - op_quantize(f * g, w)


def product_defect(f: Symbol, g: Symbol, weight, N: int = 1000) -> DefectReport:
    return hs_report(product_defect_operator(f, g, weight), N)


def lift_vfield(v: VField, weight, cap: int = DEFAULT_CAP) -> BandOperator:
    w = _weight(weight)
    out = zero(w)
    for k, a in v.items():
        out = out + gen_L(k, w, cap).scale(a)
    return out


def derivation_defect_operator(v: VField, f: Symbol, weight,
                               cap: int = DEFAULT_CAP) -> BandOperator:
    w = _weight(weight)
    lv = lift_vfield(v, w, cap)
    op_f = op_quantize(f, w)
    return compose(lv, op_f) - compose(op_f, lv) - op_quantize(v.act(f), w)


def derivation_defect(v: VField, f: Symbol, weight, N: int = 1000,
                      cap: int = DEFAULT_CAP) -> DefectReport:
    return hs_report(derivation_defect_operator(v, f, weight, cap), N)


# ---------------------------------------------------------------------------
# hbar scaling

HALF = Fraction(1, 2)


def limit_table(defect_at: Callable[[Weight], BandOperator]) -> dict:
    """Orthonormal entries of the finite-rank table of a probe at ``h = 1/2``.

    At the limit point the quantization is exact modulo finite rank; this
    table is the hbar-independent index part excluded from scaling norms.
    """
    w = Weight(HALF)
    limit = defect_at(w)
    return {(r, c): complex(x) * math.sqrt(w.w2(r) / w.w2(c))
            for (r, c), x in limit.correction_items}


def regular_norm(defect_at: Callable[[Weight], BandOperator], weight, N: int = 1000,
                 table: dict = None) -> float:
    """HS norm of a probe's defect with its limiting finite-rank part removed."""
    w = _weight(weight)
    table = limit_table(defect_at) if table is None else table
    return math.sqrt(hs_distance_sq(defect_at(w), table, N))


@dataclass(frozen=True)
class ScalingResult:
    rows: tuple[tuple[Fraction, float], ...]
    slope: float | None
    exact_zero: bool
    note: str = ""


def probe_function(kind: str, args: Sequence) -> Callable[[Weight], BandOperator]:
    if kind == "product":
        f, g = args
        return lambda w: product_defect_operator(f, g, w)
    if kind == "derivation":
        v, f = args
        return lambda w: derivation_defect_operator(v, f, w)
    raise ValueError(f"unknown probe {kind!r}")


def hbar_scaling(probe: str, args: Sequence, weights: Sequence, N: int = 20000) -> ScalingResult:
    """Least-squares slope of ``log |defect|_HS`` against ``log hbar``."""
    ws = [_weight(h) for h in weights]
    if len(ws) < 4:
        raise OperatorError("hbar scaling needs at least 4 weights")
    if any(w.is_limit for w in ws):
        raise OperatorError("hbar scaling needs h > 1/2 at every sample")
    defect_at = probe_function(probe, args)
    table = limit_table(defect_at)
    if all(defect_at(w).is_zero() for w in ws) and not table:
        rows = tuple((w.hbar, 0.0) for w in ws)
        return ScalingResult(rows, None, True, "defect vanishes identically")
    rows = tuple((w.hbar, regular_norm(defect_at, w, N, table)) for w in ws)
    norms = np.array([r[1] for r in rows])
    if np.all(norms == 0):
        return ScalingResult(rows, None, True, "regular part vanishes identically")
    if np.any(norms == 0):
        return ScalingResult(rows, None, False, "some samples vanish; log-log fit undefined")
    x = np.log([float(hb) for hb, _ in rows])
    slope = float(np.polyfit(x, np.log(norms), 1)[0])
    return ScalingResult(rows, slope, False)


__all__ = [
    "CapExceeded", "ScalingResult", "Symbol", "VField", "derivation_defect",
    "derivation_defect_operator", "hbar_scaling", "lift_vfield", "limit_table",
    "op_quantize", "product_defect", "product_defect_operator", "regular_norm",
]
