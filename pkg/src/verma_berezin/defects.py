"""Hilbert-Schmidt membership, HS norms with certified tails, and norm bounds.

All norms are taken in the orthonormal basis ``u_n = e_n / sqrt(w2(n))``.
For a band of degree ``d`` the squared orthonormal entry in column ``n`` is
the rational function ``|phi_d(n)|^2 * w2(n+d)/w2(n)``; a band is
Hilbert-Schmidt exactly when that function decays like ``n^-2`` or faster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .operators import BandOperator, OperatorError, reach
from .ratfunc import INF, RatFunc
from .scalar import ZERO

UNBOUNDED = math.inf


class MonotonicityUndecided(OperatorError):
    """The scan horizon is too short to certify the tail of a band."""


@dataclass(frozen=True)
class BandReport:
    degree: int
    coefficient: RatFunc
    entry_sq: RatFunc
    decay_order: float
    hs: bool


@dataclass(frozen=True)
class HSNorm:
    partial_sum: float
    tail_bound: float
    N_used: int
    exact_partial: Fraction | None = None

    @property
    def upper(self) -> float:
        """Certified upper bound on the squared HS norm."""
        return self.partial_sum + self.tail_bound


@dataclass(frozen=True)
class DefectReport:
    operator: BandOperator
    bands: tuple[BandReport, ...]
    finite_rank: dict
    finite_rank_norm_sq: Fraction
    asymptotic_scalar: object
    hs: HSNorm
    verdict: bool
    offending: tuple[int, ...] = field(default=())

    @property
    def hs_norm_sq(self) -> float:
        return self.hs.upper

    @property
    def hs_norm(self) -> float:
        return math.sqrt(self.hs.upper)

    @property
    def decay_order_min(self):
        return min((b.decay_order for b in self.bands), default=INF)

    @property
    def finite_rank_norm(self) -> float:
        return math.sqrt(self.finite_rank_norm_sq)


# ---------------------------------------------------------------------------
# exact real polynomial helpers for certificates

def _real_int_poly(f_poly) -> list[Fraction]:
    return [a.re for a in f_poly]


def _shift_real(p: list[Fraction], s) -> list[Fraction]:
    """Coefficients of ``p(s + x)`` in ``x``."""
    out = [Fraction(0)] * len(p)
    for k, a in enumerate(p):
        if not a:
            continue
        pw = Fraction(1)
        # binomial expansion of (s + x)^k
        for j in range(k, -1, -1):
            out[j] += a * math.comb(k, j) * pw
            pw *= s
    return out


def _mul_real(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _nonneg_from(p: list[Fraction], start: int, strict: bool = False) -> bool:
    """Sufficient test that ``p(n) >= 0`` (``> 0`` if strict) for all ``n >= start``."""
    shifted = _shift_real(p, start)
    if any(c < 0 for c in shifted):
        return False
    return shifted[0] > 0 if strict else True


def entry_sq(a: BandOperator, d: int) -> RatFunc:
    """``|phi_d(n)|^2 w2(n+d)/w2(n)``: squared orthonormal entry of band ``d``."""
    phi = a.band(d)
    return phi * phi.conj() * a.weight.w2_ratio(d)


def _tail_certificate(g: RatFunc, start: int):
    """``(K, p)`` with ``g(n) <= K n^-p`` for all ``n >= start``, or ``None``."""
    p = g.decay_order()
    if not (g.is_real() and p >= 2):
        return None
    num = _real_int_poly(g.num)
    den = _real_int_poly(g.den)
    lead = num[-1] / den[-1]
    if lead <= 0 or not _nonneg_from(den, start, strict=True):
        return None
    n_pow = [Fraction(0)] * p + [Fraction(1)]
    np_num = _mul_real(n_pow, num)
    for rel in (Fraction(1, 10**9), Fraction(1, 10**7), Fraction(1, 10**5),
                Fraction(1, 10**3), Fraction(1, 10), Fraction(1), Fraction(10)):
        k = lead * (1 + rel)
        resid = [k * c for c in den]
        for i, c in enumerate(np_num):
            resid[i] -= c
        if _nonneg_from(resid, start):
            return k, p
    return None


def certified_tail(g: RatFunc, last: int, first: int = 0) -> float:
    """Upper bound on ``sum_{n > last, n >= first} g(n)`` for ``g >= 0``.

    Uses an integral-test majorant ``K n^-p`` once its validity is proven by
    exact coefficient signs; columns before the certified start are summed
    explicitly.  Returns ``inf`` when ``g`` is not summable.
    """
    if g.is_zero():
        return 0.0
    if g.decay_order() < 2:
        return math.inf
    begin = max(last + 1, first)
    start = max(begin, 2)
    while start < 2**40:
        cert = _tail_certificate(g, start)
        if cert is not None:
            k, p = cert
            head = 0.0
            if start > begin:
                ns = np.arange(begin, start)
                head = math.fsum(np.abs(g.eval_float(ns)).tolist())
            integral = float(k) * (start - 1) ** (1 - p) / (p - 1)
            return head + integral
        start = max(2 * start, 16)
    return math.inf


def _band_partial(g: RatFunc, lo: int, hi: int) -> float:
    if hi < lo or g.is_zero():
        return 0.0
    chunk = 1 << 16
    total = []
    for s in range(lo, hi + 1, chunk):
        ns = np.arange(s, min(hi, s + chunk - 1) + 1)
        vals = g.eval_float(ns)
        total.extend(np.abs(vals).tolist())
    return math.fsum(total)


def _corrections_adjustment(a: BandOperator) -> Fraction:
    """Exact change of the squared HS norm caused by the correction table."""
    w = a.weight
    adj = Fraction(0)
    for (r, c), x in a.correction_items:
        d = r - c
        phi = a.band(d)
        b = phi.eval(c) if (not phi.is_zero() and c >= reach(d)) else ZERO
        adj += ((b + x).abs2() - b.abs2()) * w.w2(r) / w.w2(c)
    return adj


def finite_rank_norm_sq(a: BandOperator) -> Fraction:
    w = a.weight
    return sum((x.abs2() * w.w2(r) / w.w2(c) for (r, c), x in a.correction_items),
               Fraction(0))


def hs_report(a: BandOperator, N: int = 1000) -> DefectReport:
    """Decide and measure Hilbert-Schmidt membership of ``a``.

    The partial sum runs over columns ``0..N_used`` with
    ``N_used = max(N, last correction column)``; the tail bound covers every
    later column, so ``partial(N') <= partial(N) + tail(N)`` for ``N' > N``.
    """
    if N < 2:
        raise OperatorError("N must be at least 2")
    n_used = max([N] + [c for (_, c), _ in a.correction_items])
    band_reports = []
    partial = []
    tail = 0.0
    offending = []
    for d, phi in a.band_items:
        g = entry_sq(a, d)
        order = g.decay_order()
        ok = order >= 2
        band_reports.append(BandReport(d, phi, g, order, ok))
        if not ok:
            offending.append(d)
        partial.append(_band_partial(g, reach(d), n_used))
        tail += certified_tail(g, n_used, reach(d)) if ok else math.inf
    adjust = _corrections_adjustment(a)
    exact = adjust if not a.band_items else None
    partial_sum = math.fsum(partial + [float(adjust)])
    diag = a.band(0)
    scalar = diag.limit_at_infinity() if not diag.is_zero() else ZERO
    return DefectReport(
        operator=a,
        bands=tuple(band_reports),
        finite_rank=a.corrections,
        finite_rank_norm_sq=finite_rank_norm_sq(a),
        asymptotic_scalar=scalar,
        hs=HSNorm(partial_sum, tail, n_used, exact),
        verdict=not offending,
        offending=tuple(offending),
    )


# ---------------------------------------------------------------------------

def _monotone_from(g: RatFunc, start: int) -> bool:
    diff = g.difference()
    if diff.is_zero():
        return True
    if not diff.is_real():
        return False
    num = _real_int_poly(diff.num)
    den = _real_int_poly(diff.den)
    if not _nonneg_from(den, start, strict=True):
        return False
    return _nonneg_from(num, start) or _nonneg_from([-c for c in num], start)


def band_sup(a: BandOperator, d: int, scan: int) -> float:
    """``sup_n |orthonormal entry of band d|``, or ``inf`` if it grows."""
    g = entry_sq(a, d)
    if g.decay_order() < 0:
        return UNBOUNDED
    lo = reach(d)
    if not _monotone_from(g, max(scan, lo)):
        raise MonotonicityUndecided(
            f"band {d}: |entry|^2 = {g} not certified monotone beyond n={scan}")
    limit = g.limit_at_infinity()
    best = float(limit.re)
    for n in range(lo, max(scan, lo) + 1):
        best = max(best, float(g.eval(n).re))
    return math.sqrt(best)


def op_norm_bound(a: BandOperator, scan: int = 64) -> float:
    """Upper bound on the operator norm; ``UNBOUNDED`` if a band grows."""
    if scan < 16:
        raise OperatorError("scan horizon must be at least 16")
    total = 0.0
    for d, _ in a.band_items:
        s = band_sup(a, d, scan)
        if s == UNBOUNDED:
            return UNBOUNDED
        total += s
    return total + math.sqrt(finite_rank_norm_sq(a))


def orthonormal_entry(a: BandOperator, row: int, col: int) -> complex:
    """Floating orthonormal-basis entry ``(row, col)``."""
    w = a.weight
    x = a.entry(row, col)
    return complex(x) * math.sqrt(w.w2(row) / w.w2(col))


def hs_distance_sq(a: BandOperator, reference: dict, N: int = 1000) -> float:
    """Squared HS norm of ``a - K`` for a finite table ``K``.

    ``reference`` maps ``(row, col)`` to orthonormal-basis values (complex
    or float); the tail of ``a`` is bounded as in :func:`hs_report`.
    """
    rep = hs_report(a, N)
    total = rep.hs.upper
    for (r, c), k in reference.items():
        v = orthonormal_entry(a, r, c)
        total += abs(v - k) ** 2 - abs(v) ** 2
    return max(total, 0.0)

