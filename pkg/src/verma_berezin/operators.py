"""Band operators on the Verma module ``V_h``.

The module is realized on polynomials in ``z`` with basis ``e_n = z^n``.
A :class:`BandOperator` acts by

    e_n  ->  sum_d phi_d(n) e_{n+d}  +  sum_r C[r, n] e_r

with rational-function band coefficients ``phi_d`` and a finite table ``C``
of exact corrections.  A band is only ever read at ``n >= max(0, -d)``;
its values below that reach would land on negative indices and are inert.

The inner product is fixed by ``<e_0, e_0> = 1`` and ``L_{-1}^* = L_1``,
which gives ``<e_n, e_m> = delta_{nm} w2(n)`` with
``w2(n) = n! (2h)(2h+1)...(2h+n-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .ratfunc import RatFunc
from .scalar import ONE, ZERO, GaussianRational


class OperatorError(ValueError):
    pass


class GuardViolation(OperatorError):
    def __init__(self, degree: int, k: int, value):
        self.degree, self.k, self.value = degree, k, value
        super().__init__(
            f"band d={degree} is nonzero at n={k} (value {value}) but maps e_{k} "
            f"to the negative index {k + degree}")


class PoleInDomain(OperatorError):
    def __init__(self, degree: int, k: int):
        self.degree, self.k = degree, k
        super().__init__(f"band d={degree} has a pole at n={k} inside its domain")


class WeightMismatch(OperatorError):
    pass


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Lowest weight ``h >= 1/2``; ``hbar = 2h - 1`` and ``q_R = 1/hbar``."""

    h: Fraction

    def __init__(self, h):
        h = Fraction(h)
        if h < Fraction(1, 2):
            raise OperatorError(f"weight h={h} is below 1/2")
        object.__setattr__(self, "h", h)

    @classmethod
    def from_qr(cls, q_r) -> "Weight":
        q_r = Fraction(q_r)
        if q_r <= 0:
            raise OperatorError("q_R must be positive")
        return cls((1 / q_r + 1) / 2)

    @property
    def hbar(self) -> Fraction:
        return 2 * self.h - 1

    @property
    def q_r(self) -> Fraction:
        if self.hbar == 0:
            raise OperatorError("q_R undefined at h = 1/2 (q_R = infinity)")
        return 1 / self.hbar

    @property
    def is_limit(self) -> bool:
        return self.hbar == 0

    def w2(self, n: int) -> Fraction:
        return _w2(self.h, n)

    def w2_ratio(self, d: int) -> RatFunc:
        """``w2(n + d) / w2(n)`` as a rational function of ``n``."""
        return _w2_ratio(self.h, d)

    def __str__(self):
        return str(self.h)


@lru_cache(maxsize=None)
def _w2(h: Fraction, n: int) -> Fraction:
    if n < 0:
        raise ValueError("negative basis index")
    if n == 0:
        return Fraction(1)
    return _w2(h, n - 1) * n * (n - 1 + 2 * h)


@lru_cache(maxsize=None)
def _w2_ratio(h: Fraction, d: int) -> RatFunc:
    # w2(j)/w2(j-1) = j (j - 1 + 2h)
    step = lambda j_offset: (RatFunc.linear(1, j_offset)
                             * RatFunc.linear(1, j_offset - 1 + 2 * h))
    out = RatFunc.const(1)
    if d > 0:
        for j in range(1, d + 1):
            out = out * step(j)
    else:
        for j in range(d + 1, 1):
            out = out / step(j)
    return out


# ---------------------------------------------------------------------------

def _freeze_bands(bands: Mapping[int, RatFunc]) -> tuple:
    return tuple(sorted((int(d), RatFunc.coerce(f)) for d, f in bands.items()
                        if not RatFunc.coerce(f).is_zero()))


def _freeze_corr(corr: Mapping) -> tuple:
    out = []
    for (r, c), x in corr.items():
        x = GaussianRational.coerce(x)
        if x:
            if r < 0 or c < 0:
                raise OperatorError(f"correction index ({r}, {c}) is negative")
            out.append(((int(r), int(c)), x))
    return tuple(sorted(out))


def reach(d: int) -> int:
    """First column a band of degree ``d`` acts on."""
    return max(0, -d)


@dataclass(frozen=True)
class BandOperator:
    weight: Weight
    band_items: tuple = ()
    correction_items: tuple = ()
    _bands: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_bands", dict(self.band_items))
        for d, f in self.band_items:
            poles = f.poles(reach(d))
            if poles:
                raise PoleInDomain(d, poles[0])

    @classmethod
    def build(cls, weight: Weight, bands: Mapping = None, corrections: Mapping = None):
        return cls(weight, _freeze_bands(bands or {}), _freeze_corr(corrections or {}))

    # -- views ---------------------------------------------------------
    @property
    def bands(self) -> dict[int, RatFunc]:
        return dict(self._bands)

    @property
    def corrections(self) -> dict[tuple[int, int], GaussianRational]:
        return dict(self.correction_items)

    def band(self, d: int) -> RatFunc:
        return self._bands.get(d, RatFunc())

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.band_items]

    def is_zero(self) -> bool:
        return not self.band_items and not self.correction_items

    def is_finite_rank(self) -> bool:
        return not self.band_items

    def finite_rank_part(self) -> "BandOperator":
        return BandOperator(self.weight, (), self.correction_items)

    def band_part(self) -> "BandOperator":
        return BandOperator(self.weight, self.band_items, ())

    def entry(self, row: int, col: int) -> GaussianRational:
        """Exact monomial-basis matrix entry: coefficient of ``e_row`` in ``A e_col``."""
        d = row - col
        val = ZERO
        f = self._bands.get(d)
        if f is not None and col >= reach(d):
            val = f.eval(col)
        x = dict(self.correction_items).get((row, col))
        return val + x if x is not None else val

    # -- algebra -------------------------------------------------------
    def _check(self, other: "BandOperator"):
        if not isinstance(other, BandOperator):
            raise TypeError(f"expected BandOperator, got {type(other).__name__}")
        if other.weight != self.weight:
            raise WeightMismatch(f"weights {self.weight} and {other.weight} differ")

    def __add__(self, other):
        if not isinstance(other, BandOperator):
            return NotImplemented
        self._check(other)
        bands = dict(self._bands)
        for d, f in other.band_items:
            bands[d] = bands[d] + f if d in bands else f
        corr = dict(self.correction_items)
        for key, x in other.correction_items:
            corr[key] = corr.get(key, ZERO) + x
        return BandOperator.build(self.weight, bands, corr)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, BandOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "BandOperator":
        c = GaussianRational.coerce(c)
        if not c:
            return zero(self.weight)
        return BandOperator(
            self.weight,
            tuple((d, f * c) for d, f in self.band_items),
            tuple((k, x * c) for k, x in self.correction_items))

    def __rmul__(self, c):
        if isinstance(c, BandOperator):
            return NotImplemented
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, BandOperator):
            return compose(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __matmul__(self, other):
        return compose(self, other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = identity(self.weight)
        for _ in range(k):
            out = compose(self, out)
        return out

    def __str__(self):
        parts = [f"[{d}] {f}" for d, f in self.band_items]
        parts += [f"({r},{c}) {x}" for (r, c), x in self.correction_items]
        return "BandOperator(h=%s; %s)" % (self.weight, "; ".join(parts) or "0")


# ---------------------------------------------------------------------------
# constructors

def make_band(weight, bands: Mapping = None, corrections: Mapping = None) -> BandOperator:
    """Validated constructor for hand-written operators.

    Lowering bands must vanish wherever they would reach below ``e_0``
    (``GuardViolation``) and no denominator may vanish inside a band's
    domain (``PoleInDomain``).
    """
    if not isinstance(weight, Weight):
        weight = Weight(weight)
    frozen = _freeze_bands(bands or {})
    for d, f in frozen:
        for k in range(0, -d):
            try:
                v = f.eval(k)
            except ZeroDivisionError:
                raise GuardViolation(d, k, "pole") from None
            if v:
                raise GuardViolation(d, k, v)
    return BandOperator(weight, frozen, _freeze_corr(corrections or {}))


def zero(weight: Weight) -> BandOperator:
    return BandOperator(weight)


def identity(weight: Weight) -> BandOperator:
    return BandOperator(weight, ((0, RatFunc.const(1)),))


def projector(weight: Weight, k: int) -> BandOperator:
    if k < 0:
        raise OperatorError("projector index must be nonnegative")
    return BandOperator(weight, (), (((k, k), ONE),))


# ---------------------------------------------------------------------------
# action and composition

def apply(a: BandOperator, n: int) -> list[tuple[int, GaussianRational]]:
    """Exact image of ``e_n`` as a sorted list of ``(index, coefficient)``."""
    if n < 0:
        raise OperatorError("basis index must be nonnegative")
    out: dict[int, GaussianRational] = {}
    for d, f in a.band_items:
        if n + d >= 0:
            out[n + d] = out.get(n + d, ZERO) + f.eval(n)
    for (r, c), x in a.correction_items:
        if c == n:
            out[r] = out.get(r, ZERO) + x
    return sorted((i, v) for i, v in out.items() if v)


def compose(a: BandOperator, b: BandOperator) -> BandOperator:
    """Exact product ``a * b`` (apply ``b`` first).

    Band ``f`` of the product is ``sum_{d+e=f} phi_d(n+e) psi_e(n)``.  The
    rational expression is wrong at the finitely many columns where ``b``
    would land below ``e_0`` (there the true contribution is zero, while the
    rational function may carry a 0*pole cancellation); those columns are
    repaired with corrections.
    """
    a._check(b)
    w = a.weight
    bands: dict[int, RatFunc] = {}
    pairs: dict[int, list[tuple[int, RatFunc, RatFunc]]] = {}
    for d, phi in a.band_items:
        for e, psi in b.band_items:
            f = d + e
            term = phi.shift(e) * psi
            bands[f] = bands[f] + term if f in bands else term
            pairs.setdefault(f, []).append((e, phi, psi))

    corr: dict[tuple[int, int], GaussianRational] = {}

    def add(r, c, x):
        if x:
            corr[(r, c)] = corr.get((r, c), ZERO) + x

    for f, plist in pairs.items():
        total = bands[f]
        lowest = max((-e for e, _, _ in plist), default=0)
        for n in range(reach(f), lowest):
            true = ZERO
            for e, phi, psi in plist:
                if n + e >= 0:
                    true = true + phi.eval(n + e) * psi.eval(n)
            try:
                approx = total.eval(n)
            except ZeroDivisionError:
                raise PoleInDomain(f, n) from None
            add(n + f, n, true - approx)

    # band(a) * corrections(b)
    for (r, c), x in b.correction_items:
        for d, phi in a.band_items:
            if r + d >= 0:
                add(r + d, c, phi.eval(r) * x)
    # corrections(a) * band(b)
    for (r, m), x in a.correction_items:
        for e, psi in b.band_items:
            n = m - e
            if n >= 0:
                add(r, n, x * psi.eval(n))
    # corrections(a) * corrections(b)
    a_by_col: dict[int, list] = {}
    for (r, m), x in a.correction_items:
        a_by_col.setdefault(m, []).append((r, x))
    for (m, c), y in b.correction_items:
        for r, x in a_by_col.get(m, ()):
            add(r, c, x * y)

    return BandOperator.build(w, bands, corr)


def commutator(a: BandOperator, b: BandOperator) -> BandOperator:
    return compose(a, b) - compose(b, a)


def op_arith(a: BandOperator, b, kind: str) -> BandOperator:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "scale":
        return a.scale(b)
    if kind == "mul":
        return compose(a, b)
    if kind == "commutator":
        return commutator(a, b)
    raise ValueError(f"unknown kind {kind!r}")


def adjoint(a: BandOperator) -> BandOperator:
    """Adjoint with respect to ``<e_n, e_m> = delta_{nm} w2(n)``."""
    w = a.weight
    bands = {}
    for d, phi in a.band_items:
        # psi(m) = conj(phi(m - d)) * w2(m) / w2(m - d)
        bands[-d] = phi.conj().shift(-d) * w.w2_ratio(d).shift(-d)
    corr = {(c, r): x.conj() * (w.w2(r) / w.w2(c))
            for (r, c), x in a.correction_items}
    return BandOperator.build(w, bands, corr)


# ---------------------------------------------------------------------------
# matrices

def truncate(a: BandOperator, size: int, basis: str = "monomial"):
    """Top-left ``size x size`` block, row = output index, column = input.

    ``monomial`` returns a list of lists of exact scalars; ``orthonormal``
    returns a numpy array in the basis ``e_n / sqrt(w2(n))``.
    """
    if size < 1:
        raise OperatorError("truncation size must be positive")
    if basis == "monomial":
        mat = [[ZERO] * size for _ in range(size)]
        for (r, c), x in sparse_entries(a, size).items():
            mat[r][c] = x
        return mat
    if basis == "orthonormal":
        w = a.weight
        entries = sparse_entries(a, size)
        cplx = any(x.im for x in entries.values())
        mat = np.zeros((size, size), dtype=complex if cplx else float)
        for (r, c), x in entries.items():
            scale = math.sqrt(w.w2(r) / w.w2(c))
            mat[r, c] = (complex(x) if cplx else float(x)) * scale
        return mat
    raise ValueError(f"unknown basis {basis!r}")


def sparse_entries(a: BandOperator, size: int) -> dict[tuple[int, int], GaussianRational]:
    """Nonzero exact entries of the top-left ``size x size`` block."""
    out: dict[tuple[int, int], GaussianRational] = {}
    for d, f in a.band_items:
        for c in range(reach(d), size):
            r = c + d
            if r < size:
                v = f.eval(c)
                if v:
                    out[(r, c)] = v
    for (r, c), x in a.correction_items:
        if r < size and c < size:
            v = out.get((r, c), ZERO) + x
            if v:
                out[(r, c)] = v
            else:
                out.pop((r, c), None)
    return out


def sparse_matmul(x: dict, y: dict) -> dict:
    """Exact product of two sparse matrices given as ``{(r, c): value}``."""
    y_rows: dict[int, list] = {}
    for (k, c), v in y.items():
        y_rows.setdefault(k, []).append((c, v))
    out: dict[tuple[int, int], GaussianRational] = {}
    for (r, k), u in x.items():
        for c, v in y_rows.get(k, ()):
            out[(r, c)] = out.get((r, c), ZERO) + u * v
    return {key: v for key, v in out.items() if v}


def raising_width(a: BandOperator) -> int:
    """How far ``a`` can move an index upward."""
    width = max((d for d, _ in a.band_items), default=0)
    width = max([width] + [r - c for (r, c), _ in a.correction_items])
    return max(width, 0)


def to_csv_rows(a: BandOperator, size: int) -> list[tuple]:
    """``(row, col, re, im)`` rows of the exact monomial truncation."""
    return [(r, c, str(x.re), str(x.im))
            for (r, c), x in sorted(sparse_entries(a, size).items())]


def operators_equal(ops: Iterable[BandOperator]) -> bool:
    ops = list(ops)
    return all(o == ops[0] for o in ops[1:])
