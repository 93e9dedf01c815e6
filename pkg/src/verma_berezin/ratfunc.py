"""Rational functions of one integer-valued variable ``n`` over Q(i).

Polynomials are dense tuples of :class:`GaussianRational`, lowest degree
first, with no trailing zeros (the zero polynomial is ``()``).  A
:class:`RatFunc` is kept in canonical form: ``gcd(num, den) = 1``, ``den``
monic, zero stored as ``0/1``.  Equality is therefore structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .scalar import ONE, ZERO, GaussianRational

Poly = tuple  # tuple[GaussianRational, ...]

INF = math.inf


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class Diverges:
    """Sentinel returned by :func:`rf_limit_at_infinity` for growing functions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGES"

    __str__ = __repr__


DIVERGES = Diverges()


# ---------------------------------------------------------------------------
# dense polynomial helpers

def _trim(coeffs: Iterable) -> Poly:
    c = [GaussianRational.coerce(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, b in enumerate(q):
        out[i] = out[i] + b
    return _trim(out)


def pneg(p: Poly) -> Poly:
    return tuple(-a for a in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pneg(q))


def pscale(p: Poly, c) -> Poly:
    c = GaussianRational.coerce(c)
    if not c:
        return ()
    return tuple(a * c for a in p)


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead_inv = ONE / q[-1]
    quot = [ZERO] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = rem[k + dq] * lead_inv
        quot[k] = c
        if c:
            for j in range(dq + 1):
                rem[k + j] = rem[k + j] - c * q[j]
    return _trim(quot), _trim(rem[:dq])


def pmonic(p: Poly) -> Poly:
    if not p or p[-1] == ONE:
        return p
    inv = ONE / p[-1]
    return tuple(a * inv for a in p)


def pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pmonic(p)


def peval(p: Poly, x) -> GaussianRational:
    acc = ZERO
    for a in reversed(p):
        acc = acc * x + a
    return acc


@lru_cache(maxsize=None)
def _binomials(k: int) -> tuple[int, ...]:
    return tuple(math.comb(k, j) for j in range(k + 1))


def pshift(p: Poly, s: int) -> Poly:
    """Coefficients of ``p(n + s)``."""
    if not s or len(p) <= 1:
        return p
    out = [ZERO] * len(p)
    s = Fraction(s)
    for k, a in enumerate(p):
        if not a:
            continue
        binom = _binomials(k)
        for j in range(k + 1):
            out[j] = out[j] + a * (binom[j] * s ** (k - j))
    return _trim(out)


def pconj(p: Poly) -> Poly:
    return tuple(a.conj() for a in p)


def _integer_form(p: Poly) -> list[int] | None:
    """An integer polynomial whose integer roots contain those of ``p``."""
    for part in ("re", "im"):
        coeffs = [getattr(a, part) for a in p]
        if any(coeffs):
            lcm = reduce(math.lcm, (c.denominator for c in coeffs), 1)
            ints = [int(c * lcm) for c in coeffs]
            while not ints[-1]:
                ints.pop()
            return ints
    return None


@lru_cache(maxsize=4096)
def integer_roots(p: Poly, lo: int = 0) -> tuple[int, ...]:
    """All integer roots ``k >= lo`` of ``p`` (exact)."""
    if not p:
        raise ValueError("zero polynomial has every integer as a root")
    ints = _integer_form(p)
    roots = []
    shift = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        shift += 1
    if shift and 0 >= lo and not peval(p, 0):
        roots.append(0)
    deg = len(ints) - 1
    if deg < 1:
        return tuple(roots)
    # Fujiwara bound on |root|
    lead = abs(ints[-1])
    exps = []
    for i in range(1, deg + 1):
        a = abs(ints[deg - i])
        if a:
            if i == deg:
                a = Fraction(a, 2)
            exps.append((math.log(a) - math.log(lead)) / i)
    bound = 2 * math.exp(max(exps)) * (1 + 1e-9) + 2 if exps else 2
    c0 = ints[0]
    for k in range(max(lo, -int(bound) - 1), int(bound) + 1):
        if k == 0 or c0 % k:
            continue
        acc = 0
        for a in reversed(ints):
            acc = acc * k + a
        if acc == 0 and not peval(p, k):
            roots.append(k)
    return tuple(sorted(roots))


def _as_poly(x) -> Poly:
    if isinstance(x, tuple):
        return x
    if isinstance(x, (list,)):
        return _trim(x)
    return _trim([x])


# ---------------------------------------------------------------------------

class RatFunc:
    """Canonical rational function ``num(n)/den(n)``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence = (), den: Sequence = (ONE,), *, _canonical=False):
        num = _as_poly(num) if not _canonical else num
        den = _as_poly(den) if not _canonical else den
        if not _canonical:
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                num, den = (), (ONE,)
            else:
                g = pgcd(num, den)
                if len(g) > 1:
                    num = pdivmod(num, g)[0]
                    den = pdivmod(den, g)[0]
                lead = den[-1]
                if lead != ONE:
                    num = pscale(num, ONE / lead)
                    den = pmonic(den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- constructors --------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFunc":
        c = GaussianRational.coerce(c)
        return cls((c,) if c else (), (ONE,), _canonical=True)

    @classmethod
    def var(cls) -> "RatFunc":
        return cls((ZERO, ONE), (ONE,), _canonical=True)

    @classmethod
    def linear(cls, slope, offset) -> "RatFunc":
        """``slope*n + offset``."""
        return cls(_trim([offset, slope]), (ONE,), _canonical=True)

    @classmethod
    def poly(cls, coeffs: Iterable) -> "RatFunc":
        return cls(_trim(coeffs), (ONE,), _canonical=True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls.const(x)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def is_real(self) -> bool:
        return all(a.is_real() for a in self.num) and all(a.is_real() for a in self.den)

    def decay_order(self):
        if not self.num:
            return INF
        return self.den_degree - self.num_degree

    def limit_at_infinity(self):
        order = self.decay_order()
        if order == INF or order > 0:
            return ZERO
        if order < 0:
            return DIVERGES
        return self.num[-1] / self.den[-1]

    def poles(self, lo: int = 0) -> tuple[int, ...]:
        """Integer roots ``k >= lo`` of the denominator."""
        if len(self.den) == 1:
            return ()
        return integer_roots(self.den, lo)

    def zeros(self, lo: int = 0) -> tuple[int, ...]:
        if not self.num:
            raise ValueError("zero function vanishes everywhere")
        if len(self.num) == 1:
            return ()
        return integer_roots(self.num, lo)

    # -- evaluation ----------------------------------------------------
    def __call__(self, k) -> GaussianRational:
        return self.eval(k)

    def eval(self, k) -> GaussianRational:
        d = peval(self.den, k)
        if not d:
            raise PoleError(f"pole of {self} at n={k}")
        if not self.num:
            return ZERO
        return peval(self.num, k) / d

    def eval_float(self, ns) -> np.ndarray:
        """Vectorized floating evaluation at nonnegative integers.

        For ``n >= 1`` both polynomials are evaluated in the reversed
        variable ``1/n`` so that high degrees do not overflow.
        """
        ns = np.asarray(ns, dtype=float)
        num = _float_coeffs(self.num)
        den = _float_coeffs(self.den)
        out = np.empty(ns.shape, dtype=complex if _is_complex(num, den) else float)
        if not self.num:
            out[...] = 0
            return out
        big = ns >= 1
        small = ~big
        if small.any():
            out[small] = np.polyval(num[::-1], ns[small]) / np.polyval(den[::-1], ns[small])
        if big.any():
            t = 1.0 / ns[big]
            p = np.polyval(num, t)  # coefficients ascending == reversed Horner in t
            q = np.polyval(den, t)
            shift = self.num_degree - self.den_degree
            out[big] = p / q * ns[big] ** shift
        return out

    # -- algebra -------------------------------------------------------
    def __add__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num), self.den)
        if len(o.den) == 1 and len(self.den) >= 1:
            return RatFunc(padd(self.num, pmul(o.num, self.den)), self.den)
        if len(self.den) == 1:
            return RatFunc(padd(pmul(self.num, o.den), o.num), o.den)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                       pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return RatFunc()
            return RatFunc(pscale(self.num, c), self.den, _canonical=True)
        if not self.num or not other.num:
            return RatFunc()
        # cross-cancel before multiplying to keep gcds small
        g1 = pgcd(self.num, other.den) if len(other.den) > 1 else (ONE,)
        g2 = pgcd(other.num, self.den) if len(self.den) > 1 else (ONE,)
        a_num = pdivmod(self.num, g1)[0] if len(g1) > 1 else self.num
        b_den = pdivmod(other.den, g1)[0] if len(g1) > 1 else other.den
        b_num = pdivmod(other.num, g2)[0] if len(g2) > 1 else other.num
        a_den = pdivmod(self.den, g2)[0] if len(g2) > 1 else self.den
        return RatFunc(pmul(a_num, b_num), pmul(a_den, b_den), _canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero function")
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def reciprocal(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by the zero function")
        lead = self.num[-1]
        return RatFunc(pscale(self.den, ONE / lead), pmonic(self.num), _canonical=True)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, s: int) -> "RatFunc":
        """``n -> n + s``; translation preserves canonical form."""
        if not s:
            return self
        return RatFunc(pshift(self.num, s), pshift(self.den, s), _canonical=True)

    def conj(self) -> "RatFunc":
        """Coefficient-wise conjugate; equals ``conj(f(n))`` at integer ``n``."""
        return RatFunc(pconj(self.num), pconj(self.den), _canonical=True)

    def difference(self) -> "RatFunc":
        """``f(n+1) - f(n)``."""
        return self.shift(1) - self

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    # -- text / serialization -----------------------------------------
    def to_json(self) -> dict:
        return {"num": [a.to_quad() for a in self.num],
                "den": [a.to_quad() for a in self.den]}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls([GaussianRational.from_quad(q) for q in data["num"]],
                   [GaussianRational.from_quad(q) for q in data["den"]])

    def __str__(self):
        num = _poly_str(self.num)
        if len(self.den) == 1:
            return num
        den = _poly_str(self.den)
        if len(self.num) > 1 and sum(1 for a in self.num if a) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        a = p[k]
        if not a:
            continue
        mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
        if a.im:
            coef = f"({a})"
            sign = "+"
        else:
            sign = "-" if a.re < 0 else "+"
            mag = abs(a.re)
            coef = "" if (mag == 1 and mono) else str(mag)
        body = coef + ("*" if coef and mono else "") + mono
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _float_coeffs(p: Poly) -> np.ndarray:
    if not p:
        return np.zeros(1)
    if all(a.is_real() for a in p):
        return np.array([float(a.re) for a in p])
    return np.array([complex(a) for a in p])


def _is_complex(*arrays) -> bool:
    return any(np.iscomplexobj(a) for a in arrays)


# ---------------------------------------------------------------------------
# operation-level entry points

def rf_arith(f: RatFunc, g: RatFunc, kind: str) -> RatFunc:
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    if kind == "div":
        return f / g
    raise ValueError(f"unknown kind {kind!r}")


def rf_eval(f: RatFunc, k: int) -> GaussianRational:
    return f.eval(k)


def rf_decay_order(f: RatFunc):
    return f.decay_order()


def rf_limit_at_infinity(f: RatFunc):
    return f.limit_at_infinity()


def pochhammer(a, k: int) -> RatFunc:
    """``(n + a)(n + a + 1)...(n + a + k - 1)`` as a polynomial in ``n``."""
    out = RatFunc.const(1)
    for i in range(k):
        out = out * RatFunc.linear(1, GaussianRational.coerce(a) + i)
    return out


def falling(k: int) -> RatFunc:
    """``n(n-1)...(n-k+1)``."""
    return pochhammer(-(k - 1), k) if k else RatFunc.const(1)

