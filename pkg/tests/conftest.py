"""Shared strategies and independent matrix oracles.

The oracle matrices below are written straight from the differential
expressions (D = d/dz, F = z (xi + 2h)^-1, L_k) acting on z^n, without going
through the band machinery, so comparisons against them are independent.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from verma_berezin.scalar import GaussianRational

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

WEIGHTS = [Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(5), Fraction(101, 200)]


# -- strategies --------------------------------------------------------------

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, small_fracs, small_fracs)


@st.composite
def polys(draw, max_degree=3, complex_coeffs=True):
    coeff = gaussians if complex_coeffs else small_fracs.map(GaussianRational)
    return draw(st.lists(coeff, min_size=1, max_size=max_degree + 1))


# -- oracle matrices (dict-of-keys, exact) -----------------------------------

def mat_D(size, h):
    return {(n - 1, n): Fraction(n) for n in range(1, size)}


def mat_F(size, h):
    return {(n + 1, n): 1 / (n + 2 * h) for n in range(size - 1)}


def mat_I(size, h):
    return {(n, n): Fraction(1) for n in range(size)}


def mat_P(k):
    def build(size, h):
        return {(k, k): Fraction(1)} if k < size else {}
    return build


def mat_L(k):
    """L_k on z^n: k >= 0 is (xi + (k+1)h) d^k, k < 0 raises by |k|."""

    def build(size, h):
        out = {}
        for n in range(size):
            if k >= 0:
                if n - k < 0:
                    continue
                val = (n - k + (k + 1) * h) * prod(range(n - k + 1, n + 1))
                r = n - k
            else:
                j = -k
                val = (n + (j + 1) * h) / prod(n + 2 * h + i for i in range(j))
                r = n + j
            if r < size and val:
                out[(r, n)] = Fraction(val)
        return out
    return build


def matmul(x, y):
    rows = {}
    for (k, c), v in y.items():
        rows.setdefault(k, []).append((c, v))
    out = {}
    for (r, k), u in x.items():
        for c, v in rows.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + u * v
    return {key: v for key, v in out.items() if v}


def window(m, size):
    return {key: v for key, v in m.items() if key[0] < size and key[1] < size and v}


@pytest.fixture(params=WEIGHTS, ids=str)
def h(request):
    return request.param
