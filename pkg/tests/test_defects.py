import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import polygamma

from verma_berezin.berezin import gen_D, gen_F
from verma_berezin.conformal import gen_L, witt_bracket_defect
from verma_berezin.defects import (UNBOUNDED, MonotonicityUndecided, certified_tail,
                                   entry_sq, hs_distance_sq, hs_report, op_norm_bound,
                                   orthonormal_entry)
from verma_berezin.operators import (OperatorError, Weight, commutator, compose, identity,
                                     make_band, projector, truncate)
from verma_berezin.ratfunc import RatFunc

n = RatFunc.var()
W1 = Weight(1)


def trigamma(x):
    return float(polygamma(1, x))


def test_commutator_DF_hs_norm():
    # sum_{n>=0} 1/((n+1)(n+2))^2 = pi^2/3 - 3 by partial fractions
    rep = hs_report(commutator(gen_D(W1), gen_F(W1)), N=10**5)
    assert rep.verdict
    assert rep.hs.partial_sum <= math.pi**2 / 3 - 3 <= rep.hs.upper
    assert rep.hs_norm_sq == pytest.approx(math.pi**2 / 3 - 3, abs=1e-12)


def test_projector_norm_exact():
    rep = hs_report(projector(W1, 0))
    assert rep.hs.exact_partial == 1
    assert rep.hs_norm_sq == 1
    assert rep.finite_rank_norm_sq == 1


def test_D_is_not_hs():
    rep = hs_report(gen_D(W1))
    assert not rep.verdict
    assert rep.offending == (-1,)
    assert entry_sq(gen_D(W1), -1) == n / RatFunc.linear(1, 1)
    assert rep.bands[0].decay_order == 0
    assert math.isinf(rep.hs.tail_bound)


def test_requires_N_at_least_two():
    with pytest.raises(OperatorError):
        hs_report(gen_D(W1), N=1)


@pytest.mark.parametrize("h", [Fraction(3, 4), Fraction(1), Fraction(5, 2)])
def test_trigamma_defect(h):
    w = Weight(h)
    defect = compose(gen_D(w), gen_F(w)) - identity(w)
    rep = hs_report(defect, N=20000)
    want = float((2 * h - 1) ** 2) * trigamma(float(2 * h))
    assert rep.hs.partial_sum <= want <= rep.hs.upper + 1e-15
    assert rep.hs.tail_bound < 1e-3


@pytest.mark.parametrize("N", [10, 100, 1000])
def test_bracketing(N):
    """partial(2N) <= partial(N) + tail(N), for several operators."""
    w = Weight(Fraction(3, 4))
    for op in (commutator(gen_D(w), gen_F(w)),
               witt_bracket_defect(2, -2, w),
               witt_bracket_defect(3, -1, w) + projector(w, 2)):
        a, b = hs_report(op, N), hs_report(op, 2 * N)
        assert b.hs.partial_sum <= a.hs.partial_sum + a.hs.tail_bound * (1 + 1e-12) + 1e-15
        assert a.hs.partial_sum <= b.hs.partial_sum


@given(st.integers(2, 6), st.integers(0, 40), st.fractions(1, 7, max_denominator=5))
def test_certified_tail_bounds_true_tail(p, last, a):
    g = RatFunc.const(1) / (RatFunc.linear(1, a) ** p)
    bound = certified_tail(g, last)
    # true tail from Hurwitz zeta
    true = float(polygamma(p - 1, float(a + last + 1))) * (-1) ** p / math.factorial(p - 1)
    assert true <= bound * (1 + 1e-12)


def test_certified_tail_infinite_for_slow_decay():
    assert math.isinf(certified_tail(RatFunc.const(1) / RatFunc.linear(1, 1), 10))


def test_op_norm_bounds():
    assert op_norm_bound(gen_D(W1)) == pytest.approx(1.0)
    assert op_norm_bound(gen_F(W1)) == pytest.approx(1.0)
    assert op_norm_bound(identity(W1)) == 1.0
    assert op_norm_bound(gen_L(1, W1)) == UNBOUNDED
    with pytest.raises(OperatorError):
        op_norm_bound(gen_D(W1), scan=4)


def test_op_norm_bound_dominates_svd():
    for h in (Fraction(1), Fraction(3, 4), Fraction(1, 2)):
        w = Weight(h)
        for op in (gen_D(w), gen_F(w), compose(gen_F(w), gen_D(w))):
            sigma = np.linalg.svd(truncate(op, 256, "orthonormal"), compute_uv=False)[0]
            assert sigma <= op_norm_bound(op) + 1e-12


def test_monotonicity_undecided():
    # |entry|^2 of (n-20)^2/(n^2+1) is not monotone until well past 16
    w = W1
    bump = make_band(w, {0: (n - 30) / (RatFunc.poly([1, 0, 1]))})
    with pytest.raises(MonotonicityUndecided):
        op_norm_bound(bump, scan=16)
    assert op_norm_bound(bump, scan=200) >= 1.0


def test_orthonormal_entry_and_distance():
    w = Weight(Fraction(1, 2))
    fd = compose(gen_F(w), gen_D(w)) - identity(w)
    assert orthonormal_entry(fd, 0, 0) == -1
    assert hs_distance_sq(fd, {(0, 0): -1.0}) == pytest.approx(0.0, abs=1e-15)
