from fractions import Fraction

import numpy as np
import pytest

from verma_berezin.berezin import (boundedness_report, check_berezin_relations,
                                   check_s_form, gen_D, gen_F, gen_F_reversed,
                                   run_berezin_suite, toeplitz_limit_check)
from verma_berezin.operators import (OperatorError, Weight, WeightMismatch, compose,
                                     identity, projector, truncate)
from verma_berezin.ratfunc import RatFunc

from conftest import mat_D, mat_F, matmul, window

n = RatFunc.var()
HALF = Fraction(1, 2)


def test_generators_act_as_expected():
    w = Weight(1)
    assert gen_D(w).bands == {-1: n}
    assert gen_F(w).bands == {1: RatFunc.const(1) / RatFunc.linear(1, 2)}


@pytest.mark.parametrize("h", [Fraction(3, 4), 1, Fraction(3, 2), 5, Fraction(101, 200), HALF])
def test_relations_hold(h):
    assert all(check_berezin_relations(h))


def test_relations_match_matrix_oracle():
    """hbar [D,F] and (1-DF)(1-FD) agree on a truncated window, computed without bands."""
    h = Fraction(7, 3)
    size = 40
    d, f = mat_D(size + 2, h), mat_F(size + 2, h)
    df, fd = matmul(d, f), matmul(f, d)
    eye = {(k, k): Fraction(1) for k in range(size + 2)}
    lhs = {k: (2 * h - 1) * (df.get(k, 0) - fd.get(k, 0)) for k in set(df) | set(fd)}
    one_minus = lambda m: {k: eye.get(k, 0) - m.get(k, 0) for k in set(eye) | set(m)}
    rhs = matmul(one_minus(df), one_minus(fd))
    assert window(lhs, size) == window(rhs, size)


def test_relation_diagonal_closed_form():
    h = Fraction(1)
    w = Weight(h)
    lhs = (compose(gen_D(w), gen_F(w)) - compose(gen_F(w), gen_D(w))).scale(w.hbar)
    want = RatFunc.const((2 * h - 1) ** 2) / (RatFunc.linear(1, 2 * h) * RatFunc.linear(1, 2 * h - 1))
    assert lhs.bands == {0: want}


@pytest.mark.parametrize("h", [Fraction(3, 4), 1, 5])
def test_reversed_ordering_fails(h):
    results = check_berezin_relations(h, f_op=gen_F_reversed(h))
    assert not all(results)
    bad = [r for r in results if not r]
    assert bad[0].witness["kind"] == "band" and bad[0].witness["degree"] == 0


@pytest.mark.parametrize("h", [1, Fraction(3, 4)])
def test_s_form(h):
    assert all(check_s_form(h))


def test_s_form_undefined_at_limit():
    with pytest.raises(OperatorError, match="q_R undefined"):
        check_s_form(HALF)


def test_toeplitz_limit():
    assert all(toeplitz_limit_check(HALF))
    w = Weight(HALF)
    assert compose(gen_D(w), gen_F(w)) == identity(w)
    assert compose(gen_F(w), gen_D(w)) == identity(w) - projector(w, 0)
    with pytest.raises(WeightMismatch):
        toeplitz_limit_check(1)


def test_DF_at_h1_is_not_identity():
    w = Weight(1)
    assert compose(gen_D(w), gen_F(w)).bands == {0: RatFunc.linear(1, 1) / RatFunc.linear(1, 2)}


def test_boundedness_against_svd():
    w = Weight(Fraction(3, 4))
    bounds = boundedness_report(w)
    assert bounds["D"] == 1.0 and bounds["F"] == 1.0
    for name, op in (("DF", compose(gen_D(w), gen_F(w))), ("FD", compose(gen_F(w), gen_D(w)))):
        sigma = np.linalg.svd(truncate(op, 200, "orthonormal"), compute_uv=False)[0]
        assert sigma <= bounds[name] + 1e-12


@pytest.mark.parametrize("h", [HALF, Fraction(3, 4), 2])
def test_suite_passes(h):
    results = run_berezin_suite(h)
    assert all(results), [r.name for r in results if not r]
