import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from verma_berezin.berezin import gen_D, gen_F
from verma_berezin.conformal import gen_L
from verma_berezin.operators import (GuardViolation, OperatorError, PoleInDomain,
                                     Weight, WeightMismatch, adjoint, apply, commutator,
                                     compose, identity, make_band, projector,
                                     raising_width, sparse_entries, sparse_matmul,
                                     truncate, zero)
from verma_berezin.ratfunc import RatFunc
from verma_berezin.scalar import GaussianRational

from conftest import mat_D, mat_F, mat_I, mat_L, mat_P, matmul, window

n = RatFunc.var()
W1 = Weight(1)


def test_weight_domain():
    with pytest.raises(OperatorError):
        Weight(Fraction(1, 3))
    assert Weight(Fraction(1, 2)).is_limit
    assert Weight.from_qr(1).h == 1
    with pytest.raises(OperatorError, match="q_R undefined"):
        Weight(Fraction(1, 2)).q_r


def test_w2_is_factorial_times_pochhammer():
    w = Weight(Fraction(3, 4))
    assert w.w2(3) == 6 * Fraction(3, 2) * Fraction(5, 2) * Fraction(7, 2)
    assert w.w2_ratio(2).eval(1) == w.w2(3) / w.w2(1)
    assert w.w2_ratio(-2).eval(3) == w.w2(1) / w.w2(3)


def test_make_band_D():
    assert make_band(W1, {-1: n}) == gen_D(W1)


def test_guard_violation():
    with pytest.raises(GuardViolation) as exc:
        make_band(W1, {-1: RatFunc.const(1)})
    assert (exc.value.degree, exc.value.k) == (-1, 0)


def test_pole_in_domain():
    with pytest.raises(PoleInDomain):
        make_band(W1, {0: RatFunc.const(1) / RatFunc.linear(1, -3)})


def test_projector():
    p0 = make_band(W1, {}, {(0, 0): 1})
    assert p0 == projector(W1, 0)
    assert apply(p0, 0) == [(0, 1)]
    assert apply(p0, 1) == []


def test_apply_examples():
    assert apply(gen_D(W1), 3) == [(2, 3)]
    assert apply(gen_F(W1), 0) == [(1, Fraction(1, 2))]
    assert apply(gen_F(W1), 2) == [(3, Fraction(1, 4))]
    assert apply(gen_L(2, W1), 5) == [(3, 120)]
    assert apply(gen_L(1, W1), 2) == [(1, 6)]


def test_commutator_DF_at_h1():
    c = commutator(gen_D(W1), gen_F(W1))
    assert c.bands == {0: RatFunc.const(1) / (RatFunc.linear(1, 1) * RatFunc.linear(1, 2))}
    assert not c.corrections


def test_commutator_trivial():
    assert commutator(identity(W1), gen_F(W1)).is_zero()


def test_weight_mismatch():
    with pytest.raises(WeightMismatch):
        gen_D(W1) + gen_D(Weight(2))


def test_truncate_examples():
    assert truncate(gen_D(W1), 3) == [[0, 1, 0], [0, 0, 2], [0, 0, 0]]
    e00 = np.zeros((4, 4))
    e00[0, 0] = 1
    assert np.array_equal(truncate(projector(W1, 0), 4, "orthonormal"), e00)
    assert truncate(projector(W1, 0), 4) == [[1 if r == c == 0 else 0 for c in range(4)]
                                             for r in range(4)]


def test_boundary_corrections_in_composition():
    w = Weight(Fraction(1, 2))
    fd = compose(gen_F(w), gen_D(w))
    assert fd == identity(w) - projector(w, 0)
    assert compose(gen_D(w), gen_F(w)) == identity(w)


def test_power_and_scalar_ops():
    d = gen_D(W1)
    assert d ** 2 == compose(d, d)
    assert (2 * d) == d.scale(2) == d * 2
    assert (d - d).is_zero() and zero(W1).is_zero()


def test_raising_width():
    assert raising_width(gen_F(W1)) == 1
    assert raising_width(gen_D(W1)) == 0
    assert raising_width(gen_L(-3, W1)) == 3


# -- adjoint via Gram matrices ----------------------------------------------

def _gram_check(a, size=33):
    """<A e_c, e_r> == <e_c, A* e_r> for all r, c < size."""
    w = a.weight
    astar = adjoint(a)
    ea = sparse_entries(a, size + 8)
    es = sparse_entries(astar, size + 8)
    for r in range(size):
        for c in range(size):
            lhs = ea.get((r, c), 0) * w.w2(r)
            rhs = GaussianRational.coerce(es.get((c, r), 0)).conj() * w.w2(c)
            assert lhs == rhs, (r, c)


@pytest.mark.parametrize("k", range(-5, 6))
def test_adjoint_of_L_gram(k):
    _gram_check(gen_L(k, Weight(Fraction(3, 4))))


def test_adjoint_of_corrected_operator_gram():
    w = Weight(Fraction(5, 4))
    a = make_band(w, {1: RatFunc.const(GaussianRational(1, 2)), -2: n * (n - 1)},
                  {(0, 3): GaussianRational(0, 1), (2, 1): Fraction(3, 7)})
    _gram_check(a, 20)
    assert adjoint(adjoint(a)) == a


def test_adjoint_of_composed_operator_gram():
    w = Weight(Fraction(1, 2))
    a = commutator(gen_L(2, w), gen_L(-2, w)) + compose(gen_F(w), gen_D(w))
    _gram_check(a, 16)


def test_adjoint_examples(h):
    w = Weight(h)
    assert adjoint(gen_D(w)) == gen_F(w)
    assert adjoint(gen_L(3, w)) == gen_L(-3, w)


# -- composition vs independent matrices -------------------------------------

ORACLES = {"D": (gen_D, mat_D), "F": (gen_F, mat_F), "I": (identity, mat_I),
           "P0": (lambda w: projector(w, 0), mat_P(0))}
for _k in range(-3, 4):
    ORACLES[f"L{_k}"] = (lambda w, k=_k: gen_L(k, w), mat_L(_k))


def word_agrees(word, h, size=64):
    w = Weight(h)
    op = identity(w)
    mat = mat_I(size, h)
    width = 0
    for name in word:
        build, oracle = ORACLES[name]
        g = build(w)
        op = compose(op, g)
        mat = matmul(mat, oracle(size, h))
        width += raising_width(g)
    keep = size - width
    return window(sparse_entries(op, keep), keep) == window(mat, keep)


@pytest.mark.parametrize("word", [("D", "F"), ("F", "D"), ("L2", "L-2"), ("L-2", "L2"),
                                  ("L3", "F", "P0", "L-1"), ("D", "L-3", "D", "D")])
@pytest.mark.parametrize("h", [Fraction(1, 2), Fraction(3, 4), Fraction(1)])
def test_word_matches_matrix_product(word, h):
    assert word_agrees(word, h)


def test_generator_matrices_match_oracles():
    for h in (Fraction(1, 2), Fraction(7, 5)):
        w = Weight(h)
        for name, (build, oracle) in ORACLES.items():
            assert window(sparse_entries(build(w), 30), 30) == window(oracle(30, h), 30), name


@given(st.lists(st.sampled_from(sorted(ORACLES)), min_size=1, max_size=4),
       st.sampled_from([Fraction(1, 2), Fraction(3, 4), Fraction(1)]))
def test_random_words_match_matrix_products(word, h):
    assert word_agrees(word, h, size=24)


@given(st.lists(st.sampled_from(sorted(ORACLES)), min_size=1, max_size=3),
       st.integers(0, 20))
def test_apply_is_composition(word, col):
    w = Weight(Fraction(3, 4))
    ops = [ORACLES[name][0](w) for name in word]
    vec = {col: GaussianRational(1)}
    for g in reversed(ops):
        nxt = {}
        for c, x in vec.items():
            for r, y in apply(g, c):
                nxt[r] = nxt.get(r, 0) + x * y
        vec = {r: v for r, v in nxt.items() if v}
    total = ops[0]
    for g in ops[1:]:
        total = compose(total, g)
    assert dict(apply(total, col)) == vec


def test_sparse_matmul_matches_compose():
    w = Weight(Fraction(3, 4))
    a, b = gen_L(2, w), gen_F(w)
    size = 20
    prod = sparse_matmul(sparse_entries(a, size + 4), sparse_entries(b, size + 4))
    assert window(prod, size) == window(sparse_entries(compose(a, b), size), size)


def test_associativity_random():
    rng = random.Random(7)
    w = Weight(Fraction(5, 8))
    names = sorted(ORACLES)
    for _ in range(20):
        a, b, c = (ORACLES[rng.choice(names)][0](w) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))
