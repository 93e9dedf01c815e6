from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from verma_berezin.berezin import gen_F
from verma_berezin.cli.evaluate import eval_expr
from verma_berezin.cli.expr import (Adj, Com, Gen, LGen, ParseError, Product, Proj,
                                    Scalar, Sum, parse_expr, pretty, tokenize)
from verma_berezin.conformal import CapExceeded
from verma_berezin.operators import Weight, identity, projector
from verma_berezin.scalar import GaussianRational

HALF = Fraction(1, 2)


def test_com_node():
    assert parse_expr("com(D,F)") == Com(Gen("D"), Gen("F"))


def test_witt_expression_at_limit():
    src = "L(2)*L(-2) − L(-2)*L(2) − 4*L(0)"
    node = parse_expr(src)
    assert isinstance(node, Sum)
    w = Weight(HALF)
    assert eval_expr(node, w) == eval_expr("(1/4)*(P(0)+P(1))", w)
    assert eval_expr(node, w) == (projector(w, 0) + projector(w, 1)).scale(Fraction(1, 4))


def test_error_position():
    with pytest.raises(ParseError) as exc:
        parse_expr("L(")
    assert exc.value.position == 3
    assert exc.value.expected == {"integer"}


def test_error_positions_are_bytes():
    with pytest.raises(ParseError) as exc:
        parse_expr("D − ?")
    assert exc.value.position == 7  # the minus sign is three bytes


@pytest.mark.parametrize("src", ["", "D +", "P(-1)", "L(1", "adj D", "1/0", "i", "D F", "Q"])
def test_malformed(src):
    with pytest.raises(ParseError):
        parse_expr(src)


def test_evaluation_examples():
    assert eval_expr("adj(D)", 1) == gen_F(1)
    assert eval_expr("I − F*D", HALF) == projector(Weight(HALF), 0)
    assert eval_expr("com(I, L(3))", 1).is_zero()
    assert eval_expr("2*D - D*2", 1).is_zero()


def test_complex_literals():
    assert parse_expr("(1/2 - 3i)") == Scalar(GaussianRational(HALF, -3))
    assert parse_expr("2i*D") == Product((Scalar(GaussianRational(0, 2)), Gen("D")))
    assert eval_expr("(1 + 1i)*I", 1) == identity(Weight(1)).scale(GaussianRational(1, 1))


def test_scalar_folding():
    assert parse_expr("1 + 2*3") == Scalar(GaussianRational(7))


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        eval_expr("L(17)", 1)


def test_tokens():
    assert [t.text for t in tokenize("adj(L(-2))")] == ["adj", "(", "L", "(", "-", "2", ")", ")", ""]


# -- round trip --------------------------------------------------------------

fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)
scalars = st.builds(GaussianRational, fracs, fracs).map(Scalar)
leaves = st.one_of(
    scalars,
    st.sampled_from([Gen("D"), Gen("F"), Gen("I")]),
    st.integers(-16, 16).map(LGen),
    st.integers(0, 9).map(Proj),
)


def _extend(children):
    return st.one_of(
        children.map(Adj),
        st.builds(Com, children, children),
        st.builds(Sum, children,
                  st.lists(st.tuples(st.sampled_from("+-"), children), min_size=1, max_size=3)
                  .map(tuple)),
        st.lists(children, min_size=2, max_size=3).map(tuple).map(Product),
    )


def _canonical(node):
    """What the parser produces for ``node``: nested Sums/Products flattened by
    printing as parenthesized groups, scalar-only groups folded."""
    return parse_expr(pretty(node))


@settings(max_examples=500)
@given(st.recursive(leaves, _extend, max_leaves=12))
def test_pretty_parse_round_trip(node):
    canon = _canonical(node)
    assert parse_expr(pretty(canon)) == canon
    assert pretty(parse_expr(pretty(canon))) == pretty(canon)


@settings(max_examples=50)
@given(st.recursive(leaves, _extend, max_leaves=6))
def test_round_trip_preserves_meaning(node):
    w = Weight(Fraction(3, 4))
    try:
        direct = eval_expr(node, w)
    except CapExceeded:
        return
    assert eval_expr(parse_expr(pretty(node)), w) == direct
