"""Evaluation of parsed expressions to exact band operators."""

from __future__ import annotations

from ..berezin import gen_D, gen_F
from ..conformal import DEFAULT_CAP, gen_L
from ..operators import (BandOperator, Weight, adjoint, commutator, compose,
                         identity, projector)
from .expr import Adj, Com, Gen, LGen, Node, Product, Proj, Scalar, Sum, parse_expr


def eval_expr(node: Node | str, weight, cap: int = DEFAULT_CAP) -> BandOperator:
    w = weight if isinstance(weight, Weight) else Weight(weight)
    if isinstance(node, str):
        node = parse_expr(node)
    return _eval(node, w, cap)


def _eval(node: Node, w: Weight, cap: int) -> BandOperator:
    if isinstance(node, Scalar):
        return identity(w).scale(node.value)
    if isinstance(node, Gen):
        return {"D": gen_D, "F": gen_F, "I": identity}[node.name](w)
    if isinstance(node, LGen):
        return gen_L(node.k, w, cap)
    if isinstance(node, Proj):
        return projector(w, node.k)
    if isinstance(node, Adj):
        return adjoint(_eval(node.arg, w, cap))
    if isinstance(node, Com):
        return commutator(_eval(node.left, w, cap), _eval(node.right, w, cap))
    if isinstance(node, Sum):
        out = _eval(node.first, w, cap)
        for op, term in node.rest:
            t = _eval(term, w, cap)
            out = out + t if op == "+" else out - t
        return out
    if isinstance(node, Product):
        scalar = 1
        ops = []
        for f in node.factors:
            if isinstance(f, Scalar):
                scalar = f.value * scalar
            else:
                ops.append(_eval(f, w, cap))
        if not ops:
            return identity(w).scale(scalar)
        out = ops[-1]
        for op in reversed(ops[:-1]):
            out = compose(op, out)
        return out.scale(scalar)
    raise TypeError(f"not an expression node: {node!r}")
