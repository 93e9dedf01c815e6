"""Recursive-descent parser for operator expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := scalar | atom
    scalar := rational | rational 'i' | '(' rational ('+'|'-') rational 'i' ')'
    atom   := 'D' | 'F' | 'I' | 'L' '(' int ')' | 'P' '(' nat ')'
            | 'adj' '(' expr ')' | 'com' '(' expr ',' expr ')' | '(' expr ')'

``*`` is operator composition; scalars commute with everything.  Sums and
products made only of scalars are folded into a single scalar, which keeps
printing and parsing mutually inverse.  Positions in diagnostics are
1-based byte offsets into the UTF-8 source.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..scalar import GaussianRational


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: frozenset = frozenset()):
        self.position = position
        self.expected = frozenset(expected)
        exp = f"; expected {' or '.join(sorted(self.expected))}" if self.expected else ""
        super().__init__(f"position {position}: {message}{exp}")


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Gen:
    name: str  # "D", "F" or "I"


@dataclass(frozen=True)
class LGen:
    k: int


@dataclass(frozen=True)
class Proj:
    k: int


@dataclass(frozen=True)
class Adj:
    arg: "Node"


@dataclass(frozen=True)
class Com:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sum:
    first: "Node"
    rest: tuple  # ((op, node), ...) with op in "+-"


@dataclass(frozen=True)
class Product:
    factors: tuple


Node = Union[Scalar, Gen, LGen, Proj, Adj, Com, Sum, Product]


# -- tokens ------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int   # 1-based byte offset


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, expected) -> ParseError:
        return ParseError(message, self.tok.pos, frozenset(expected))

    def accept(self, kind: str, text: str = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, text: str, label: str) -> Token:
        t = self.accept(kind, text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.fail(f"found {found!r}", {label})
        return t

    # expr := term (('+'|'-') term)*
    def expr(self) -> Node:
        first = self.term()
        rest = []
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tokens[self.i].text
            self.i += 1
            rest.append((op, self.term()))
        if not rest:
            return first
        node = Sum(first, tuple(rest))
        return _fold(node)

    # term := factor ('*' factor)*
    def term(self) -> Node:
        factors = [self.factor()]
        while self.accept("op", "*"):
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return _fold(Product(tuple(factors)))

    def factor(self) -> Node:
        t = self.tok
        if t.kind == "num" or (t.kind == "op" and t.text == "-"):
            return Scalar(self.real_or_imag())
        if t.kind == "name" and t.text == "i":
            raise self.fail("imaginary unit needs a coefficient", {"rational"})
        if t.kind == "op" and t.text == "(":
            saved = self.i
            literal = self.complex_literal()
            if literal is not None:
                return literal
            self.i = saved
            self.i += 1
            node = self.expr()
            self.expect("op", ")", "')'")
            return node
        if t.kind == "name":
            return self.atom()
        raise self.fail(f"found {t.text or 'end of input'!r}", {"scalar", "atom"})

    def rational(self) -> Fraction:
        sign = -1 if self.accept("op", "-") else 1
        num = self.tok
        if num.kind != "num":
            raise self.fail(f"found {num.text or 'end of input'!r}", {"integer"})
        self.i += 1
        value = Fraction(int(num.text))
        if self.accept("op", "/"):
            den = self.tok
            if den.kind != "num":
                raise self.fail(f"found {den.text or 'end of input'!r}", {"integer"})
            self.i += 1
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.pos)
            value /= int(den.text)
        return sign * value

    def real_or_imag(self) -> GaussianRational:
        value = self.rational()
        if self.accept("name", "i"):
            return GaussianRational(0, value)
        return GaussianRational(value)

    def complex_literal(self) -> Scalar | None:
        """``'(' rational ('+'|'-') rational 'i' ')'`` or ``None`` (no input consumed)."""
        start = self.i
        try:
            self.expect("op", "(", "'('")
            re_part = self.rational()
            if self.accept("name", "i"):
                return None
            op = self.tok
            if op.kind != "op" or op.text not in "+-":
                return None
            self.i += 1
            im_part = self.rational()
            if not self.accept("name", "i") or not self.accept("op", ")"):
                return None
        except ParseError:
            self.i = start
            return None
        if op.text == "-":
            im_part = -im_part
        return Scalar(GaussianRational(re_part, im_part))

    def integer(self) -> int:
        sign = -1 if self.accept("op", "-") else 1
        t = self.tok
        if t.kind != "num":
            raise self.fail(f"found {t.text or 'end of input'!r}", {"integer"})
        self.i += 1
        return sign * int(t.text)

    def atom(self) -> Node:
        t = self.tok
        self.i += 1
        name = t.text
        if name in ("D", "F", "I"):
            return Gen(name)
        if name in ("L", "P"):
            self.expect("op", "(", "'('")
            if name == "P" and self.tok.kind == "op" and self.tok.text == "-":
                raise self.fail("projector index must be nonnegative", {"natural number"})
            k = self.integer()
            self.expect("op", ")", "')'")
            return LGen(k) if name == "L" else Proj(k)
        if name == "adj":
            self.expect("op", "(", "'('")
            arg = self.expr()
            self.expect("op", ")", "')'")
            return Adj(arg)
        if name == "com":
            self.expect("op", "(", "'('")
            left = self.expr()
            self.expect("op", ",", "','")
            right = self.expr()
            self.expect("op", ")", "')'")
            return Com(left, right)
        self.i -= 1
        raise self.fail(f"found {name!r}", {"atom"})


def tokenize(source: str) -> list[Token]:
    """Split ``source``; the Unicode minus is an alias of ``-``."""
    out = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        pos = len(source[:i].encode("utf-8")) + 1
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            out.append(Token("num", source[i:j], pos))
            i = j
            continue
        if source.startswith(("adj", "com"), i):
            out.append(Token("name", source[i:i + 3], pos))
            i += 3
            continue
        if ch in "DFILPi":
            out.append(Token("name", ch, pos))
            i += 1
            continue
        if ch in "+-*/(),−":
            out.append(Token("op", "-" if ch == "−" else ch, pos))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    out.append(Token("end", "", len(source.encode("utf-8")) + 1))
    return out


def _is_scalar(node) -> bool:
    return isinstance(node, Scalar)


def _fold(node: Node) -> Node:
    if isinstance(node, Sum):
        parts = [node.first] + [t for _, t in node.rest]
        if all(map(_is_scalar, parts)):
            total = node.first.value
            for op, t in node.rest:
                total = total + t.value if op == "+" else total - t.value
            return Scalar(total)
    if isinstance(node, Product) and all(map(_is_scalar, node.factors)):
        total = GaussianRational(1)
        for f in node.factors:
            total = total * f.value
        return Scalar(total)
    return node


def parse_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "end":
        raise p.fail(f"found {p.tok.text!r}", {"'+'", "'-'", "'*'", "end of input"})
    return node


# -- printing ----------------------------------------------------------------

def _scalar_str(v: GaussianRational) -> str:
    if not v.im:
        return str(v.re)
    if not v.re:
        return f"{v.im}i"
    sign = "-" if v.im < 0 else "+"
    return f"({v.re} {sign} {abs(v.im)}i)"


def pretty(node: Node) -> str:
    """Canonical text; ``parse_expr(pretty(e)) == e``."""
    if isinstance(node, Scalar):
        return _scalar_str(node.value)
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, LGen):
        return f"L({node.k})"
    if isinstance(node, Proj):
        return f"P({node.k})"
    if isinstance(node, Adj):
        return f"adj({pretty(node.arg)})"
    if isinstance(node, Com):
        return f"com({pretty(node.left)}, {pretty(node.right)})"
    if isinstance(node, Sum):
        out = _as_term(node.first)
        for op, t in node.rest:
            out += f" {op} {_as_term(t)}"
        return out
    if isinstance(node, Product):
        return "*".join(_as_factor(f) for f in node.factors)
    raise TypeError(f"not an expression node: {node!r}")


def _as_term(node: Node) -> str:
    return f"({pretty(node)})" if isinstance(node, Sum) else pretty(node)


def _as_factor(node: Node) -> str:
    return f"({pretty(node)})" if isinstance(node, (Sum, Product)) else pretty(node)
