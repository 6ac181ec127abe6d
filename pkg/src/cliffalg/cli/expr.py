"""Expression language for multivectors.

Precedence, tightest first:

    postfix   x~  (reverse)   x'  (grade involution)   x!  (dual)
    atoms     numbers, e1..en, (expr), <expr>k, exp(expr), inverse(expr), conj(expr)
    products  *  ^  _|  |_  .  &
    sums      +  -

All product operators share one tier. A chain may repeat one operator
(left-associative) but two different operators need parentheses, so
``e1*e2^e3`` is rejected. A leading numeric coefficient is exempt:
``2*e1^e2`` reads as 2 (e1 ^ e2).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from ..core import Algebra, Multivector, inverse
from ..products import dual, exp, left_inner, meet, outer, right_inner, scalar_product
from ..rings import FLOAT

PRODUCT_OPS = ("*", "^", "_|", "|_", ".", "&")
POSTFIX_OPS = ("~", "'", "!")
FUNCTIONS = ("exp", "inverse", "conj")


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+/\d+|\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>_\||\|_|[-+*^.&~'!()<>])
""", re.VERBOSE)


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", pos))
    return out


# ----------------------------------------------------------------- syntax tree

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Postfix:
    op: str
    arg: object


@dataclass(frozen=True)
class Grade:
    arg: object
    k: int


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.next()
        if text != value:
            raise ParseError(f"expected {value!r} at position {pos}, got {text or 'end of input'!r}")

    def parse(self):
        node = self.sum()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r} at position {pos}")
        return node

    def sum(self):
        kind, text, _ = self.peek()
        if text in ("+", "-"):
            self.next()
            node = self.product()
            if text == "-":
                node = Neg(node)
        else:
            node = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            node = BinOp(op, node, self.product())
        return node

    def product(self):
        coeff = None
        # a leading numeric coefficient does not count as a product operator
        if self.peek()[0] == "num" and self.toks[self.i + 1][1] == "*":
            coeff = Num(_number(self.next()[1]))
            self.next()
        node = self.unary()
        chain_op = None
        while self.peek()[1] in PRODUCT_OPS:
            kind, op, pos = self.next()
            if chain_op is not None and op != chain_op:
                raise ParseError(f"ambiguous mix of {chain_op!r} and {op!r} at position {pos}; "
                                 "add parentheses")
            chain_op = op
            node = BinOp(op, node, self.unary())
        return node if coeff is None else BinOp("*", coeff, node)

    def unary(self):
        if self.peek()[1] == "-":
            self.next()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self):
        node = self.atom()
        while self.peek()[1] in POSTFIX_OPS:
            node = Postfix(self.next()[1], node)
        return node

    def atom(self):
        kind, text, pos = self.next()
        if kind == "num":
            return Num(_number(text))
        if kind == "name":
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.sum()
                self.expect(")")
                return Call(text, arg)
            m = re.fullmatch(r"e(\d+)", text)
            if not m:
                raise ParseError(f"unknown name {text!r} at position {pos}")
            idx = int(m.group(1))
            if not 1 <= idx <= self.n:
                raise ParseError(f"unknown generator {text!r}: the signature has e1..e{self.n}")
            return Gen(idx)
        if text == "(":
            node = self.sum()
            self.expect(")")
            return node
        if text == "<":
            node = self.sum()
            self.expect(">")
            kind, k, pos = self.next()
            if kind != "num" or not k.isdigit():
                raise ParseError(f"expected a grade after '>' at position {pos}")
            return Grade(node, int(k))
        raise ParseError(f"unexpected {text or 'end of input'!r} at position {pos}")


def _number(text: str) -> Fraction:
    return Fraction(text)


def parse(text: str, n: int):
    """Syntax tree of ``text`` for an algebra with generators e1..en."""
    return _Parser(text, n).parse()


# ----------------------------------------------------------------- evaluation

class _NeedsFloat(Exception):
    pass


_BINARY = {
    "+": lambda x, y: x + y,
    "-": lambda x, y: x - y,
    "*": lambda x, y: x * y,
    "^": outer,
    "_|": left_inner,
    "|_": right_inner,
    ".": lambda x, y: x.alg.scalar(scalar_product(x, y)),
    "&": meet,
}

_POSTFIX = {
    "~": Multivector.reverse,
    "'": Multivector.involute,
    "!": dual,
}


def _eval(node, alg: Algebra) -> Multivector:
    if isinstance(node, Num):
        return alg.scalar(node.value)
    if isinstance(node, Gen):
        return alg.e(node.index)
    if isinstance(node, Neg):
        return -_eval(node.arg, alg)
    if isinstance(node, BinOp):
        return _BINARY[node.op](_eval(node.left, alg), _eval(node.right, alg))
    if isinstance(node, Postfix):
        return _POSTFIX[node.op](_eval(node.arg, alg))
    if isinstance(node, Grade):
        return _eval(node.arg, alg).grade(node.k)
    if isinstance(node, Call):
        x = _eval(node.arg, alg)
        if node.fn == "exp":
            try:
                return exp(x)
            except ValueError:
                if alg.ring.exact:
                    raise _NeedsFloat() from None
                raise
        if node.fn == "inverse":
            return inverse(x)
        return x.conjugate()
    raise TypeError(f"unknown node {node!r}")


def evaluate(node, alg: Algebra) -> Multivector:
    """Value of a syntax tree; switches to floats when exp needs them."""
    try:
        return _eval(node, alg)
    except _NeedsFloat:
        return _eval(node, alg.with_ring(FLOAT))


def evaluate_text(text: str, alg: Algebra) -> Multivector:
    return evaluate(parse(text, alg.n), alg)


# ----------------------------------------------------------------- printing

def unparse(node) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Gen):
        return f"e{node.index}"
    if isinstance(node, Neg):
        return f"(-({unparse(node.arg)}))"
    if isinstance(node, BinOp):
        return f"({unparse(node.left)} {node.op} {unparse(node.right)})"
    if isinstance(node, Postfix):
        return f"({unparse(node.arg)}){node.op}"
    if isinstance(node, Grade):
        return f"<{unparse(node.arg)}>{node.k}"
    if isinstance(node, Call):
        return f"{node.fn}({unparse(node.arg)})"
    raise TypeError(f"unknown node {node!r}")
