"""A small expression language for diagrams.

Grammar, loosest binding first::

    expr  := expr "+" expr          sum
           | expr ";" expr          f ; g  is g stacked on top of f
           | expr "*" expr          tensor, f to the left of g
           | expr "[" int "]"       shift
           | atom
    atom  := "id" nat | "cup" | "cap" | "hf" | "hfb" | "alpha0" | "alpha1" | "(" expr ")"

``;`` reads in diagram order, bottom first, so ``cup ; cap`` is the loop.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from . import diagrams as D

ATOMS = ("cup", "cap", "hf", "hfb", "alpha0", "alpha1")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"parse error at column {pos + 1}: {message}")
        self.pos = pos
        self.text = text

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"


class ElaborationError(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    name: str  # "id<k>" or one of ATOMS


@dataclass(frozen=True)
class Seq:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Tensor:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Shift:
    expr: "Expr"
    m: int


@dataclass(frozen=True)
class Sum:
    terms: Tuple["Expr", ...]


Expr = Union[Gen, Seq, Tensor, Shift, Sum]

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[+;*()\[\]]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def expect(self, sym: str):
        tok = self.take()
        if tok[1] != sym or tok[0] != "sym":
            raise self.error(f"expected {sym!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self) -> Expr:
        e = self.sum()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def sum(self) -> Expr:
        terms = [self.seq()]
        while self.peek()[1] == "+":
            self.take()
            terms.append(self.seq())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def seq(self) -> Expr:
        e = self.tensor()
        while self.peek()[1] == ";":
            self.take()
            e = Seq(e, self.tensor())
        return e

    def tensor(self) -> Expr:
        e = self.postfix()
        while self.peek()[1] == "*":
            self.take()
            e = Tensor(e, self.postfix())
        return e

    def postfix(self) -> Expr:
        e = self.atom()
        while self.peek()[1] == "[":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("expected an integer shift", tok)
            self.expect("]")
            e = Shift(e, int(tok[1]))
        return e

    def atom(self) -> Expr:
        tok = self.take()
        kind, val, _ = tok
        if kind == "sym" and val == "(":
            e = self.sum()
            self.expect(")")
            return e
        if kind == "name":
            if val in ATOMS:
                return Gen(val)
            if re.fullmatch(r"id\d+", val):
                return Gen(f"id{int(val[2:])}")
            if val == "id":
                nat = self.take()
                if nat[0] != "int" or nat[1].startswith("-"):
                    raise self.error("expected a strand count after 'id'", nat)
                return Gen(f"id{int(nat[1])}")
            raise self.error(f"unknown generator {val!r}", tok)
        raise self.error(f"expected a diagram, found {val or 'end of input'!r}", tok)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


_PREC = {Sum: 0, Seq: 1, Tensor: 2, Shift: 3, Gen: 4}


def to_text(e: Expr) -> str:
    """Print with the minimal parentheses that parse back to the same tree."""

    def wrap(child: Expr, min_prec: int) -> str:
        s = to_text(child)
        return f"({s})" if _PREC[type(child)] < min_prec else s

    if isinstance(e, Gen):
        return e.name
    if isinstance(e, Shift):
        return f"{wrap(e.expr, 3)}[{e.m}]"
    if isinstance(e, Tensor):
        return f"{wrap(e.lhs, 2)} * {wrap(e.rhs, 3)}"
    if isinstance(e, Seq):
        return f"{wrap(e.lhs, 1)} ; {wrap(e.rhs, 2)}"
    if isinstance(e, Sum):
        return " + ".join(wrap(t, 1) for t in e.terms)
    raise TypeError(f"not an expression: {e!r}")


def _atom(name: str) -> D.Morphism:
    if name.startswith("id"):
        return D.identity(int(name[2:]))
    return {"cup": D.cup, "cap": D.cap, "hf": D.hf, "hfb": D.hfb,
            "alpha0": D.alpha0, "alpha1": D.alpha1}[name]()


def elaborate(e: Expr, strict: bool = True) -> D.Morphism:
    """Morphism of I' denoted by ``e``.

    A vertical composite with mismatched strand counts is an error, or the
    zero morphism when ``strict`` is false.
    """
    if isinstance(e, Gen):
        return _atom(e.name)
    if isinstance(e, Shift):
        return elaborate(e.expr, strict).shift(e.m)
    if isinstance(e, Tensor):
        return D.tensor(elaborate(e.lhs, strict), elaborate(e.rhs, strict))
    if isinstance(e, Seq):
        f, g = elaborate(e.lhs, strict), elaborate(e.rhs, strict)
        if f.target.k != g.source.k and strict:
            raise ElaborationError(f"cannot stack {to_text(e.rhs)} ({g.source} -> {g.target}) "
                                   f"on {to_text(e.lhs)} ({f.source} -> {f.target})")
        return D.compose(g, f)
    if isinstance(e, Sum):
        parts = [elaborate(t, strict) for t in e.terms]
        out = parts[0]
        for p in parts[1:]:
            if (p.source, p.target) != (out.source, out.target):
                raise ElaborationError(f"cannot add {out.source} -> {out.target} and {p.source} -> {p.target}")
            out = out + p
        return out
    raise TypeError(f"not an expression: {e!r}")


def evaluate(text: str, strict: bool = True) -> D.Morphism:
    return elaborate(parse(text), strict)


def random_expr(rng: random.Random, depth: int = 3) -> Expr:
    """Random syntax tree, not necessarily well typed."""
    if depth <= 0 or rng.random() < 0.3:
        name = rng.choice(ATOMS + ("id",))
        return Gen(f"id{rng.randint(0, 3)}" if name == "id" else name)
    kind = rng.choice(("seq", "tensor", "shift", "sum"))
    if kind == "seq":
        return Seq(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == "tensor":
        return Tensor(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == "shift":
        return Shift(random_expr(rng, depth - 1), rng.randint(-3, 3))
    return Sum(tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(2, 3))))
