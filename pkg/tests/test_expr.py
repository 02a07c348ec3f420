import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscat import diagrams as D
from gausscat.expr import (ElaborationError, Gen, ParseError, Seq, Shift, Sum, Tensor, elaborate, evaluate, parse,
                           random_expr, to_text)


def test_parse_examples():
    assert parse("cup ; cap") == Seq(Gen("cup"), Gen("cap"))
    assert parse("hf * id1") == Tensor(Gen("hf"), Gen("id1"))
    assert parse("id 2") == Gen("id2")
    assert parse("(hf ; hfb)") == Seq(Gen("hf"), Gen("hfb"))


def test_precedence():
    # + binds loosest, then ;, then *, then the postfix shift
    assert parse("cup ; cap + id0") == Sum((Seq(Gen("cup"), Gen("cap")), Gen("id0")))
    assert parse("hf * hf ; cap") == Seq(Tensor(Gen("hf"), Gen("hf")), Gen("cap"))
    assert parse("cap[1] * hf") == Tensor(Shift(Gen("cap"), 1), Gen("hf"))
    assert parse("cup ; cap ; cup") == Seq(Seq(Gen("cup"), Gen("cap")), Gen("cup"))
    assert parse("(cup ; cap)[-2]") == Shift(Seq(Gen("cup"), Gen("cap")), -2)


def test_evaluate_examples():
    assert evaluate("cup ; cap") == D.identity(0)
    assert evaluate("hf * id1") == evaluate("id1 * hf")
    assert evaluate("(hf ; hfb)") == D.alpha0()
    assert evaluate("hfb") == D.hfb() and evaluate("alpha1") == D.alpha1()
    assert evaluate("alpha0 + alpha0").is_zero()
    assert evaluate("cap ; cup") == D.identity(2)
    assert evaluate("id1[2]").source == D.ObjQ(1, 2)


@pytest.mark.parametrize("text, column", [("cup ;", 6), ("cupp", 1), ("cup ; cap)", 10), ("(cup", 5),
                                          ("cup[x]", 5), ("cup $", 5), ("", 1), ("id", 3), ("id -1", 4)])
def test_parse_errors(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos + 1 == column
    assert f"column {column}" in str(info.value)


def test_elaboration_errors():
    with pytest.raises(ElaborationError):
        evaluate("cup ; hf")
    z = evaluate("cup ; hf", strict=False)
    assert z.is_zero() and (z.source.k, z.target.k) == (0, 1)
    with pytest.raises(ElaborationError):
        evaluate("cup + hf")


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_print_parse_round_trip(seed):
    ast = random_expr(random.Random(seed), depth=4)
    assert parse(to_text(ast)) == ast


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_evaluation_is_consistent_with_printing(seed):
    ast = random_expr(random.Random(seed), depth=3)
    try:
        f = elaborate(ast)
    except ElaborationError:
        return
    assert evaluate(to_text(ast)) == f
