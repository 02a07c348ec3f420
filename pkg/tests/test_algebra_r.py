import itertools

import pytest

from gausscat.algebra_r import DEGREE, LEFT, MULT, PATHS, RIGHT, UNIT, PathElement, element, graded_dimension


def concat_oracle(p, q):
    """Multiply by concatenating arrow words; length three or more vanishes."""
    word = {"ex": "", "ey": "", "a": "a", "b": "b", "ab": "ab", "ba": "ba"}
    if RIGHT[p] != LEFT[q]:
        return None
    w = word[p] + word[q]
    if len(w) >= 3:
        return None
    if any(x == y for x, y in zip(w, w[1:])):
        return None
    return w or p


@pytest.mark.parametrize("p, q, r", [("a", "b", "ab"), ("b", "a", "ba"), ("ab", "a", None), ("ex", "a", "a"),
                                     ("a", "ey", "a"), ("a", "ex", None), ("ba", "b", None), ("b", "b", None)])
def test_products(p, q, r):
    prod = PathElement(p) * PathElement(q)
    assert prod == (PathElement(r) if r else PathElement())


def test_table_matches_concatenation():
    for p, q in itertools.product(PATHS, repeat=2):
        expected = concat_oracle(p, q)
        got = PathElement(p) * PathElement(q)
        assert got == (PathElement(expected) if expected else PathElement())


def test_associative_and_unital():
    for p, q, r in itertools.product(PATHS, repeat=3):
        x, y, z = PathElement(p), PathElement(q), PathElement(r)
        assert (x * y) * z == x * (y * z)
    for p in PATHS:
        assert UNIT * PathElement(p) == p and PathElement(p) * UNIT == p


def test_degrees():
    assert graded_dimension() == {0: 3, 1: 3}
    assert sorted(p for p in PATHS if DEGREE[p] == 0) == ["a", "ex", "ey"]
    for p, q in itertools.product(PATHS, repeat=2):
        prod = PathElement(p) * PathElement(q)
        if not prod.is_zero():
            assert prod.degree == DEGREE[p] + DEGREE[q]


def test_table_is_read_only():
    assert MULT.shape == (6, 6, 6)
    with pytest.raises(ValueError):
        MULT[0, 0, 0] = 0


def test_element_arithmetic():
    x = element("a", "b")
    assert (x + x).is_zero()
    assert x * x == element("ab", "ba")
    assert x.degree is None and element("b", "ab").degree == 1
    assert str(element("ba", "ex")) == "ex + ba"
    with pytest.raises(ValueError):
        PathElement("c")
    assert PathElement.from_vector(x.vector()) == x
