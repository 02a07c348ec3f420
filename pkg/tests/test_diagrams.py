import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscat import diagrams as D
from gausscat.diagrams import CAP, CUP, HF, DiagramWord, NormalForm, ObjQ
from gausscat.verify import reachable_forms, relation_instances


def words(max_width=5, max_length=8):
    return st.integers(0, 2**32 - 1).map(lambda s: D.random_word(random.Random(s), max_width, max_length))


def test_objects():
    assert D.UNIT == ObjQ(0, 0)
    assert str(ObjQ(2, -1)) == "Q^2[-1]"
    assert ObjQ(1).tensor(ObjQ(2, 1)) == ObjQ(3, 1)
    with pytest.raises(ValueError):
        ObjQ(-1)


def test_slice_positions_are_checked():
    with pytest.raises(ValueError):
        DiagramWord.build(1, [(CAP, 1)])
    with pytest.raises(ValueError):
        DiagramWord.build(1, [(CUP, 3)])
    assert DiagramWord.build(1, [(CUP, 2)]).target == ObjQ(3)


def test_word_degree():
    w = DiagramWord.build(0, [(CUP, 1), (HF, 1), (CAP, 2)], m_source=2, m_target=0)
    assert w.target == ObjQ(1, 0)
    assert w.degree == 1 - 1 + 2 - 0


@pytest.mark.parametrize("k, moves, expected", [
    (1, [], NormalForm(1, 1, 0)),
    (0, [(CUP, 1), (CAP, 1)], NormalForm(0, 0, 0)),
    (0, [(HF, 1), (HF, 2), (CAP, 1)], NormalForm(0, 0, 1)),
])
def test_normalize_examples(k, moves, expected):
    assert D.normalize(DiagramWord.build(k, moves)).terms == {expected}


def test_compose_examples():
    assert D.compose(D.cap(), D.cup()) == D.identity(0)
    assert D.compose(D.cup(), D.cap()) == D.identity(2)
    a0 = D.compose(D.hfb(), D.hf())
    assert a0 == D.alpha0() and a0.degree == 1


def test_compose_mismatch_is_zero():
    z = D.compose(D.cap(), D.hf())
    assert z.is_zero() and z.source == ObjQ(0) and z.target == ObjQ(0)


def test_compose_adds_shifts():
    f = D.hf().with_ends(ObjQ(0, 1), ObjQ(1, 0))
    g = D.hfb().with_ends(ObjQ(1, 0), ObjQ(0, 3))
    h = g @ f
    assert (h.source, h.target) == (ObjQ(0, 1), ObjQ(0, 3))
    assert h.degree == 1 + 1 - 3


def test_tensor_examples():
    assert D.tensor(D.identity(1), D.identity(1)) == D.identity(2)
    assert D.tensor(D.hf(), D.identity(1)) == D.tensor(D.identity(1), D.hf())
    assert D.tensor(D.cup(), D.identity(1)) == D.tensor(D.identity(1), D.cup())
    assert D.tensor(D.alpha0(), D.identity(1)) == D.alpha1()


def test_hom_basis_examples():
    assert [D.normal_form_name(nf) for n in range(4) for nf in D.hom_basis(0, 0, n)] == \
        ["id0", "alpha0", "alpha0^2", "alpha0^3"]
    assert D.hom_basis(1, 0, 0) == []
    assert D.hom_basis(2, 0, 1) == [NormalForm(2, 0, 0)]
    assert D.normal_form_name(NormalForm(2, 0, 0)) == "cap"
    assert D.hom_basis(0, 0, -1) == []


@pytest.mark.parametrize("k, l, dmin", [(0, 0, 0), (1, 0, 1), (0, 1, 0), (1, 1, 0), (2, 0, 1), (0, 2, -1),
                                        (3, 0, 2), (4, 1, 2), (1, 4, -1)])
def test_core_degree(k, l, dmin):
    assert D.core_degree(k, l) == dmin
    assert NormalForm(k, l, 3).degree == dmin + 3


def test_canonical_words_are_normal():
    for k, l, n in itertools.product(range(5), range(5), range(3)):
        if (k + l) % 2:
            continue
        nf = NormalForm(k, l, n)
        assert D.normal_form_of(nf.word()) == nf
        assert nf.word().degree == nf.degree


def test_relation_instances():
    seen = set()
    for name, lhs, rhs in relation_instances():
        if rhs is None:
            continue
        seen.add(name)
        assert D.normalize(lhs) == D.normalize(rhs), (name, lhs.moves, rhs.moves)
    assert seen == {"interchange", "zigzag", "loop", "half-strand-slide", "inverse", "cup-slide", "cap-slide"}


def _brute_forms(k, length, max_width):
    """Every word from Q^k up to ``length`` slices, normalized one by one."""
    out = set()
    frontier = [[]]
    for _ in range(length + 1):
        nxt = []
        for moves in frontier:
            w = DiagramWord.build(k, moves)
            out.add(D.normal_form_of(w))
            width = w.target.k
            for g in (CUP, CAP, HF):
                if width - g.arity_in + g.arity_out > max_width:
                    continue
                for p in range(1, width - g.arity_in + 2):
                    nxt.append(moves + [(g, p)])
        frontier = nxt
    return out


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_reachable_forms_match_brute_force(k):
    brute = _brute_forms(k, 4, 6)
    assert brute == set(reachable_forms(k, 4, 6))


def test_short_words_reach_low_degrees_only():
    # degrees of words Q^0 -> Q^0 of length <= 8 stop at 2 (alpha0^2 needs 6 slices, alpha0^3 needs 9)
    reached = sorted(nf.degree for nf in reachable_forms(0, 8) if nf.l == 0)
    assert reached == [0, 1, 2]


@settings(max_examples=300, deadline=None)
@given(words())
def test_normal_form_counts(w):
    # the half-strand count and the degree pin down the normal form
    nf = D.normal_form_of(w)
    hfs = sum(1 for s in w.slices if s.gen is HF)
    k, l = w.source.k, w.target.k
    assert (nf.k, nf.l) == (k, l)
    assert nf.n == (hfs - (k + l) % 2) // 2
    assert nf.degree == w.degree


@settings(max_examples=200, deadline=None)
@given(words(), st.integers(0, 2**32 - 1))
def test_rewriting_order_does_not_matter(w, seed):
    strategy = D.random_strategy(random.Random(seed))
    assert D.normal_form_of(w, strategy) == D.normal_form_of(w)
    assert D.reduce_moves(w.source.k, w.moves, strategy) == D.reduce_moves(w.source.k, w.moves)


@settings(max_examples=150, deadline=None)
@given(words(4, 6), words(4, 6), words(3, 5))
def test_compose_and_tensor(f_word, g_word, h_word):
    f, h = D.normalize(f_word), D.normalize(h_word)
    g = D.normalize(g_word)
    if g.source.k == f.target.k:
        gf = g @ f
        assert gf.degree == g.degree + f.degree
        assert gf == D.normalize(f_word.then(g_word))
    fh = D.tensor(f, h)
    assert fh.degree == f.degree + h.degree
    assert fh.source == ObjQ(f.source.k + h.source.k)


def test_morphism_arithmetic():
    a = D.alpha0()
    assert (a + a).is_zero()
    assert (a + D.identity(0)).degree is None
    assert (a + D.identity(0)).degrees() == {0, 1}
    with pytest.raises(ValueError):
        a + D.hf()


def test_iprime_base_adapter():
    base = D.IPRIME
    assert base.hom_basis(ObjQ(0, 1), ObjQ(0, 0), 1) == [D.identity(0).with_ends(ObjQ(0, 1), ObjQ(0, 0))]
    assert base.hom_basis(ObjQ(0), ObjQ(0), 1) == [D.alpha0()]
    assert base.tensor_objects(ObjQ(1, 1), ObjQ(1, 2)) == ObjQ(2, 3)
