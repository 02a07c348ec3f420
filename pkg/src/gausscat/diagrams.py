"""The diagrammatic category I': objects Q^k[m], slice words, normal forms.

A diagram is a word of slices read bottom to top.  Each slice is one of the
non-identity elementary diagrams (cup, cap, half strand) placed at a strand
position, with vertical strands everywhere else.  Words are reduced by a
terminating rewriting system to a short irreducible shape, from which the
normal form ``(k, l, n)`` is read off.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple


class Gen(enum.Enum):
    CUP = "cup"
    CAP = "cap"
    HF = "hf"

    @property
    def arity_in(self) -> int:
        return 2 if self is Gen.CAP else 0

    @property
    def arity_out(self) -> int:
        return {Gen.CUP: 2, Gen.CAP: 0, Gen.HF: 1}[self]

    @property
    def degree(self) -> int:
        return {Gen.CUP: -1, Gen.CAP: 1, Gen.HF: 0}[self]


CUP, CAP, HF = Gen.CUP, Gen.CAP, Gen.HF


@dataclass(frozen=True, order=True)
class ObjQ:
    """The object Q^k[m]."""

    k: int
    m: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"negative strand count {self.k}")

    def shift(self, m: int) -> "ObjQ":
        return ObjQ(self.k, self.m + m)

    def tensor(self, other: "ObjQ") -> "ObjQ":
        return ObjQ(self.k + other.k, self.m + other.m)

    def __str__(self):
        return f"Q^{self.k}" + (f"[{self.m}]" if self.m else "")


UNIT = ObjQ(0, 0)


@dataclass(frozen=True)
class Slice:
    gen: Gen
    pos: int
    width: int  # strands below the slice

    def __post_init__(self):
        if self.pos < 1:
            raise ValueError("slice positions start at 1")
        if self.gen is CAP and self.pos + 1 > self.width:
            raise ValueError(f"cap at {self.pos} needs {self.pos + 1} strands, have {self.width}")
        if self.gen is not CAP and self.pos > self.width + 1:
            raise ValueError(f"{self.gen.value} at {self.pos} out of range for width {self.width}")

    @property
    def width_out(self) -> int:
        return self.width - self.gen.arity_in + self.gen.arity_out


@dataclass(frozen=True)
class DiagramWord:
    source: ObjQ
    target: ObjQ
    slices: Tuple[Slice, ...] = ()

    def __post_init__(self):
        w = self.source.k
        for s in self.slices:
            if s.width != w:
                raise ValueError(f"slice {s} does not chain from width {w}")
            w = s.width_out
        if w != self.target.k:
            raise ValueError(f"word ends at width {w}, target is {self.target}")

    @classmethod
    def build(cls, k: int, moves: Iterable[Tuple[Gen, int]], m_source: int = 0,
              m_target: Optional[int] = None) -> "DiagramWord":
        """Word from ``(gen, pos)`` pairs starting at ``k`` strands."""
        slices = []
        w = k
        for gen, pos in moves:
            s = Slice(gen, pos, w)
            slices.append(s)
            w = s.width_out
        if m_target is None:
            m_target = m_source
        return cls(ObjQ(k, m_source), ObjQ(w, m_target), tuple(slices))

    @property
    def moves(self) -> Tuple[Tuple[Gen, int], ...]:
        return tuple((s.gen, s.pos) for s in self.slices)

    @property
    def degree(self) -> int:
        return sum(s.gen.degree for s in self.slices) + self.source.m - self.target.m

    def then(self, other: "DiagramWord") -> "DiagramWord":
        """Stack ``other`` on top of ``self``."""
        return DiagramWord(self.source, other.target, self.slices + other.slices)


def core_degree(k: int, l: int) -> int:
    """Lowest degree of a nonzero map Q^k -> Q^l (unshifted)."""
    return k // 2 - l // 2 + (1 if k % 2 == 1 and l % 2 == 0 else 0)


@dataclass(frozen=True, order=True)
class NormalForm:
    k: int
    l: int
    n: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or self.n < 0:
            raise ValueError(f"invalid normal form {self}")

    @property
    def degree(self) -> int:
        return core_degree(self.k, self.l) + self.n

    def word(self) -> DiagramWord:
        return DiagramWord.build(self.k, canonical_moves(self.k, self.l, self.n))

    def name(self) -> str:
        return normal_form_name(self)


def canonical_moves(k: int, l: int, n: int) -> List[Tuple[Gen, int]]:
    """Caps on the left, then the parity core, then cups on the left."""
    bubble = [(HF, 1), (HF, 1), (CAP, 1)]
    moves = [(CAP, 1)] * (k // 2)
    if k % 2 == 1 and l % 2 == 0:
        moves += [(HF, 1), (CAP, 1)]
    moves += bubble * n
    if k % 2 == 0 and l % 2 == 1:
        moves += [(HF, 1)]
    moves += [(CUP, 1)] * (l // 2)
    return moves


def normal_form_name(nf: NormalForm) -> str:
    def power(sym, e):
        return sym if e == 1 else f"{sym}^{e}"

    ko, lo = nf.k % 2, nf.l % 2
    if ko == lo:
        core = power(f"alpha{ko}", nf.n) if nf.n else f"id{ko}"
    elif lo:
        core = "hf" + (" . " + power("alpha0", nf.n) if nf.n else "")
    else:
        core = (power("alpha0", nf.n) + " . " if nf.n else "") + "hfb"
    parts = []
    if nf.l // 2:
        parts.append(power("cup", nf.l // 2))
    if core != "id0" or not (nf.k or nf.l):
        parts.append(core)
    if nf.k // 2:
        parts.append(power("cap", nf.k // 2))
    return " . ".join(parts)


# ---------------------------------------------------------------------------
# rewriting

Moves = Tuple[Tuple[Gen, int], ...]


def _widths(k: int, moves: Sequence[Tuple[Gen, int]]) -> List[int]:
    ws = [k]
    for g, _ in moves:
        ws.append(ws[-1] - g.arity_in + g.arity_out)
    return ws


def _commute(lower: Tuple[Gen, int], upper: Tuple[Gen, int]):
    """Swap two adjacent slices touching disjoint strands, or None."""
    (x, p), (y, q) = lower, upper
    if q + y.arity_in <= p:
        return (y, q), (x, p - y.arity_in + y.arity_out)
    if q >= p + x.arity_out:
        return (y, q - x.arity_out + x.arity_in), (x, p)
    return None


# Oriented commutations: caps move down, cups move up, half strands sit between.
_ORIENTED = {(CUP, HF), (HF, CAP), (CUP, CAP)}


def redexes(k: int, moves: Moves) -> List[Tuple[str, int]]:
    """All enabled rule applications as ``(rule, index)``."""
    ws = _widths(k, moves)
    found = []
    for i, (g, p) in enumerate(moves):
        if p > 1:
            found.append(("sideways", i))
    for i in range(len(moves) - 1):
        (x, p), (y, q) = moves[i], moves[i + 1]
        if x is CUP and y is CAP:
            if q == p:
                found.append(("loop", i))
            elif abs(q - p) == 1:
                found.append(("zigzag", i))
        if x is CAP and y is CUP and q == p:
            found.append(("inverse", i))
        if (x, y) in _ORIENTED and _commute(moves[i], moves[i + 1]) is not None:
            found.append(("commute", i))
        if x is HF and y is CAP and q in (p - 1, p) and ws[i] >= 2:
            found.append(("hf-cap", i))
    for i, mv in enumerate(moves):
        if mv == (CAP, 1):
            j = i + 1
            while j < len(moves) and moves[j] == (HF, 1):
                j += 1
            if j > i + 1 and j < len(moves) and moves[j] == (CUP, 1):
                found.append(("inverse-across", i))
    return found


def apply_rule(k: int, moves: Moves, rule: str, i: int) -> Moves:
    m = list(moves)
    if rule == "sideways":
        g, p = m[i]
        m[i] = (g, p - 1)
    elif rule in ("loop", "zigzag", "inverse"):
        del m[i:i + 2]
    elif rule == "commute":
        lo, up = _commute(m[i], m[i + 1])
        m[i], m[i + 1] = lo, up
    elif rule == "inverse-across":
        # cap; hf^j; cup  ->  hf^j: slide the cup down (half-strand slide, then commute), then cancel
        j = i + 1
        while m[j] == (HF, 1):
            j += 1
        del m[j]
        del m[i]
    elif rule == "hf-cap":
        # slide the half strand off the cap, then commute past it
        m[i], m[i + 1] = (CAP, 1), (HF, 1)
    else:
        raise ValueError(f"unknown rule {rule}")
    return tuple(m)


_CORE_SHAPES = {
    0: re.compile(r"(HHA)*H*"),
    1: re.compile(r"(HAH)*(HA|H*)"),
}


def _read_off(k: int, moves: Moves) -> NormalForm:
    """Normal form of an irreducible word; raises if the word has an unexpected shape."""
    if any(p != 1 for _, p in moves):
        raise RuntimeError(f"irreducible word has off-left slices: {moves}")
    types = "".join({CAP: "A", CUP: "C", HF: "H"}[g] for g, _ in moves)
    l = _widths(k, moves)[-1]
    body = types.lstrip("A")
    a0 = len(types) - len(body)
    core = body.rstrip("C")
    w0 = k - 2 * a0
    shape = re.compile(r"H*") if w0 >= 2 else _CORE_SHAPES[w0]
    if not shape.fullmatch(core):
        raise RuntimeError(f"unexpected irreducible word {types} from width {k}")
    hfs = core.count("H")
    return NormalForm(k, l, (hfs - (k + l) % 2) // 2)


Strategy = Callable[[List[Tuple[str, int]]], Tuple[str, int]]


def first_redex(found):
    return found[0]


def reduce_moves(k: int, moves: Sequence[Tuple[Gen, int]],
                 choose: Strategy = first_redex) -> Moves:
    """Rewrite until no rule applies."""
    moves = tuple(moves)
    while True:
        found = redexes(k, moves)
        if not found:
            return moves
        moves = apply_rule(k, moves, *choose(found))


@lru_cache(maxsize=None)
def _normal_form(k: int, moves: Moves) -> NormalForm:
    return _read_off(k, reduce_moves(k, moves))


def normal_form_of(word: DiagramWord, choose: Optional[Strategy] = None) -> NormalForm:
    if choose is None:
        return _normal_form(word.source.k, word.moves)
    return _read_off(word.source.k, reduce_moves(word.source.k, word.moves, choose))


def random_strategy(rng: random.Random) -> Strategy:
    return lambda found: rng.choice(found)


def random_word(rng: random.Random, max_width: int = 5, max_length: int = 8,
                k: Optional[int] = None) -> DiagramWord:
    """Random word of at most ``max_length`` slices staying within ``max_width`` strands."""
    if k is None:
        k = rng.randint(0, max_width)
    w = k
    moves = []
    for _ in range(rng.randint(0, max_length)):
        options = [(g, p) for g in (CUP, CAP, HF)
                   for p in range(1, w - g.arity_in + 2)
                   if w - g.arity_in + g.arity_out <= max_width]
        if not options:
            break
        g, p = rng.choice(options)
        moves.append((g, p))
        w = w - g.arity_in + g.arity_out
    return DiagramWord.build(k, moves)


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """A GF(2)-combination of normal forms in Hom(source, target)."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: ObjQ, target: ObjQ, terms: Iterable[NormalForm] = ()):
        terms = frozenset(terms)
        for t in terms:
            if (t.k, t.l) != (source.k, target.k):
                raise ValueError(f"term {t} does not live in Hom({source}, {target})")
        self.source = source
        self.target = target
        self.terms: FrozenSet[NormalForm] = terms

    def __repr__(self):
        return f"Morphism({self.source}, {self.target}, {sorted(self.terms)})"

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __hash__(self):
        return hash((self.source, self.target, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> FrozenSet[NormalForm]:
        return self.terms

    @property
    def shift_offset(self) -> int:
        return self.source.m - self.target.m

    @property
    def degree(self) -> Optional[int]:
        """Degree after shifts, or None for zero / inhomogeneous morphisms."""
        degs = {t.degree for t in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop() + self.shift_offset

    def degrees(self) -> FrozenSet[int]:
        return frozenset(t.degree + self.shift_offset for t in self.terms)

    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.source.k, self.target.k) != (other.source.k, other.target.k):
            raise ValueError("cannot add morphisms between different objects")
        return Morphism(self.source, self.target, self.terms ^ other.terms)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def with_ends(self, source: ObjQ, target: ObjQ) -> "Morphism":
        return Morphism(source, target, self.terms)

    def shift(self, m: int) -> "Morphism":
        return Morphism(self.source.shift(m), self.target.shift(m), self.terms)

    def tensor(self, other: "Morphism") -> "Morphism":
        return tensor(self, other)


def normalize(word: DiagramWord) -> Morphism:
    return Morphism(word.source, word.target, [normal_form_of(word)])


def zero(source: ObjQ, target: ObjQ) -> Morphism:
    return Morphism(source, target)


def identity(obj) -> Morphism:
    if isinstance(obj, int):
        obj = ObjQ(obj)
    return Morphism(obj, obj, [NormalForm(obj.k, obj.k, 0)])


def basic(k: int, l: int, n: int = 0) -> Morphism:
    return Morphism(ObjQ(k), ObjQ(l), [NormalForm(k, l, n)])


def cup() -> Morphism:
    return basic(0, 2)


def cap() -> Morphism:
    return basic(2, 0)


def hf() -> Morphism:
    return basic(0, 1)


def hfb() -> Morphism:
    """Opposite half strand, realised as cap . (hf (x) id_Q)."""
    return normalize(DiagramWord.build(1, [(HF, 1), (CAP, 1)]))


def alpha0() -> Morphism:
    return compose(hfb(), hf())


def alpha1() -> Morphism:
    return tensor(alpha0(), identity(1))


@lru_cache(maxsize=None)
def _compose_nf(g: NormalForm, f: NormalForm) -> NormalForm:
    return _normal_form(f.k, tuple(canonical_moves(f.k, f.l, f.n) + canonical_moves(g.k, g.l, g.n)))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g . f``; zero when the strand counts do not match."""
    if f.target.k != g.source.k:
        return zero(f.source, g.target)
    out = set()
    for a in f.terms:
        for b in g.terms:
            out ^= {_compose_nf(b, a)}
    return Morphism(f.source, g.target, out)


def _shifted(moves: Sequence[Tuple[Gen, int]], by: int) -> List[Tuple[Gen, int]]:
    return [(g, p + by) for g, p in moves]


@lru_cache(maxsize=None)
def _tensor_nf(a: NormalForm, b: NormalForm) -> NormalForm:
    # id (x) b first, then a (x) id
    moves = _shifted(canonical_moves(b.k, b.l, b.n), a.k) + canonical_moves(a.k, a.l, a.n)
    return _normal_form(a.k + b.k, tuple(moves))


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """Horizontal juxtaposition with ``f`` on the left."""
    out = set()
    for a in f.terms:
        for b in g.terms:
            out ^= {_tensor_nf(a, b)}
    return Morphism(f.source.tensor(g.source), f.target.tensor(g.target), out)


def hom_basis(k: int, l: int, d: int) -> List[NormalForm]:
    """Basis of Hom^d(Q^k, Q^l): one normal form from the lowest degree up."""
    n = d - core_degree(k, l)
    return [NormalForm(k, l, n)] if n >= 0 else []


class IPrimeBase:
    """Adapter exposing I' to the twisted-complex machinery."""

    name = "I'"

    def hom_basis(self, a: ObjQ, b: ObjQ, d: int) -> List[Morphism]:
        return [Morphism(a, b, [nf]) for nf in hom_basis(a.k, b.k, d - a.m + b.m)]

    def zero(self, a: ObjQ, b: ObjQ) -> Morphism:
        return zero(a, b)

    def identity(self, a: ObjQ) -> Morphism:
        return identity(a)

    def tensor_objects(self, a: ObjQ, b: ObjQ) -> ObjQ:
        return a.tensor(b)

    def tensor_morphisms(self, f: Morphism, g: Morphism) -> Morphism:
        return tensor(f, g)


IPRIME = IPrimeBase()
