"""One-sided twisted complexes over an additive DG category with zero differential.

The base category is pluggable: ``diagrams.IPRIME`` for I', or
``modules_r.PROJECTIVES`` for the projective R-modules.  A base supplies
``hom_basis(a, b, d)``, ``zero(a, b)`` and ``identity(a)``; its morphisms
support ``@`` (composition), ``+``, ``is_zero()``, ``degrees()``,
``support()`` and ``with_ends(a, b)``, and its objects support ``shift(m)``.

Everything is over GF(2), so the differential and cone twists carry no signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .diagrams import IPRIME, ObjQ

Index = Tuple[int, int]


@dataclass(frozen=True)
class GaussInt:
    """Element re + im*i of Z[i]."""

    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return self + (-other)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def __pow__(self, e: int) -> "GaussInt":
        out = GaussInt(1, 0)
        for _ in range(e):
            out = out * self
        return out

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        if self.re == 0:
            return im
        return f"{self.re}{'+' if self.im > 0 else ''}{im}"


I_UNIT = GaussInt(0, 1)


@dataclass(frozen=True)
class Violation:
    kind: str  # "one-sided", "endpoints", "degree" or "maurer-cartan"
    i: int
    j: int
    detail: str = ""


class TwistedComplex:
    """Terms a_0..a_{n-1} with a strictly upper-triangular degree-1 twist."""

    def __init__(self, terms: Sequence, twist: Optional[Dict[Index, object]] = None, base=IPRIME):
        self.terms = tuple(terms)
        self.twist = {ij: f for ij, f in (twist or {}).items() if not f.is_zero()}
        self.base = base

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        tw = ", ".join(f"{i}->{j}: {sorted(f.support())}" for (i, j), f in sorted(self.twist.items()))
        return f"TwistedComplex([{', '.join(map(str, self.terms))}]; {tw})"

    def __eq__(self, other):
        if not isinstance(other, TwistedComplex):
            return NotImplemented
        return self.terms == other.terms and self.twist == other.twist

    def component(self, i: int, j: int):
        f = self.twist.get((i, j))
        return f if f is not None else self.base.zero(self.terms[i], self.terms[j])


def single(obj, base=IPRIME) -> TwistedComplex:
    return TwistedComplex([obj], {}, base)


def validate(x: TwistedComplex) -> Optional[Violation]:
    """First violated condition, or None if ``x`` is a valid twisted complex."""
    for (i, j), f in sorted(x.twist.items()):
        if i >= j:
            return Violation("one-sided", i, j, "twist must point to a later term")
        if f.source != x.terms[i] or f.target != x.terms[j]:
            return Violation("endpoints", i, j, f"{f.source} -> {f.target}")
        if f.degrees() != {1}:
            return Violation("degree", i, j, f"degrees {sorted(f.degrees())}, expected 1")
    n = len(x)
    for i in range(n):
        for j in range(i + 2, n):
            acc = x.base.zero(x.terms[i], x.terms[j])
            for k in range(i + 1, j):
                if (i, k) in x.twist and (k, j) in x.twist:
                    acc = acc + (x.twist[k, j] @ x.twist[i, k])
            if not acc.is_zero():
                return Violation("maurer-cartan", i, j, f"sum of composites is {sorted(acc.support())}")
    return None


def shift(x: TwistedComplex, m: int) -> TwistedComplex:
    terms = [a.shift(m) for a in x.terms]
    twist = {(i, j): f.with_ends(terms[i], terms[j]) for (i, j), f in x.twist.items()}
    return TwistedComplex(terms, twist, x.base)


def tensor(x: TwistedComplex, y: TwistedComplex) -> TwistedComplex:
    """Monoidal product; terms ordered by (i + j, i)."""
    base = x.base
    order = sorted(((i, j) for i in range(len(x)) for j in range(len(y))), key=lambda p: (p[0] + p[1], p[0]))
    pos = {p: t for t, p in enumerate(order)}
    terms = [base.tensor_objects(x.terms[i], y.terms[j]) for i, j in order]
    twist: Dict[Index, object] = {}
    for (i, i2), f in x.twist.items():
        for j in range(len(y)):
            twist[pos[i, j], pos[i2, j]] = base.tensor_morphisms(f, base.identity(y.terms[j]))
    for (j, j2), g in y.twist.items():
        for i in range(len(x)):
            twist[pos[i, j], pos[i, j2]] = base.tensor_morphisms(base.identity(x.terms[i]), g)
    return TwistedComplex(terms, twist, base)


def gauss_class(x: TwistedComplex) -> GaussInt:
    """Class in K_0 of a complex over I': sum of (-1)^m i^k over terms Q^k[m]."""
    total = GaussInt()
    for a in x.terms:
        if not isinstance(a, ObjQ):
            raise TypeError("gauss_class needs a complex over I'")
        term = I_UNIT ** a.k
        total = total + (term if a.m % 2 == 0 else -term)
    return total


class TwMorphism:
    """Components h[i, j]: x.terms[i] -> y.terms[j], homogeneous of one degree."""

    def __init__(self, source: TwistedComplex, target: TwistedComplex,
                 components: Optional[Dict[Index, object]] = None, degree: int = 0):
        self.source = source
        self.target = target
        self.degree = degree
        self.components = {ij: h for ij, h in (components or {}).items() if not h.is_zero()}
        for (i, j), h in self.components.items():
            if h.source != source.terms[i] or h.target != target.terms[j]:
                raise ValueError(f"component ({i}, {j}) has wrong endpoints")
            if h.degrees() != {degree}:
                raise ValueError(f"component ({i}, {j}) has degrees {sorted(h.degrees())}, expected {degree}")

    def __repr__(self):
        comps = ", ".join(f"{i}->{j}: {sorted(h.support())}" for (i, j), h in sorted(self.components.items()))
        return f"TwMorphism(deg {self.degree}; {comps})"

    def __eq__(self, other):
        if not isinstance(other, TwMorphism):
            return NotImplemented
        return self.components == other.components and self.degree == other.degree

    def is_zero(self) -> bool:
        return not self.components

    def component(self, i: int, j: int):
        h = self.components.get((i, j))
        return h if h is not None else self.source.base.zero(self.source.terms[i], self.target.terms[j])

    def __add__(self, other: "TwMorphism") -> "TwMorphism":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add morphisms of different degrees")
        comps = dict(self.components)
        for ij, h in other.components.items():
            comps[ij] = comps[ij] + h if ij in comps else h
        return TwMorphism(self.source, self.target, comps, self.degree)

    def __matmul__(self, other: "TwMorphism") -> "TwMorphism":
        """``self . other``."""
        comps: Dict[Index, object] = {}
        for (i, j), h in other.components.items():
            for (j2, l), k in self.components.items():
                if j2 == j:
                    c = k @ h
                    comps[i, l] = comps[i, l] + c if (i, l) in comps else c
        return TwMorphism(other.source, self.target, comps, self.degree + other.degree)


def zero_morphism(x: TwistedComplex, y: TwistedComplex, degree: int = 0) -> TwMorphism:
    return TwMorphism(x, y, {}, degree)


def identity_morphism(x: TwistedComplex) -> TwMorphism:
    return TwMorphism(x, x, {(i, i): x.base.identity(a) for i, a in enumerate(x.terms)}, 0)


def differential(h: TwMorphism) -> TwMorphism:
    """d(h) = h . f + g . h, with f, g the twists of source and target."""
    x, y = h.source, h.target
    comps: Dict[Index, object] = {}

    def add(ij, c):
        comps[ij] = comps[ij] + c if ij in comps else c

    for (i2, j), hc in h.components.items():
        for (i, i3), f in x.twist.items():
            if i3 == i2:
                add((i, j), hc @ f)
    for (i, j2), hc in h.components.items():
        for (j3, j), g in y.twist.items():
            if j3 == j2:
                add((i, j), g @ hc)
    return TwMorphism(x, y, comps, h.degree + 1)


def is_closed(h: TwMorphism) -> bool:
    return differential(h).is_zero()


class NotClosed(ValueError):
    pass


def cone(h: TwMorphism) -> TwistedComplex:
    """Cone(h) = x[1] followed by y, with h as the cross twist."""
    if h.degree != 0:
        raise ValueError("cone needs a degree-0 morphism")
    if not is_closed(h):
        raise NotClosed("cone needs a closed morphism")
    x1 = shift(h.source, 1)
    y = h.target
    n = len(x1)
    terms = list(x1.terms) + list(y.terms)
    twist: Dict[Index, object] = dict(x1.twist)
    for (i, j), g in y.twist.items():
        twist[n + i, n + j] = g
    for (i, j), c in h.components.items():
        twist[i, n + j] = c.with_ends(terms[i], terms[n + j])
    return TwistedComplex(terms, twist, y.base)


def hom_basis(x: TwistedComplex, y: TwistedComplex, degree: int) -> List[TwMorphism]:
    """Basis of the degree-``degree`` part of Hom(x, y), one component at a time."""
    out = []
    for i, a in enumerate(x.terms):
        for j, b in enumerate(y.terms):
            for f in x.base.hom_basis(a, b, degree):
                out.append(TwMorphism(x, y, {(i, j): f}, degree))
    return out


def _coordinates(maps: Iterable[TwMorphism]) -> Tuple[List[tuple], np.ndarray]:
    maps = list(maps)
    keys = sorted({(i, j, repr(s)) for h in maps for (i, j), c in h.components.items() for s in c.support()})
    index = {k: t for t, k in enumerate(keys)}
    mat = gf2.zeros(len(keys), len(maps))
    for col, h in enumerate(maps):
        for (i, j), c in h.components.items():
            for s in c.support():
                mat[index[i, j, repr(s)], col] ^= 1
    return keys, mat


def _combine(basis: Sequence[TwMorphism], coeffs, x, y, degree) -> TwMorphism:
    out = zero_morphism(x, y, degree)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b
    return out


def closed_morphisms(x: TwistedComplex, y: TwistedComplex, degree: int = 0) -> List[TwMorphism]:
    """Basis of the closed morphisms of the given degree."""
    basis = hom_basis(x, y, degree)
    if not basis:
        return []
    images = [differential(b) for b in basis]
    keys, mat = _coordinates(images)
    if not keys:
        return basis
    return [_combine(basis, v, x, y, degree) for v in gf2.kernel(mat)]


def are_homotopic(h1: TwMorphism, h2: TwMorphism) -> Optional[TwMorphism]:
    """A homotopy s with d(s) = h1 + h2, or None if there is none."""
    x, y = h1.source, h1.target
    target = h1 + h2
    degree = h1.degree if not h1.is_zero() else h2.degree
    basis = hom_basis(x, y, degree - 1)
    if target.is_zero():
        return zero_morphism(x, y, degree - 1)
    images = [differential(b) for b in basis]
    keys, mat = _coordinates(images + [target])
    sol, _ = gf2.solve(mat[:, :-1], mat[:, -1])
    if sol is None:
        return None
    s = _combine(basis, sol, x, y, degree - 1)
    assert differential(s) == target
    return s
