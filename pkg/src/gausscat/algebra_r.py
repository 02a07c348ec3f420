"""The six-dimensional algebra R of the two-vertex quiver x <-> y.

Arrows ``a`` (x to y) and ``b`` (y to x) with ``aba = bab = 0``.  A path is
written left to right, so ``e_x a = a e_y = a``.  Everything sits in degree 0
except ``b``, ``ab`` and ``ba``, which have degree 1.  The differential is zero.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Optional, Union

import numpy as np

PATHS = ("ex", "ey", "a", "b", "ab", "ba")
INDEX = {p: i for i, p in enumerate(PATHS)}
GENERATORS = ("ex", "ey", "a", "b")

# (left vertex, right vertex, word)
_SHAPE = {
    "ex": ("x", "x", ""),
    "ey": ("y", "y", ""),
    "a": ("x", "y", "a"),
    "b": ("y", "x", "b"),
    "ab": ("x", "x", "ab"),
    "ba": ("y", "y", "ba"),
}
LEFT = {p: s[0] for p, s in _SHAPE.items()}
RIGHT = {p: s[1] for p, s in _SHAPE.items()}
DEGREE = {p: s[2].count("b") for p, s in _SHAPE.items()}
IDEMPOTENT = {"x": "ex", "y": "ey"}


def _path_product(p: str, q: str) -> Optional[str]:
    if RIGHT[p] != LEFT[q]:
        return None
    word = _SHAPE[p][2] + _SHAPE[q][2]
    if len(word) > 2:
        return None  # aba, bab and longer paths vanish
    if not word:
        return p
    return word


def _build_table() -> np.ndarray:
    table = np.zeros((6, 6, 6), dtype=np.uint8)
    for p in PATHS:
        for q in PATHS:
            r = _path_product(p, q)
            if r is not None:
                table[INDEX[p], INDEX[q], INDEX[r]] = 1
    table.setflags(write=False)
    return table


# table[i, j, k] = coefficient of path k in path_i * path_j
MULT = _build_table()


def path_product(p: str, q: str) -> Optional[str]:
    """Product of two basis paths, or None when it is zero."""
    hits = np.flatnonzero(MULT[INDEX[p], INDEX[q]])
    return PATHS[hits[0]] if hits.size else None


class PathElement:
    """A GF(2)-linear combination of the six basis paths."""

    __slots__ = ("paths",)

    def __init__(self, paths: Union[str, Iterable[str]] = ()):
        if isinstance(paths, str):
            paths = [paths]
        acc = set()
        for p in paths:
            if p not in INDEX:
                raise ValueError(f"unknown path {p!r}")
            acc ^= {p}
        self.paths: FrozenSet[str] = frozenset(acc)

    @classmethod
    def from_vector(cls, vec) -> "PathElement":
        return cls(PATHS[i] for i in np.flatnonzero(np.asarray(vec) & 1))

    def vector(self) -> np.ndarray:
        v = np.zeros(6, dtype=np.uint8)
        for p in self.paths:
            v[INDEX[p]] = 1
        return v

    def __repr__(self):
        return "PathElement(" + (" + ".join(self.sorted_paths()) or "0") + ")"

    def __str__(self):
        return " + ".join(self.sorted_paths()) or "0"

    def sorted_paths(self):
        return sorted(self.paths, key=INDEX.get)

    def __eq__(self, other):
        if isinstance(other, str):
            other = PathElement(other)
        if not isinstance(other, PathElement):
            return NotImplemented
        return self.paths == other.paths

    def __hash__(self):
        return hash(self.paths)

    def __add__(self, other: "PathElement") -> "PathElement":
        return PathElement(self.paths.symmetric_difference(other.paths))

    def __mul__(self, other: "PathElement") -> "PathElement":
        v = np.einsum("i,j,ijk->k", self.vector().astype(np.int64), other.vector().astype(np.int64), MULT)
        return PathElement.from_vector(v % 2)

    def is_zero(self) -> bool:
        return not self.paths

    def support(self) -> FrozenSet[str]:
        return self.paths

    @property
    def degree(self) -> Optional[int]:
        degs = {DEGREE[p] for p in self.paths}
        return degs.pop() if len(degs) == 1 else None


def element(*paths: str) -> PathElement:
    return PathElement(paths)


UNIT = PathElement(["ex", "ey"])


def graded_dimension() -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in PATHS:
        out[DEGREE[p]] = out.get(DEGREE[p], 0) + 1
    return dict(sorted(out.items()))
