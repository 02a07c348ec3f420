"""Finite-dimensional graded left R-modules and the projectives P(x), P(y).

Action matrices act on column vectors: ``left["a"][:, v]`` is ``a . v``
expanded in the module basis.  Shifting follows deg_{M[1]}(v) = deg_M(v) - 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .algebra_r import DEGREE, GENERATORS, IDEMPOTENT, LEFT, PATHS, RIGHT, PathElement, path_product


def _path_word(p: str) -> str:
    return "" if p in ("ex", "ey") else p


class GradedModule:
    """Left R-module with a basis of vertex-homogeneous, degree-homogeneous vectors."""

    def __init__(self, labels: Sequence[str], vertices: Sequence[str], degrees: Sequence[int],
                 left: Dict[str, np.ndarray], weights: Optional[Sequence[int]] = None, name: str = ""):
        self.labels = tuple(labels)
        self.vertices = tuple(vertices)
        self.degrees = tuple(int(d) for d in degrees)
        self.left = {g: gf2.as_gf2(left[g]) for g in GENERATORS}
        self.weights = tuple(weights) if weights is not None else (0,) * len(self.labels)
        self.name = name
        n = len(self.labels)
        if not (len(self.vertices) == len(self.degrees) == n):
            raise ValueError("basis data have different lengths")
        for g, mat in self.left.items():
            if mat.shape != (n, n):
                raise ValueError(f"action of {g} has shape {mat.shape}, expected {(n, n)}")

    def __repr__(self):
        return f"{type(self).__name__}({self.name or self.labels})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def left_path(self, p: str) -> np.ndarray:
        """Matrix of v -> p . v."""
        word = _path_word(p)
        if not word:
            return self.left[p]
        out = gf2.identity(self.dim)
        for ch in reversed(word):
            out = gf2.matmul(self.left[ch], out)
        return out

    def graded_dimension(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def dim_by_vertex(self) -> Tuple[int, int]:
        return (self.vertices.count("x"), self.vertices.count("y"))

    def graded_vertex_dimension(self) -> Dict[Tuple[str, int], int]:
        out: Dict[Tuple[str, int], int] = {}
        for v, d in zip(self.vertices, self.degrees):
            out[v, d] = out.get((v, d), 0) + 1
        return out

    def shift(self, m: int) -> "GradedModule":
        return GradedModule(self.labels, self.vertices, [d - m for d in self.degrees], self.left,
                            self.weights, _shift_name(self.name, m))

    def relation_failures(self) -> List[str]:
        """Every way the left action fails to be an R-action (empty if it is one)."""
        return _action_failures(self.dim, self.vertices, self.degrees, self.left_path, "left")

    def check(self) -> "GradedModule":
        failures = self.relation_failures()
        if failures:
            raise ValueError(f"{self!r} is not an R-module: {failures[:3]}")
        return self

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "basis": [{"label": l, "vertex": v, "deg": d}
                      for l, v, d in zip(self.labels, self.vertices, self.degrees)],
            "action": {g: self.left[g].tolist() for g in GENERATORS},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedModule":
        basis = data["basis"]
        return cls([b["label"] for b in basis], [b["vertex"] for b in basis], [b["deg"] for b in basis],
                   {g: np.array(data["action"][g], dtype=np.uint8).reshape(len(basis), len(basis))
                    for g in GENERATORS}, name=data.get("name", "")).check()


def _shift_name(name: str, m: int) -> str:
    if not name or m == 0:
        return name
    return f"{name}[{m}]"


def _action_failures(n, vertices, degrees, path_matrix, side) -> List[str]:
    fails = []
    ident = gf2.identity(n)
    if not np.array_equal(path_matrix("ex") ^ path_matrix("ey"), ident):
        fails.append(f"{side}: e_x + e_y is not the identity")
    for v in range(n):
        z = vertices[v]
        if path_matrix(IDEMPOTENT[z])[v, v] != 1:
            fails.append(f"{side}: basis vector {v} is not at vertex {z}")
    for p in PATHS:
        for q in PATHS:
            pq = path_product(p, q) if side == "left" else path_product(q, p)
            lhs = gf2.matmul(path_matrix(p), path_matrix(q))
            rhs = path_matrix(pq) if pq is not None else gf2.zeros(n, n)
            if not np.array_equal(lhs, rhs):
                fails.append(f"{side}: action of {p} then {q} is wrong")
    for p in PATHS:
        rows, cols = np.nonzero(path_matrix(p))
        for w, v in zip(rows, cols):
            if degrees[w] != degrees[v] + DEGREE[p]:
                fails.append(f"{side}: {p} does not have degree {DEGREE[p]} on vector {v}")
                break
    return fails


class ModuleMap:
    """A homogeneous map ``source -> target`` given by its matrix."""

    def __init__(self, source: GradedModule, target: GradedModule, matrix, degree: int):
        self.source = source
        self.target = target
        self.matrix = gf2.as_gf2(matrix)
        self.degree = degree
        if self.matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match {target.dim}x{source.dim}")

    def __repr__(self):
        return f"{type(self).__name__}({self.source!r} -> {self.target!r}, deg {self.degree})"

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.matrix, other.matrix)

    def __call__(self, vec) -> np.ndarray:
        return gf2.matmul(self.matrix, gf2.as_gf2(vec))

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return type(self)(other.source, self.target, gf2.matmul(self.matrix, other.matrix),
                          self.degree + other.degree)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return type(self)(self.source, self.target, self.matrix ^ other.matrix, self.degree)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def is_homogeneous(self) -> bool:
        rows, cols = np.nonzero(self.matrix)
        return all(self.target.degrees[w] == self.source.degrees[v] + self.degree for w, v in zip(rows, cols))

    def commutes_with_left(self) -> bool:
        return all(np.array_equal(gf2.matmul(self.matrix, self.source.left[g]),
                                  gf2.matmul(self.target.left[g], self.matrix)) for g in GENERATORS)

    def is_homomorphism(self) -> bool:
        return self.commutes_with_left() and self.is_homogeneous()

    def inverse(self) -> Optional["ModuleMap"]:
        if self.source.dim != self.target.dim:
            return None
        inv = gf2.invert(self.matrix)
        if inv is None:
            return None
        return type(self)(self.target, self.source, inv, -self.degree)


def identity_map(m: GradedModule) -> ModuleMap:
    return ModuleMap(m, m, gf2.identity(m.dim), 0)


def projective(vertex: str, m: int = 0) -> GradedModule:
    """P(vertex)[m] = R e(vertex) with basis the paths ending at ``vertex``."""
    if vertex not in ("x", "y"):
        raise ValueError(f"unknown vertex {vertex!r}")
    basis = [p for p in PATHS if RIGHT[p] == vertex]
    index = {p: i for i, p in enumerate(basis)}
    n = len(basis)
    left = {}
    for g in GENERATORS:
        mat = gf2.zeros(n, n)
        for p in basis:
            r = path_product(g, p)
            if r is not None:
                mat[index[r], index[p]] = 1
        left[g] = mat
    mod = GradedModule(basis, [LEFT[p] for p in basis], [DEGREE[p] for p in basis], left,
                       [len(_path_word(p)) for p in basis], name=f"P({vertex})")
    return mod.check().shift(m)


def hom_space(src: GradedModule, tgt: GradedModule, d: int) -> List[ModuleMap]:
    """Basis of the R-linear maps ``src -> tgt`` of degree ``d``."""
    slots = [(w, v) for w in range(tgt.dim) for v in range(src.dim)
             if tgt.degrees[w] == src.degrees[v] + d and tgt.vertices[w] == src.vertices[v]]
    if not slots:
        return []
    slot_index = {s: t for t, s in enumerate(slots)}
    eqs = []
    for g in GENERATORS:
        lm, ln = src.left[g], tgt.left[g]
        # (phi . g_src - g_tgt . phi)[w, v2] = 0
        for w in range(tgt.dim):
            for v2 in range(src.dim):
                row = np.zeros(len(slots), dtype=np.uint8)
                for v in np.flatnonzero(lm[:, v2]):
                    t = slot_index.get((w, v))
                    if t is not None:
                        row[t] ^= 1
                for w2 in np.flatnonzero(ln[w, :]):
                    t = slot_index.get((w2, v2))
                    if t is not None:
                        row[t] ^= 1
                if row.any():
                    eqs.append(row)
    if eqs:
        ker = gf2.kernel(np.array(eqs))
    else:
        ker = gf2.identity(len(slots))
    out = []
    for vec in ker:
        mat = gf2.zeros(tgt.dim, src.dim)
        for t in np.flatnonzero(vec):
            mat[slots[t]] = 1
        out.append(ModuleMap(src, tgt, mat, d))
    return out


MAX_ISO_SEARCH = 12


def find_isomorphism(src: GradedModule, tgt: GradedModule) -> Optional[ModuleMap]:
    """First invertible degree-0 R-linear map, trying all combinations of a Hom basis."""
    if src.dim != tgt.dim or src.graded_vertex_dimension() != tgt.graded_vertex_dimension():
        return None
    basis = hom_space(src, tgt, 0)
    if len(basis) > MAX_ISO_SEARCH:
        raise ValueError(f"Hom space of dimension {len(basis)} is too large to search")
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        mat = gf2.zeros(tgt.dim, src.dim)
        for c, b in zip(coeffs, basis):
            if c:
                mat ^= b.matrix
        if gf2.invert(mat) is not None:
            return type(basis[0])(src, tgt, mat, 0)
    return None


# ---------------------------------------------------------------------------
# the base category of projectives, for twisted complexes


@dataclass(frozen=True, order=True)
class ProjObj:
    """The projective P(vertex)[m]."""

    vertex: str
    m: int = 0

    def shift(self, m: int) -> "ProjObj":
        return ProjObj(self.vertex, self.m + m)

    def module(self) -> GradedModule:
        return projective(self.vertex, self.m)

    def __str__(self):
        return f"P({self.vertex})" + (f"[{self.m}]" if self.m else "")


class ProjMorphism:
    """Map P(z)[m] -> P(z')[m'] given by right multiplication with an element of e_z R e_z'."""

    __slots__ = ("source", "target", "element")

    def __init__(self, source: ProjObj, target: ProjObj, element: PathElement):
        if isinstance(element, str):
            element = PathElement(element)
        for p in element.paths:
            if LEFT[p] != source.vertex or RIGHT[p] != target.vertex:
                raise ValueError(f"path {p} does not give a map {source} -> {target}")
        self.source = source
        self.target = target
        self.element = element

    def __repr__(self):
        return f"ProjMorphism({self.source} -> {self.target}: {self.element})"

    def __eq__(self, other):
        if not isinstance(other, ProjMorphism):
            return NotImplemented
        return (self.source, self.target, self.element) == (other.source, other.target, other.element)

    def __hash__(self):
        return hash((self.source, self.target, self.element))

    def __matmul__(self, other: "ProjMorphism") -> "ProjMorphism":
        # v -> (v . r1) . r2
        return ProjMorphism(other.source, self.target, other.element * self.element)

    def __add__(self, other: "ProjMorphism") -> "ProjMorphism":
        return ProjMorphism(self.source, self.target, self.element + other.element)

    def is_zero(self) -> bool:
        return self.element.is_zero()

    def support(self):
        return self.element.paths

    def degrees(self):
        return frozenset(DEGREE[p] + self.source.m - self.target.m for p in self.element.paths)

    def with_ends(self, source: ProjObj, target: ProjObj) -> "ProjMorphism":
        return ProjMorphism(source, target, self.element)

    def module_map(self) -> ModuleMap:
        src, tgt = self.source.module(), self.target.module()
        mat = gf2.zeros(tgt.dim, src.dim)
        for j, p in enumerate(src.labels):
            prod = PathElement(p) * self.element
            for q in prod.paths:
                mat[tgt.labels.index(q), j] ^= 1
        return ModuleMap(src, tgt, mat, min(self.degrees(), default=0))


def proj_morphism_from_map(phi: ModuleMap, source: ProjObj, target: ProjObj) -> ProjMorphism:
    """Recover the right-multiplication element from a map between projectives."""
    gen = phi.source.labels.index(IDEMPOTENT[source.vertex])
    image = phi.matrix[:, gen]
    return ProjMorphism(source, target, PathElement(phi.target.labels[i] for i in np.flatnonzero(image)))


class ProjectiveBase:
    name = "proj"

    def hom_basis(self, a: ProjObj, b: ProjObj, d: int) -> List[ProjMorphism]:
        return [ProjMorphism(a, b, PathElement(p)) for p in PATHS
                if LEFT[p] == a.vertex and RIGHT[p] == b.vertex and DEGREE[p] == d - a.m + b.m]

    def zero(self, a: ProjObj, b: ProjObj) -> ProjMorphism:
        return ProjMorphism(a, b, PathElement())

    def identity(self, a: ProjObj) -> ProjMorphism:
        return ProjMorphism(a, a, PathElement(IDEMPOTENT[a.vertex]))


PROJECTIVES = ProjectiveBase()


@dataclass(frozen=True)
class DimVector:
    """Class p*x + q*y in K_0 of the projectives."""

    x: int = 0
    y: int = 0

    def __add__(self, other: "DimVector") -> "DimVector":
        return DimVector(self.x + other.x, self.y + other.y)

    def __neg__(self) -> "DimVector":
        return DimVector(-self.x, -self.y)

    def __sub__(self, other: "DimVector") -> "DimVector":
        return self + (-other)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.x, self.y)


def class_of(obj: ProjObj) -> DimVector:
    sign = -1 if obj.m % 2 else 1
    return DimVector(sign, 0) if obj.vertex == "x" else DimVector(0, sign)


def dim_vector_class(x) -> DimVector:
    """K_0 class of a twisted complex over projectives (or of a single ProjObj)."""
    if isinstance(x, ProjObj):
        return class_of(x)
    total = DimVector()
    for a in x.terms:
        total = total + class_of(a)
    return total
