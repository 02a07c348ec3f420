import itertools

import numpy as np
import pytest

from gausscat import gf2
from gausscat import twisted as T
from gausscat.algebra_r import GENERATORS, PathElement
from gausscat.modules_r import (DimVector, GradedModule, ModuleMap, ProjMorphism, ProjObj, PROJECTIVES,
                                dim_vector_class, find_isomorphism, hom_space, projective, proj_morphism_from_map)


def brute_hom_dim(src, tgt, d):
    """Count degree-d R-linear maps by trying every 0/1 matrix with the right support."""
    slots = [(i, j) for i in range(tgt.dim) for j in range(src.dim)
             if tgt.vertices[i] == src.vertices[j] and tgt.degrees[i] - src.degrees[j] == d]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(slots)):
        m = gf2.zeros(tgt.dim, src.dim)
        for (i, j), b in zip(slots, bits):
            m[i, j] = b
        if all(np.array_equal(gf2.matmul(m, src.left[g]), gf2.matmul(tgt.left[g], m)) for g in GENERATORS):
            count += 1
    return int(np.log2(count))


def test_projectives():
    px, py = projective("x"), projective("y")
    assert px.labels == ("ex", "b", "ab") and py.labels == ("ey", "a", "ba")
    assert px.dim_by_vertex() == (2, 1) and py.dim_by_vertex() == (1, 2)
    assert projective("x", 1).degrees == (-1, 0, 0)
    assert not px.relation_failures() and not py.relation_failures()


@pytest.mark.parametrize("s, t, d, dim", [("x", "x", 0, 1), ("x", "y", 0, 1), ("y", "x", 0, 0),
                                          ("y", "x", 1, 1), ("x", "x", 1, 1)])
def test_hom_space(s, t, d, dim):
    src, tgt = projective(s), projective(t)
    basis = hom_space(src, tgt, d)
    assert len(basis) == dim == brute_hom_dim(src, tgt, d)
    assert all(f.is_homomorphism() for f in basis)


def test_hom_space_with_shifts_matches_brute_force():
    for (s, m), (t, n) in itertools.product(itertools.product("xy", (-1, 0, 1)), repeat=2):
        src, tgt = projective(s, m), projective(t, n)
        for d in (-1, 0, 1, 2):
            assert len(hom_space(src, tgt, d)) == brute_hom_dim(src, tgt, d)


def test_find_isomorphism():
    px = projective("x")
    iso = find_isomorphism(px, px)
    assert iso is not None and np.array_equal(iso.matrix, gf2.identity(3))
    assert find_isomorphism(px, projective("y")) is None
    assert find_isomorphism(px, projective("x", 1)) is None


def test_bad_module_is_rejected():
    px = projective("x")
    left = dict(px.left)
    left["a"] = gf2.identity(3)
    with pytest.raises(ValueError):
        GradedModule(px.labels, px.vertices, px.degrees, left).check()


def test_json_round_trip():
    py = projective("y", 2)
    again = GradedModule.from_json(py.to_json())
    assert again.labels == py.labels and again.degrees == py.degrees
    assert all(np.array_equal(again.left[g], py.left[g]) for g in GENERATORS)


def test_proj_morphisms():
    x, y = ProjObj("x"), ProjObj("y")
    a = ProjMorphism(x, y, "a")
    b = ProjMorphism(y, x, "b")
    assert (b @ a).element == PathElement("ab") and (a @ b).element == PathElement("ba")
    assert a.degrees() == {0} and b.degrees() == {1}
    with pytest.raises(ValueError):
        ProjMorphism(x, y, "b")
    phi = a.module_map()
    assert phi.is_homomorphism()
    assert proj_morphism_from_map(phi, x, y) == a
    assert PROJECTIVES.hom_basis(x, y, 0) == [a]
    assert PROJECTIVES.hom_basis(y, x, 1) == [b]


def test_dim_vector_class():
    assert dim_vector_class(ProjObj("x")) == DimVector(1, 0)
    assert dim_vector_class(ProjObj("x", 1)) == DimVector(-1, 0)
    x, y = T.single(ProjObj("x"), PROJECTIVES), T.single(ProjObj("y"), PROJECTIVES)
    h = T.TwMorphism(x, y, {(0, 0): ProjMorphism(ProjObj("x"), ProjObj("y"), "a")}, 0)
    assert T.is_closed(h)
    c = T.cone(h)
    assert T.validate(c) is None and dim_vector_class(c) == DimVector(-1, 1)


def test_module_map_algebra():
    px = projective("x")
    f = hom_space(px, px, 1)[0]
    assert f.degree == 1 and (f @ f).is_zero()
    assert (f + f).is_zero()
    assert ModuleMap(px, px, gf2.identity(3), 0).inverse() is not None
