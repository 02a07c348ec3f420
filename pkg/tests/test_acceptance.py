"""Acceptance criteria 1-9; each test records one PASS/FAIL line in the summary."""

import json
import random
import xml.etree.ElementTree as ET

import jsonschema
import numpy as np
import pytest

from gausscat import bimodules as B
from gausscat import diagrams as D
from gausscat import gf2
from gausscat import twisted as T
from gausscat import verify as V
from gausscat.algebra_r import MULT, PATHS
from gausscat.cli import main
from gausscat.corpus import random_closed, random_iprime_complex
from gausscat.expr import parse, random_expr, to_text
from gausscat.modules_r import find_isomorphism, projective
from gausscat.serialize import load_schema


def all_ok(checks):
    return all(c.ok for c in checks), [c.check for c in checks if not c.ok]


def test_criterion_1_relations_and_confluence(criterion):
    rel, conf = V.check_relations(), V.check_confluence(words=1000)
    assert criterion(1, rel.ok and conf.ok, f"{rel.check}; {conf.check}"), (rel, conf)


def test_criterion_2_q_squared(criterion):
    ok = D.compose(D.cap(), D.cup()) == D.identity(0) and D.compose(D.cup(), D.cap()) == D.identity(2)
    assert criterion(2, ok)


@pytest.mark.xfail(strict=True, reason="words of at most 8 slices only reach degree <= (8 + k - l) / 3")
def test_criterion_3_bases_literal(criterion):
    ok, bad = V.check_bases_literal(length=8, max_k=4)
    worst = max(bad, key=lambda m: m["deg"]) if bad else None
    criterion(3, ok, f"unattainable as stated: {len(bad)} (k,l,d) mismatches, e.g. {worst}")
    assert ok


def test_criterion_3_bases_restated(criterion):
    # every mismatch of the literal check is a degree beyond the reach of 8 slices
    _, bad = V.check_bases_literal(length=8, max_k=4)
    explained = all(m["span"] == 0 and m["basis"] == 1 and 3 * m["deg"] > 8 + m["k"] - m["l"] for m in bad)
    ok, failed = all_ok(V.check_bases() + [V.check_small_bases()])
    assert criterion("3 restated", ok and explained,
                     "span <= basis, equal where reachable, longer words fill the rest"), failed


def test_criterion_4_twisted(criterion):
    ok, failed = all_ok(V.check_twisted(samples=60))
    q0 = T.single(D.ObjQ(0))
    c = T.cone(T.identity_morphism(q0))
    s = T.are_homotopic(T.identity_morphism(c), T.zero_morphism(c, c, 0))
    ok &= s is not None and T.differential(s) == T.identity_morphism(c) and T.validate(c) is None
    rng = random.Random(11)
    for _ in range(40):
        x, y = random_iprime_complex(rng, max_terms=3), random_iprime_complex(rng, max_terms=3)
        ok &= len(x) <= 3 and T.validate(T.cone(random_closed(rng, x, y, 0))) is None
    assert criterion(4, ok), failed


def test_criterion_5_algebra(criterion):
    ok, failed = all_ok(V.check_algebra())
    px, py = projective("x"), projective("y")
    for mod in (px, py):
        for p, q in [(p, q) for p in PATHS for q in PATHS]:
            # action of the basis paths multiplies like R
            lhs = gf2.matmul(mod.left_path(p), mod.left_path(q))
            rhs = sum((int(c) * mod.left_path(r) for r, c in zip(PATHS, MULT[PATHS.index(p), PATHS.index(q)])),
                      gf2.zeros(mod.dim, mod.dim)) % 2
            ok &= np.array_equal(lhs, rhs)
    ok &= px.dim_by_vertex() == (2, 1) and py.dim_by_vertex() == (1, 2)
    assert criterion(5, ok), failed


def test_criterion_6_bimodule(criterion):
    m = B.M_BIM
    ok = not m.relation_failures()
    ok &= find_isomorphism(B.tensor_over_R(m, projective("x")), projective("y")) is not None
    ok &= find_isomorphism(B.tensor_over_R(m, projective("y")), projective("x", 1)) is not None
    f, fi = B.map_f(), B.map_f_inverse()
    ok &= f.degree == 0 and f.is_homomorphism() and fi.is_homomorphism()
    ok &= np.array_equal((f @ fi).matrix, gf2.identity(6)) and np.array_equal((fi @ f).matrix, gf2.identity(6))
    ok &= find_isomorphism(B.tensor_power(2), B.R_BIM.shift(1)) is not None
    assert criterion(6, ok)


def test_criterion_7_tau(criterion):
    checks = B.verify_relations()
    functor = V.check_tau_functor(samples=200)
    ok, failed = all_ok(checks + [functor])
    ok &= len(checks) >= 4
    ok &= any("xmy" in c.check for c in checks) and any("ymx" in c.check for c in checks)
    assert criterion(7, ok, f"{len(checks)} relation checks, {functor.check}"), failed


def test_criterion_8_k0(criterion):
    j = B.k0_action_matrix()
    ok = j.tolist() == [[0, -1], [1, 0]] and (j @ j).tolist() == [[-1, 0], [0, -1]]
    checks = V.check_k0(samples=100)
    good, failed = all_ok(checks)
    assert criterion(8, ok and good, "matrix [[0,-1],[1,0]], square -I"), failed


def test_criterion_9_cli(criterion, capsys, tmp_path):
    rng = random.Random(9)
    trees = [random_expr(rng, depth=4) for _ in range(500)]
    ok = all(parse(to_text(t)) == t for t in trees)
    code = main(["verify", "--json"])
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, load_schema("report"))
    ok &= code == 0 and report["ok"]
    for expr in ("id1", "cup", "cap", "hf", "alpha0"):
        path = tmp_path / f"{expr}.svg"
        ok &= main(["render", expr, "-o", str(path)]) == 0
        ok &= ET.parse(path).getroot().tag == "{http://www.w3.org/2000/svg}svg"
    capsys.readouterr()
    assert criterion(9, ok, "500 round trips, verify report valid, 5 SVGs")
