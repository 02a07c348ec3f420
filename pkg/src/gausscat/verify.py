"""Verification suites, deterministic and seeded.

Each suite returns a list of ``Check``; ``run`` assembles a JSON report.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from . import bimodules as B
from . import diagrams as D
from . import twisted as T
from .algebra_r import INDEX, PATHS, UNIT, PathElement, graded_dimension
from .checks import Check
from .corpus import random_closed, random_iprime_complex, random_proj_complex
from .diagrams import CAP, CUP, HF, DiagramWord, NormalForm
from .modules_r import ProjObj, dim_vector_class, find_isomorphism, hom_space, projective

SUITES = ("diagrams", "algebra", "bimodules", "k0")
MAX_WIDTH = 5
DEGREES = range(-3, 7)


# ---------------------------------------------------------------------------
# relation instances


def relation_instances(max_width: int = MAX_WIDTH) -> Iterator[Tuple[str, DiagramWord, DiagramWord]]:
    """Both sides of every rewrite rule, at every position, within ``max_width`` strands."""
    gens = (CUP, CAP, HF)

    def word(w, moves):
        return DiagramWord.build(w, moves)

    def fits(w, moves):
        for gen, pos in moves:
            if not 1 <= pos <= w - gen.arity_in + 1:
                return False
            w = w - gen.arity_in + gen.arity_out
            if w > max_width:
                return False
        return True

    for w in range(max_width + 1):
        # distant commutation: x below, y above, on disjoint strands
        for x, y in itertools.product(gens, gens):
            for p in range(1, w - x.arity_in + 2):
                w1 = w - x.arity_in + x.arity_out
                for q in range(1, w1 - y.arity_in + 2):
                    if q + y.arity_in <= p:  # y strictly left of x's output
                        lhs = [(x, p), (y, q)]
                        rhs = [(y, q), (x, p - y.arity_in + y.arity_out)]
                    elif q >= p + x.arity_out:  # y strictly right
                        lhs = [(x, p), (y, q)]
                        rhs = [(y, q - x.arity_out + x.arity_in), (x, p)]
                    else:
                        continue
                    if fits(w, lhs) and fits(w, rhs):
                        yield "interchange", word(w, lhs), word(w, rhs)
        for p in range(1, w + 1):
            if fits(w, [(CUP, p + 1)]):
                yield "zigzag", word(w, [(CUP, p + 1), (CAP, p)]), word(w, [])
                yield "zigzag", word(w, [(CUP, p), (CAP, p + 1)]), word(w, [])
            yield "half-strand-slide", word(w, [(HF, p)]), word(w, [(HF, p + 1)]) if w + 1 <= max_width else None
            if w + 2 <= max_width:
                yield "cup-slide", word(w, [(CUP, p)]), word(w, [(CUP, p + 1)])
        for p in range(1, w):
            if p + 2 <= w:
                yield "cap-slide", word(w, [(CAP, p)]), word(w, [(CAP, p + 1)])
            yield "inverse", word(w, [(CAP, p), (CUP, p)]), word(w, [])
        if w + 2 <= max_width:
            for p in range(1, w + 2):
                yield "loop", word(w, [(CUP, p), (CAP, p)]), word(w, [])


def _instances():
    return [(n, l, r) for n, l, r in relation_instances() if r is not None]


def check_relations() -> Check:
    bad = []
    count = 0
    for name, lhs, rhs in _instances():
        count += 1
        if D.normalize(lhs) != D.normalize(rhs):
            bad.append({"rule": name, "lhs": _moves_json(lhs), "rhs": _moves_json(rhs)})
    return Check(f"relation sides normalize equally ({count} instances, width <= {MAX_WIDTH})", not bad,
                 {"failures": bad[:5]} if bad else None)


def _moves_json(w: DiagramWord):
    return [[g.value, p] for g, p in w.moves]


def last_redex(found):
    return found[-1]


def check_confluence(words: int = 1000, seed: int = 0) -> Check:
    rng = random.Random(seed)
    strategy = D.random_strategy(random.Random(seed + 1))
    bad = []
    for _ in range(words):
        w = D.random_word(rng, MAX_WIDTH, 8)
        forms = {D.normal_form_of(w), D.normal_form_of(w, last_redex), D.normal_form_of(w, strategy)}
        if len(forms) != 1:
            bad.append(_moves_json(w))
    return Check(f"confluence: {words} random words, three rewriting orders agree", not bad,
                 {"failures": bad[:5]} if bad else None)


# ---------------------------------------------------------------------------
# hom bases via reachable normal forms


@lru_cache(maxsize=None)
def reachable_forms(k: int, length: int, max_width: Optional[int] = None) -> frozenset:
    """Normal forms of all words from Q^k with at most ``length`` slices.

    Breadth-first over classes: a prefix is replaced by the canonical word of
    its normal form before the next slice is appended.
    """
    start = NormalForm(k, k, 0)
    seen = {start}
    frontier = {start}
    for _ in range(length):
        nxt = set()
        for nf in frontier:
            w = nf.l
            base = tuple(D.canonical_moves(nf.k, nf.l, nf.n))
            for gen in (CUP, CAP, HF):
                w2 = w - gen.arity_in + gen.arity_out
                if max_width is not None and w2 > max_width:
                    continue
                for p in range(1, w - gen.arity_in + 2):
                    new = D._normal_form(k, base + ((gen, p),))
                    if new not in seen:
                        seen.add(new)
                        nxt.add(new)
        frontier = nxt
    return frozenset(seen)


def span_dimension(k: int, l: int, d: int, length: int, max_width: Optional[int] = None) -> int:
    """Dimension of the span of normalized words Q^k -> Q^l of degree d and bounded length."""
    return len({nf for nf in reachable_forms(k, length, max_width) if nf.l == l and nf.degree == d})


def canonical_length(k: int, l: int, d: int) -> Optional[int]:
    basis = D.hom_basis(k, l, d)
    if not basis:
        return None
    nf = basis[0]
    return len(D.canonical_moves(nf.k, nf.l, nf.n))


def check_bases_literal(length: int = 8, max_k: int = 4) -> Tuple[bool, List[dict]]:
    """Literal comparison at a fixed word length; returns (ok, mismatches)."""
    bad = []
    for k in range(max_k + 1):
        for l in range(max_k + 1):
            for d in DEGREES:
                got, want = span_dimension(k, l, d, length), len(D.hom_basis(k, l, d))
                if got != want:
                    bad.append({"k": k, "l": l, "deg": d, "span": got, "basis": want})
    return not bad, bad


def check_bases(length: int = 8, max_k: int = 4) -> List[Check]:
    """Hom bases against the word-span oracle.

    Short words never span more than ``hom_basis``, match it wherever the
    canonical word is short enough, and reach a contiguous range of degrees
    starting at the minimum.  Every remaining admissible degree is reached
    once longer words are allowed.
    """
    short_bad, long_bad = [], []
    for k in range(max_k + 1):
        for l in range(max_k + 1):
            reached = []
            for d in DEGREES:
                want = len(D.hom_basis(k, l, d))
                need = canonical_length(k, l, d)
                got = span_dimension(k, l, d, length)
                if got > want or (need is not None and need <= length and got != want):
                    short_bad.append({"k": k, "l": l, "deg": d, "span": got, "basis": want})
                if got:
                    reached.append(d)
                if want and not got:
                    got_long = span_dimension(k, l, d, max(need, length), max_width=max_k + 2)
                    if got_long != want:
                        long_bad.append({"k": k, "l": l, "deg": d, "span": got_long, "basis": want})
            if reached and reached != list(range(D.core_degree(k, l), reached[-1] + 1)):
                short_bad.append({"k": k, "l": l, "reached": reached})
    return [
        Check(f"bases: words of length <= {length} span a subset of hom_basis, exactly where canonical words fit",
              not short_bad, {"failures": short_bad[:5]} if short_bad else None),
        Check("bases: longer words fill every remaining admissible degree in -3..6", not long_bad,
              {"failures": long_bad[:5]} if long_bad else None),
    ]


def check_small_bases() -> Check:
    ok = all(len(D.hom_basis(k, l, d)) == (1 if d >= D.core_degree(k, l) else 0)
             for k in range(2) for l in range(2) for d in DEGREES)
    names = [D.normal_form_name(nf) for n in range(3) for nf in D.hom_basis(0, 0, n)]
    ok &= names == ["id0", "alpha0", "alpha0^2"]
    ok &= D.hom_basis(1, 0, 0) == [] and [D.normal_form_name(nf) for nf in D.hom_basis(2, 0, 1)] == ["cap"]
    return Check("bases: one basis element per admissible degree for k, l in {0, 1}", ok, {"End(Q^0)": names})


def check_isoq() -> List[Check]:
    return [
        Check("Q (x) Q: cap . cup = id_{Q^0}", D.compose(D.cap(), D.cup()) == D.identity(0)),
        Check("Q (x) Q: cup . cap = id_{Q^2}", D.compose(D.cup(), D.cap()) == D.identity(2)),
        Check("hfb . hf = alpha0 of degree 1",
              D.compose(D.hfb(), D.hf()) == D.alpha0() and D.alpha0().degree == 1 and D.hfb().degree == 1),
    ]


def check_degree_additivity(samples: int = 200, seed: int = 2) -> Check:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        f = D.normalize(D.random_word(rng, 4, 6))
        g = D.normalize(D.random_word(rng, 4, 6, k=f.target.k))
        h = D.normalize(D.random_word(rng, 3, 5))
        bad += (g @ f).degree != g.degree + f.degree
        bad += D.tensor(f, h).degree != f.degree + h.degree
    return Check(f"degree is additive under compose and tensor ({samples} samples)", bad == 0)


# ---------------------------------------------------------------------------
# twisted complexes


def check_twisted(samples: int = 60, seed: int = 3) -> List[Check]:
    rng = random.Random(seed)
    d2_bad = cone_bad = 0
    for _ in range(samples):
        x, y = random_iprime_complex(rng), random_iprime_complex(rng)
        for deg in (-1, 0, 1):
            for h in T.hom_basis(x, y, deg):
                d2_bad += not T.differential(T.differential(h)).is_zero()
        h = random_closed(rng, x, y, 0)
        cone_bad += T.validate(T.cone(h)) is not None
    q0 = T.single(D.ObjQ(0))
    c = T.cone(T.identity_morphism(q0))
    witness = T.are_homotopic(T.identity_morphism(c), T.zero_morphism(c, c, 0))
    return [
        Check(f"d^2 = 0 on {samples} random pairs of complexes", d2_bad == 0),
        Check("every cone of a closed degree-0 morphism validates", cone_bad == 0),
        Check("cone(id_{Q^0}) is contractible", witness is not None,
              {"homotopy": [[i, j, sorted(map(str, s.support()))] for (i, j), s in
                            sorted(witness.components.items())]} if witness is not None else None),
    ]


# ---------------------------------------------------------------------------
# algebra and modules


def check_algebra() -> List[Check]:
    assoc = all(
        (PathElement(p) * PathElement(q)) * PathElement(r) == PathElement(p) * (PathElement(q) * PathElement(r))
        for p, q, r in itertools.product(PATHS, repeat=3))
    unit = all(UNIT * PathElement(p) == p and PathElement(p) * UNIT == p for p in PATHS)
    px, py = projective("x"), projective("y")
    homs = [len(hom_space(px, px, 0)), len(hom_space(px, py, 0)), len(hom_space(py, px, 0))]
    indep = int(np.linalg.matrix_rank(np.array([dim_vector_class(ProjObj("x")).as_tuple(),
                                                dim_vector_class(ProjObj("y")).as_tuple()]))) == 2
    return [
        Check("R is associative on all 216 basis triples", assoc),
        Check("e_x + e_y is the unit", unit),
        Check("graded dimension of R is {0: 3, 1: 3}", graded_dimension() == {0: 3, 1: 3},
              {"graded_dimension": {str(k): v for k, v in graded_dimension().items()}}),
        Check("P(x) and P(y) satisfy every relation of R",
              not px.relation_failures() and not py.relation_failures()),
        Check("dimension vectors are (2,1) and (1,2)", (px.dim_by_vertex(), py.dim_by_vertex()) == ((2, 1), (1, 2))),
        Check("degree-0 Hom dimensions P(x)->P(x), P(x)->P(y), P(y)->P(x) are 1, 1, 0", homs == [1, 1, 0],
              {"dims": homs}),
        Check("find_isomorphism separates P(x), P(y) and P(x)[1]",
              find_isomorphism(px, px) is not None and find_isomorphism(px, py) is None
              and find_isomorphism(px, projective("x", 1)) is None),
        Check("classes of P(x) and P(y) are independent in K_0", indep),
    ]


# ---------------------------------------------------------------------------
# bimodules


def check_bimodules(words: int = 200, seed: int = 0) -> List[Check]:
    out = [
        Check("M satisfies the bimodule axioms", not B.M_BIM.relation_failures()),
        Check("R satisfies the bimodule axioms", not B.R_BIM.relation_failures()),
        Check("R (x)_R M is isomorphic to M",
              find_isomorphism(B.tensor_over_R(B.R_BIM, B.M_BIM), B.M_BIM) is not None),
    ]
    mpx = B.tensor_over_R(B.M_BIM, projective("x"))
    mpy = B.tensor_over_R(B.M_BIM, projective("y"))
    iso_x, iso_y = find_isomorphism(mpx, projective("y")), find_isomorphism(mpy, projective("x", 1))
    out.append(Check("M (x)_R P(x) is isomorphic to P(y)", iso_x is not None,
                     {"basis": list(mpx.labels), "iso": iso_x.matrix.tolist() if iso_x else None}))
    out.append(Check("M (x)_R P(y) is isomorphic to P(x)[1]", iso_y is not None,
                     {"basis": list(mpy.labels), "iso": iso_y.matrix.tolist() if iso_y else None}))
    mm = B.tensor_power(2)
    f, fi = B.map_f(), B.map_f_inverse()
    out.append(Check("M (x)_R M has graded dimension {-1: 3, 0: 3}", mm.graded_dimension() == {-1: 3, 0: 3}))
    out.append(Check("f: R[1] -> M (x)_R M is a degree-0 bimodule isomorphism",
                     f.is_homomorphism() and fi.is_homomorphism() and f.degree == 0
                     and (f @ fi).matrix.tolist() == np.eye(6, dtype=int).tolist()
                     and (fi @ f).matrix.tolist() == np.eye(6, dtype=int).tolist()))
    out.append(Check("g: R -> M is a bimodule map", B.map_g().is_homomorphism()))
    out.extend(B.verify_relations(words, seed))
    t = B.tau(D.alpha0())
    img = {z: [B.R_BIM.labels[i] for i in np.flatnonzero(t.matrix[:, INDEX[e]])] for z, e in (("x", "ex"), ("y", "ey"))}
    out.append(Check("tau(alpha0) sends e_x to ab and e_y to ba", img == {"x": ["ab"], "y": ["ba"]}, img))
    out.append(check_tau_functor(seed))
    return out


def check_tau_functor(seed: int = 0, samples: int = 100) -> Check:
    rng = random.Random(seed + 7)
    bad = []
    for _ in range(samples):
        f = D.normalize(D.random_word(rng, 3, 6))
        g = D.normalize(D.random_word(rng, 3, 6, k=f.target.k))
        h = D.normalize(D.random_word(rng, 2, 4))
        tf, tg, th = B.tau(f), B.tau(g), B.tau(h)
        if not np.array_equal(B.tau(g @ f).matrix, (tg @ tf).matrix):
            bad.append("compose")
        if not np.array_equal(B.tau(D.tensor(f, h)).matrix, B.tensor_maps(tf, th).matrix):
            bad.append("tensor")
        if tf.degree != f.degree or not tf.is_homomorphism():
            bad.append("degree")
    return Check(f"tau is functorial, monoidal and degree preserving ({samples} samples)", not bad,
                 {"failures": bad[:5]} if bad else None)


# ---------------------------------------------------------------------------
# K_0


def check_k0(samples: int = 100, seed: int = 5) -> List[Check]:
    out = B.gauss_ring_check()
    rng = random.Random(seed)
    mult_bad = cone_bad = 0
    for _ in range(40):
        x, y = random_iprime_complex(rng), random_iprime_complex(rng)
        mult_bad += T.gauss_class(T.tensor(x, y)) != T.gauss_class(x) * T.gauss_class(y)
        mult_bad += T.validate(T.tensor(x, y)) is not None
        h = random_closed(rng, x, y, 0)
        cone_bad += T.gauss_class(T.cone(h)) != T.gauss_class(y) - T.gauss_class(x)
    out.append(Check("gauss_class is multiplicative under tensor (40 pairs)", mult_bad == 0))
    out.append(Check("gauss_class is additive under cones (40 pairs)", cone_bad == 0))
    j = B.k0_action_matrix()
    square_bad = valid_bad = 0
    for _ in range(samples):
        x = random_proj_complex(rng)
        a = random_iprime_complex(rng, max_terms=2)
        square_bad += not B.eta_k0_square(D.ObjQ(1), x)
        square_bad += tuple(j @ np.array(dim_vector_class(x).as_tuple())) != \
            dim_vector_class(B.eta(D.ObjQ(1), x)).as_tuple()
        square_bad += not B.eta_k0_square(a, x)
        valid_bad += T.validate(B.eta(a, x)) is not None
    out.append(Check(f"dim_vector_class(eta(Q, X)) = matrix . dim_vector_class(X) on {samples} complexes",
                     square_bad == 0))
    out.append(Check(f"eta of a complex over I' and a complex over projectives validates ({samples} pairs)",
                     valid_bad == 0))
    return out


def diagrams_suite() -> List[Check]:
    out = [check_relations(), check_confluence()]
    out += check_isoq()
    out += check_bases()
    out.append(check_small_bases())
    out.append(check_degree_additivity())
    out += check_twisted()
    return out


SUITE_FUNCS: Dict[str, Callable[[], List[Check]]] = {
    "diagrams": diagrams_suite,
    "algebra": check_algebra,
    "bimodules": check_bimodules,
    "k0": check_k0,
}


def run(suite: str = "all") -> dict:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITE_FUNCS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    report = {"suite": suite, "suites": []}
    for n in names:
        checks = SUITE_FUNCS[n]()
        report["suites"].append({"name": n, "ok": all(c.ok for c in checks), "checks": [c.to_json() for c in checks]})
    report["ok"] = all(s["ok"] for s in report["suites"])
    return report
