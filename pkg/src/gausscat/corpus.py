"""Seeded generators of small twisted complexes, shared by the verifier and the tests."""

from __future__ import annotations

import random
from typing import List, Optional

from . import twisted as T
from .diagrams import IPRIME, ObjQ
from .modules_r import PROJECTIVES, ProjObj


def _random_twist(rng: random.Random, terms, base, density: float, max_n: int):
    x = T.TwistedComplex(terms, {}, base)
    pairs = [(i, j) for i in range(len(terms)) for j in range(i + 1, len(terms))]
    rng.shuffle(pairs)
    for i, j in pairs:
        if rng.random() > density:
            continue
        options = [f for f in base.hom_basis(terms[i], terms[j], 1) if _small(f, max_n)]
        if not options:
            continue
        trial = T.TwistedComplex(terms, {**x.twist, (i, j): rng.choice(options)}, base)
        if T.validate(trial) is None:
            x = trial
    return x


def _small(f, max_n: int) -> bool:
    return all(getattr(t, "n", 0) <= max_n for t in f.support())


def random_iprime_complex(rng: random.Random, max_terms: int = 3, max_k: int = 2,
                          density: float = 0.7, max_n: int = 2) -> T.TwistedComplex:
    """Valid twisted complex over I' with at most ``max_terms`` terms."""
    n = rng.randint(1, max_terms)
    terms = [ObjQ(rng.randint(0, max_k), rng.randint(-2, 2)) for _ in range(n)]
    return _random_twist(rng, terms, IPRIME, density, max_n)


def random_proj_complex(rng: random.Random, max_terms: int = 3, density: float = 0.7) -> T.TwistedComplex:
    """Valid twisted complex over the projectives of R."""
    n = rng.randint(1, max_terms)
    terms = [ProjObj(rng.choice("xy"), rng.randint(-2, 2)) for _ in range(n)]
    return _random_twist(rng, terms, PROJECTIVES, density, 0)


def random_morphism(rng: random.Random, x: T.TwistedComplex, y: T.TwistedComplex, degree: int = 0):
    basis = T.hom_basis(x, y, degree)
    return T._combine(basis, [rng.random() < 0.5 for _ in basis], x, y, degree)


def random_closed(rng: random.Random, x: T.TwistedComplex, y: T.TwistedComplex,
                  degree: int = 0) -> Optional[T.TwMorphism]:
    """Random closed morphism of the given degree (possibly zero)."""
    basis = T.closed_morphisms(x, y, degree)
    return T._combine(basis, [rng.random() < 0.5 for _ in basis], x, y, degree)


def complex_pairs(seed: int, count: int, **kw) -> List[tuple]:
    rng = random.Random(seed)
    return [(random_iprime_complex(rng, **kw), random_iprime_complex(rng, **kw)) for _ in range(count)]
