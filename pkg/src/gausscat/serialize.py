"""JSON forms of morphisms, complexes and modules. Term indices are 0-based."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Dict

from . import twisted as T
from .algebra_r import PathElement
from .diagrams import IPRIME, Morphism, NormalForm, ObjQ, normal_form_name
from .modules_r import PROJECTIVES, GradedModule, ProjMorphism, ProjObj

SCHEMAS = ("complex_iprime", "complex_proj", "module", "normalize", "hom", "report")


def load_schema(name: str) -> dict:
    return json.loads(resources.files("gausscat.schemas").joinpath(f"{name}.json").read_text())


def obj_json(obj: ObjQ) -> dict:
    return {"k": obj.k, "m": obj.m}


def nf_json(nf: NormalForm) -> dict:
    return {"k": nf.k, "l": nf.l, "n": nf.n, "degree": nf.degree, "name": normal_form_name(nf)}


def morphism_json(f: Morphism) -> dict:
    return {
        "source": obj_json(f.source),
        "target": obj_json(f.target),
        "terms": [nf_json(nf) for nf in sorted(f.terms, key=lambda t: t.n)],
        "degree": f.degree,
    }


def complex_json(x: T.TwistedComplex) -> dict:
    if x.base is IPRIME:
        terms = [obj_json(a) for a in x.terms]
        twist = [{"i": i, "j": j, "n": _single_n(f)} for (i, j), f in sorted(x.twist.items())]
    else:
        terms = [{"vertex": a.vertex, "m": a.m} for a in x.terms]
        twist = [{"i": i, "j": j, "element": f.element.sorted_paths()} for (i, j), f in sorted(x.twist.items())]
    return {"terms": terms, "twist": twist}


def _single_n(f: Morphism) -> int:
    (nf,) = f.terms  # each graded Hom of I' is at most one-dimensional
    return nf.n


def complex_from_json(data: Dict[str, Any]) -> T.TwistedComplex:
    """Twisted complex over I' (terms with ``k``) or over projectives (terms with ``vertex``).

    Raises ValueError on malformed input; validity is left to ``twisted.validate``.
    """
    try:
        terms_in = data["terms"]
        twist_in = data.get("twist", [])
        if not isinstance(terms_in, list) or not terms_in:
            raise ValueError("a complex needs a non-empty list of terms")
        over_i = "k" in terms_in[0]
        if over_i:
            terms = [ObjQ(int(t["k"]), int(t.get("m", 0))) for t in terms_in]
        else:
            terms = [ProjObj(str(t["vertex"]), int(t.get("m", 0))) for t in terms_in]
            if any(t.vertex not in ("x", "y") for t in terms):
                raise ValueError("vertices must be 'x' or 'y'")
        twist = {}
        for c in twist_in:
            i, j = int(c["i"]), int(c["j"])
            if not (0 <= i < len(terms) and 0 <= j < len(terms)):
                raise ValueError(f"twist index ({i}, {j}) out of range")
            if over_i:
                a, b = terms[i], terms[j]
                twist[i, j] = Morphism(a, b, [NormalForm(a.k, b.k, int(c["n"]))])
            else:
                twist[i, j] = ProjMorphism(terms[i], terms[j], PathElement(c["element"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed complex: {exc}") from exc
    return T.TwistedComplex(terms, twist, IPRIME if over_i else PROJECTIVES)


def tw_morphism_json(h: T.TwMorphism) -> dict:
    comps = []
    for (i, j), c in sorted(h.components.items()):
        if isinstance(c, ProjMorphism):
            comps.append({"i": i, "j": j, "element": c.element.sorted_paths()})
        else:
            comps.append({"i": i, "j": j, "terms": [nf_json(nf) for nf in sorted(c.terms, key=lambda t: t.n)]})
    return {"source": complex_json(h.source), "target": complex_json(h.target),
            "degree": h.degree, "components": comps}


def module_json(m: GradedModule) -> dict:
    return m.to_json()
