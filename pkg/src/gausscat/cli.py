"""Command-line front end: ``gausscat <subcommand> ...``.

Exit codes: 2 parse error, 3 elaboration error, 4 verification failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional

from . import bimodules as B
from . import diagrams as D
from . import twisted as T
from . import verify as V
from .expr import ElaborationError, ParseError, evaluate
from .modules_r import GradedModule, dim_vector_class, projective
from .render import svg_morphism
from .serialize import complex_from_json, complex_json, morphism_json, nf_json, tw_morphism_json

EXIT_PARSE, EXIT_ELABORATION, EXIT_VERIFY, EXIT_IO = 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def default_max_n() -> int:
    try:
        return int(os.environ.get("GAUSSCAT_MAX_N", "10"))
    except ValueError:
        return 10


def _morphism(text: str, strict: bool = True) -> D.Morphism:
    try:
        return evaluate(text, strict)
    except ParseError as exc:
        raise CliError(f"{exc}\n{exc.caret()}", EXIT_PARSE) from exc
    except ElaborationError as exc:
        raise CliError(f"elaboration error: {exc}", EXIT_ELABORATION) from exc


def format_morphism(f: D.Morphism) -> str:
    if f.is_zero():
        return "0"
    terms = " + ".join(f"1·({nf.k},{nf.l},{nf.n})" for nf in sorted(f.terms, key=lambda t: t.n))
    deg = f.degree if f.degree is not None else "mixed"
    out = f"{terms}  deg {deg}"
    if f.source.m or f.target.m:
        out += f"  {f.source} -> {f.target}"
    return out


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_PARSE) from exc


def _complex(path: str) -> T.TwistedComplex:
    try:
        x = complex_from_json(_read_json(path))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    bad = T.validate(x)
    if bad is not None:
        raise CliError(f"invalid twisted complex: {bad.kind} at ({bad.i}, {bad.j}) {bad.detail}", EXIT_ELABORATION)
    return x


_MODULE_NAME = re.compile(r"^(R|M|P\(?([xy])\)?)(?:\[(-?\d+)\])?$")


def _module(arg: str) -> GradedModule:
    m = _MODULE_NAME.match(arg.replace(" ", ""))
    if m:
        shift = int(m.group(3) or 0)
        if m.group(2):
            return projective(m.group(2), shift)
        mod = B.R_BIM if m.group(1) == "R" else B.M_BIM
        return mod.shift(shift) if shift else mod
    data = _read_json(arg)
    try:
        if "right_action" in data:
            return B.GradedBimodule.from_json(data)
        return GradedModule.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed module descriptor {arg}: {exc}", EXIT_ELABORATION) from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> int:
    f = _morphism(args.expr, args.strict)
    if args.json:
        _emit(morphism_json(f))
    else:
        print(format_morphism(f))
    return 0


def cmd_hom(args) -> int:
    k, l = args.k, args.l
    if k < 0 or l < 0:
        raise CliError("strand counts must be nonnegative", EXIT_ELABORATION)
    max_n = args.max_n if args.max_n is not None else default_max_n()
    dmin = D.core_degree(k, l)
    if args.all_degrees:
        lo = args.min if args.min is not None else dmin
        hi = args.max if args.max is not None else dmin + max_n
        degrees = list(range(lo, hi + 1))
    elif args.deg is not None:
        degrees = [args.deg]
    else:
        raise CliError("give --deg D or --all-degrees", EXIT_PARSE)
    rows = []
    for d in degrees:
        basis = D.hom_basis(k, l, d)
        truncated = bool(basis) and basis[0].n > max_n
        rows.append({"degree": d, "basis": [] if truncated else [nf_json(nf) for nf in basis], "truncated": truncated})
    if args.json:
        _emit({"k": k, "l": l, "degrees": rows})
        return 0
    for row in rows:
        text = ", ".join(b["name"] for b in row["basis"]) or ("(n exceeds max-n)" if row["truncated"] else "0")
        print(f"deg {row['degree']}: {text}" if args.all_degrees else text)
    return 0


def cmd_tensor_r(args) -> int:
    left, right = _module(args.left), _module(args.right)
    if not isinstance(left, B.GradedBimodule):
        raise CliError("the left factor must be a bimodule", EXIT_ELABORATION)
    _emit(B.tensor_over_R(left, right).to_json())
    return 0


def cmd_act(args) -> int:
    f = _morphism(args.expr, args.strict)
    x = _complex(args.complex)
    if x.base is not B.PROJECTIVES:
        raise CliError("act needs a complex over projectives", EXIT_ELABORATION)
    if f == D.identity(f.source):
        _emit(complex_json(B.eta(f.source, x)))
    else:
        if f.degree is None:
            raise CliError("act needs a homogeneous morphism", EXIT_ELABORATION)
        _emit(tw_morphism_json(B.eta(f, x)))
    return 0


def cmd_k0(args) -> int:
    x = _complex(args.complex)
    if x.base is B.PROJECTIVES:
        v = dim_vector_class(x)
        out, text = {"x": v.x, "y": v.y}, f"({v.x}, {v.y})"
    else:
        g = T.gauss_class(x)
        out, text = {"re": g.re, "im": g.im}, str(g)
    if args.json:
        _emit(out)
    else:
        print(text)
    return 0


def cmd_verify(args) -> int:
    report = V.run(args.suite)
    if args.json:
        _emit(report)
    else:
        for suite in report["suites"]:
            print(f"== {suite['name']}")
            if suite["name"] == "k0":
                print(json.dumps(B.k0_action_matrix().tolist()).replace(" ", ""))
            for c in suite["checks"]:
                print(f"{c['check']}: {c['status'] if c['status'] == 'ok' else 'FAIL'}")
        print("all checks passed" if report["ok"] else "verification FAILED")
    return 0 if report["ok"] else EXIT_VERIFY


def cmd_render(args) -> int:
    f = _morphism(args.expr, args.strict)
    svg = svg_morphism(f)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror}", EXIT_IO) from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gausscat", description="Diagrams, R-bimodules and the categorified Gaussian integers.")
    sub = p.add_subparsers(dest="command", required=True)

    def strict_flag(sp):
        sp.add_argument("--strict", type=_bool, default=True, metavar="BOOL",
                        help="reject strand mismatches (default true); false makes them zero")

    sp = sub.add_parser("normalize", help="normal form of a diagram expression")
    sp.add_argument("expr")
    sp.add_argument("--json", action="store_true")
    strict_flag(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("hom", help="graded Hom bases of I'")
    sp.add_argument("k", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("--deg", type=int)
    sp.add_argument("--all-degrees", action="store_true")
    sp.add_argument("--min", type=int)
    sp.add_argument("--max", type=int)
    sp.add_argument("--max-n", type=int, help="largest alpha exponent listed (default $GAUSSCAT_MAX_N or 10)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_hom)

    sp = sub.add_parser("tensor-r", help="tensor product over R of two (bi)modules")
    sp.add_argument("left", help="R, M, P(x), P(y) with optional [m], or a JSON descriptor")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_tensor_r)

    sp = sub.add_parser("act", help="act by a diagram on a complex of projectives")
    sp.add_argument("expr")
    sp.add_argument("complex")
    strict_flag(sp)
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("k0", help="class of a complex in K_0")
    sp.add_argument("complex")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_k0)

    sp = sub.add_parser("verify", help="run the verification suites")
    sp.add_argument("--suite", choices=("all",) + V.SUITES, default="all")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="draw the normal form as SVG")
    sp.add_argument("expr")
    sp.add_argument("-o", "--output", required=True)
    strict_flag(sp)
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"gausscat: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
