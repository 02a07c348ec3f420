"""SVG drawings of diagram words: cups and caps as arcs, half strands ending in a dot."""

from __future__ import annotations

from typing import List, Sequence, Tuple
from xml.sax.saxutils import escape

from .diagrams import CAP, CUP, HF, DiagramWord, Morphism, NormalForm, canonical_moves, normal_form_name

STEP = 40  # horizontal strand spacing
ROW = 40  # height of one slice
MARGIN = 20
DOT = 4


def _x(i: int) -> float:
    return MARGIN + STEP * i


def _slices(k: int, moves: Sequence[Tuple[object, int]], x0: float, height: float) -> List[str]:
    """SVG elements for one word, drawn bottom to top starting at ``height``."""
    out = []
    w = k
    y = height
    if not moves:
        for i in range(k):
            out.append(f'<line x1="{x0 + _x(i)}" y1="{y}" x2="{x0 + _x(i)}" y2="{y - ROW}" />')
    for gen, pos in moves:
        top = y - ROW
        p = pos - 1  # 0-based leftmost strand touched
        new_w = w - gen.arity_in + gen.arity_out
        # strands not involved: i below, j above
        below = [i for i in range(w) if not (p <= i < p + gen.arity_in)]
        above = [j for j in range(new_w) if not (p <= j < p + gen.arity_out)]
        for i, j in zip(below, above):
            out.append(f'<line x1="{x0 + _x(i)}" y1="{y}" x2="{x0 + _x(j)}" y2="{top}" />')
        if gen is CUP:
            a, b = x0 + _x(p), x0 + _x(p + 1)
            out.append(f'<path d="M {a} {top} C {a} {top + ROW * 0.9} {b} {top + ROW * 0.9} {b} {top}" fill="none" />')
        elif gen is CAP:
            a, b = x0 + _x(p), x0 + _x(p + 1)
            out.append(f'<path d="M {a} {y} C {a} {y - ROW * 0.9} {b} {y - ROW * 0.9} {b} {y}" fill="none" />')
        elif gen is HF:
            a = x0 + _x(p)
            mid = y - ROW / 2
            out.append(f'<line x1="{a}" y1="{mid}" x2="{a}" y2="{top}" />')
            out.append(f'<circle cx="{a}" cy="{mid}" r="{DOT}" fill="black" />')
        w = new_w
        y = top
    return out


def svg_word(k: int, moves: Sequence[Tuple[object, int]], title: str = "") -> str:
    return svg_terms([(k, list(moves), title)])


def svg_terms(terms: Sequence[Tuple[int, Sequence[Tuple[object, int]], str]]) -> str:
    """Several words side by side, joined by '+'."""
    parts: List[str] = []
    x0 = 0.0
    rows = max((len(m) for _, m, _ in terms), default=0)
    height = 2 * MARGIN + ROW * max(rows, 1) + 20
    base = height - MARGIN - 20
    for t, (k, moves, label) in enumerate(terms):
        if t:
            parts.append(f'<text x="{x0}" y="{base - ROW * rows / 2}" stroke="none">+</text>')
            x0 += 20
        widths = [k]
        for gen, _ in moves:
            widths.append(widths[-1] - gen.arity_in + gen.arity_out)
        span = STEP * max(max(widths) - 1, 0) + 2 * MARGIN
        parts.extend(_slices(k, moves, x0, base))
        if label:
            parts.append(f'<text x="{x0 + MARGIN}" y="{height - 8}" stroke="none" font-size="12">{escape(label)}</text>')
        x0 += max(span, 60)
    width = max(x0, 60)
    body = "\n  ".join(parts)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<g stroke="black" stroke-width="2" font-family="monospace">\n  {body}\n</g>\n</svg>\n'
    )


def svg_normal_form(nf: NormalForm) -> str:
    return svg_word(nf.k, canonical_moves(nf.k, nf.l, nf.n), normal_form_name(nf))


def svg_morphism(f: Morphism) -> str:
    """The normal forms of ``f``; the zero morphism draws as an empty canvas."""
    terms = sorted(f.terms, key=lambda nf: nf.n)
    return svg_terms([(nf.k, canonical_moves(nf.k, nf.l, nf.n), normal_form_name(nf)) for nf in terms])


def svg_diagram(word: DiagramWord) -> str:
    return svg_word(word.source.k, word.moves)
