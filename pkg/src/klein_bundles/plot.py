"""SVG and CSV pictures of the fundamental domain [0, 1)^2.

The picture shows, for a type (r, d): the conjugation-fixed circles of
Pic^d, the r-torsion lattice, and the cell parametrizing the moduli of
stable real bundles of type (r, d).  The CSV twin lists the same geometry
as ``a,b,tag`` rows with exact coordinates, so plots can be checked
numerically.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .moduli import ModuliKind, moduli_descriptor
from .picard import torsion_subgroup

SIZE = 400
MARGIN = 20
CIRCLE_SAMPLES = 16

_STYLE = {
    "fixed_real": 'stroke="#1f6f3f" stroke-width="2"',
    "fixed_obstructed": 'stroke="#b03030" stroke-width="2" stroke-dasharray="6 4"',
    "removed": 'stroke="#777777" stroke-width="3" stroke-dasharray="2 3"',
}


def plot_rows(r: int, d: int) -> list[tuple[Fraction, Fraction, str]]:
    rows = []
    if d % 2 == 0:
        for k in range(CIRCLE_SAMPLES):
            t = Fraction(k, CIRCLE_SAMPLES)
            rows.append((t, Fraction(0), "fixed_real"))
            rows.append((t, Fraction(1, 2), "fixed_obstructed"))
    for p in torsion_subgroup(r):
        rows.append((p.a, p.b, "torsion_real" if p.b == 0 else "torsion"))

    M = moduli_descriptor(r, d)
    if M.kind is ModuliKind.CIRCLE:
        c = M.parametrization["circumference"]
        rows += [(Fraction(0), Fraction(0), "cell"), (c, Fraction(0), "cell")]
    elif not M.empty:
        s = M.parametrization["side"]
        rows += [(x, y, "cell") for x, y in ((0, 0), (s, 0), (s, s), (0, s))]
        if M.kind is ModuliKind.PUNCTURED_TORUS_QUOTIENT:
            rows += [(Fraction(0), Fraction(0), "removed"), (s, Fraction(0), "removed")]
    return [(Fraction(a), Fraction(b), tag) for a, b, tag in rows]


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "b", "tag"])
    for a, b, tag in rows:
        writer.writerow([str(a), str(b), tag])
    return buf.getvalue()


def _frame(tau: float) -> tuple[float, float]:
    """Pixel width and height of the domain: the lattice cell is 1 by tau."""
    tau = float(tau)
    return (SIZE, SIZE * tau) if tau <= 1 else (SIZE / tau, SIZE)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_svg(r: int, d: int, rows=None, tau=1.0) -> str:
    rows = plot_rows(r, d) if rows is None else rows
    w, h = _frame(tau)

    def _xy(a, b):
        return MARGIN + float(a) * w, MARGIN + (1 - float(b)) * h

    fw, fh = _fmt(w + 2 * MARGIN), _fmt(h + 2 * MARGIN)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fw}" height="{fh}" viewBox="0 0 {fw} {fh}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{_fmt(w)}" height="{_fmt(h)}" fill="#ffffff" stroke="#000000" stroke-width="1"/>',
    ]

    cell = [(a, b) for a, b, tag in rows if tag == "cell"]
    if len(cell) == 4:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_xy(a, b) for a, b in cell))
        out.append(f'<polygon points="{pts}" fill="#d8e4f5" stroke="#2b4c7e" stroke-width="1"/>')
    elif len(cell) == 2:
        (x1, y1), (x2, y2) = (_xy(a, b) for a, b in cell)
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#2b4c7e" stroke-width="6"/>')

    for tag in ("fixed_real", "fixed_obstructed"):
        bs = sorted({b for _, b, t in rows if t == tag})
        for b in bs:
            x1, y = _xy(0, b)
            x2, _ = _xy(1, b)
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y)}" x2="{_fmt(x2)}" y2="{_fmt(y)}" {_STYLE[tag]}/>')

    removed = [(a, b) for a, b, t in rows if t == "removed"]
    if removed:
        (x1, y1), (x2, y2) = (_xy(a, b) for a, b in removed)
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" {_STYLE["removed"]}/>')

    for a, b, tag in rows:
        if tag.startswith("torsion"):
            x, y = _xy(a, b)
            fill = "#1f6f3f" if tag == "torsion_real" else "#ffffff"
            out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{fill}" stroke="#000000" stroke-width="1"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
