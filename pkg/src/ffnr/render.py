"""Text and SVG renderings of a computed numerical range.

All renderers consume one :class:`PlotData`, so JSON, CSV, ASCII and SVG
always describe the same point sets.
"""

from __future__ import annotations

import csv
import io
import json
import string
from dataclasses import dataclass
from typing import Optional

from . import curve, linalg, numrange
from .canonical import ClassTag, ZetaClass, canonicalize, classify_zeta
from .errors import FFNRError
from .field import FieldSpec, Fq2Elem
from .linalg import Mat2

# digits then letters, skipping 'o' which marks the curve
INDEX_SYMBOLS = string.digits + "".join(c for c in string.ascii_lowercase if c != "o")
NO_FAMILY = "*"
PALETTE = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)
CELL = 20
MARGIN = 40


@dataclass
class PlotData:
    """Everything a plot needs: densities, curve, eigenvalues and the scaling index of each range point."""

    field: FieldSpec
    matrix: Mat2
    density: numrange.DensityMap
    curve_points: Optional[frozenset]  # None when no curve is available
    eigenvalues: tuple
    scaling_index: dict  # Fq2Elem -> index into m_values, only when a family applies
    m_values: tuple

    @property
    def range_points(self) -> frozenset:
        return self.density.support()


def _scaling_layer(A: Mat2, support) -> tuple[dict, tuple]:
    """Map range points through the canonical decomposition onto the C_m family of the representative."""
    try:
        dec = canonicalize(A)
    except FFNRError:
        return {}, ()
    cls = dec.cls
    if cls.tag is not ClassTag.ONE_ZETA or classify_zeta(cls.zeta) not in (ZetaClass.ELLIPSE, ZetaClass.HYPERBOLA):
        return {}, ()
    fam = curve.scaling_family(cls.zeta, A.field)
    pos = {m: i for i, m in enumerate(fam.m_values)}
    return {z: pos[curve.scaling_value(dec.map_point(z), cls.zeta)] for z in support}, fam.m_values


def plot_data(A: Mat2) -> PlotData:
    d = numrange.density_map(A)
    try:
        pts = curve.affine_dual_points(A)
    except FFNRError:
        pts = None
    index, m_values = _scaling_layer(A, d.support())
    eig = tuple(e.eigenvalue for e in linalg.eigen_data(A))
    return PlotData(A.field, A, d, pts, eig, index, m_values)


def _fmt_z(z: Fq2Elem) -> dict:
    F = z.field
    return {"re": F.format(z.re), "im": F.format(z.im)}


def _matrix_json(A: Mat2) -> list:
    return [[A.field.format2(x) for x in row] for row in A.entries]


def to_json(data: PlotData) -> str:
    F = data.field
    out = {
        "q": F.q,
        "p": F.p,
        "k": F.k,
        "alpha": F.format(F.alpha),
        "matrix": _matrix_json(data.matrix),
        "size": len(data.range_points),
        "density": [{"z": _fmt_z(z), "count": c} for z, c in data.density.sorted_items()],
    }
    if data.curve_points is not None:
        out["curve"] = [_fmt_z(z) for z in sorted(data.curve_points)]
    return json.dumps(out, sort_keys=True, indent=1) + "\n"


def to_csv(data: PlotData) -> str:
    """One row per cell of the q×q grid: re, im, |S_z|, |S_z/U|, on-curve flag."""
    F = data.field
    q1 = F.q + 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im", "count", "quotient", "curve"])
    on_curve = data.curve_points or frozenset()
    for z in F.fq2_elements():
        c = data.density[z]
        w.writerow([F.format(z.re), F.format(z.im), c, c // q1 if c % q1 == 0 else "", int(z in on_curve)])
    return buf.getvalue()


def cell_symbol(data: PlotData, z: Fq2Elem) -> str:
    if z in data.eigenvalues:
        return "E"
    if data.curve_points is not None and z in data.curve_points:
        return "o"
    if z in data.range_points:
        if z in data.scaling_index:
            return INDEX_SYMBOLS[data.scaling_index[z] % len(INDEX_SYMBOLS)]
        return NO_FAMILY
    return "."


def to_ascii(data: PlotData) -> str:
    """q lines of q characters; re grows to the right, im grows upward."""
    F = data.field
    elems = list(F.elements())
    lines = []
    for im in reversed(elems):
        lines.append("".join(cell_symbol(data, F.elem(re, im)) for re in elems))
    return "\n".join(lines) + "\n"


def parse_ascii(text: str, field: FieldSpec) -> dict:
    """Inverse of to_ascii: symbol per cell, keyed by element."""
    elems = list(field.elements())
    rows = text.rstrip("\n").split("\n")
    out = {}
    for im, row in zip(reversed(elems), rows):
        for re_, ch in zip(elems, row):
            out[field.elem(re_, im)] = ch
    return out


def _diamond(cx: int, cy: int, r: int) -> str:
    return f"{cx},{cy - r} {cx + r},{cy} {cx},{cy + r} {cx - r},{cy}"


def to_svg(data: PlotData, title: str = "") -> str:
    """Byte-deterministic SVG: range cells, then curve rings, then eigenvalue diamonds."""
    F = data.field
    q = F.q
    elems = list(F.elements())
    col = {x: i for i, x in enumerate(elems)}
    width = MARGIN + q * CELL + 200
    height = MARGIN + q * CELL + MARGIN

    def cell_origin(z: Fq2Elem) -> tuple[int, int]:
        return MARGIN + col[z.re] * CELL, MARGIN + (q - 1 - col[z.im]) * CELL

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="{MARGIN // 2}">{_escape(title)}</text>')
    out.append('<g id="grid" stroke="#dddddd" fill="none">')
    for z in F.fq2_elements():
        x, y = cell_origin(z)
        out.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}"/>')
    out.append("</g>")
    out.append('<g id="axes" fill="#333333">')
    for x_val, i in col.items():
        cx = MARGIN + i * CELL + CELL // 2
        cy = MARGIN + (q - 1 - i) * CELL + CELL // 2 + 3
        out.append(f'<text x="{cx}" y="{MARGIN + q * CELL + 14}" text-anchor="middle">{_escape(F.format(x_val))}</text>')
        out.append(f'<text x="{MARGIN - 6}" y="{cy}" text-anchor="end">{_escape(F.format(x_val))}</text>')
    out.append("</g>")

    out.append('<g id="range">')
    for z, c in data.density.sorted_items():
        x, y = cell_origin(z)
        idx = data.scaling_index.get(z)
        color = PALETTE[idx % len(PALETTE)] if idx is not None else "#888888"
        out.append(f'<rect x="{x + 1}" y="{y + 1}" width="{CELL - 2}" height="{CELL - 2}" fill="{color}"><title>{c}</title></rect>')
    out.append("</g>")

    out.append('<g id="curve" fill="none" stroke="#000000" stroke-width="2">')
    for z in sorted(data.curve_points or ()):
        x, y = cell_origin(z)
        out.append(f'<circle cx="{x + CELL // 2}" cy="{y + CELL // 2}" r="{CELL // 3}"/>')
    out.append("</g>")

    out.append('<g id="eigenvalues" fill="#d62728" stroke="#000000">')
    for z in sorted(data.eigenvalues):
        x, y = cell_origin(z)
        out.append(f'<polygon points="{_diamond(x + CELL // 2, y + CELL // 2, CELL // 3)}"/>')
    out.append("</g>")

    lx = MARGIN + q * CELL + 20
    out.append('<g id="legend">')
    entries = []
    for i, m in enumerate(data.m_values):
        entries.append((f'<rect x="{lx}" y="{{y}}" width="10" height="10" fill="{PALETTE[i % len(PALETTE)]}"/>', f"m = {F.format(m)}"))
    if data.range_points and not data.m_values:
        entries.append((f'<rect x="{lx}" y="{{y}}" width="10" height="10" fill="#888888"/>', "W(A)"))
    if data.curve_points:
        entries.append((f'<circle cx="{lx + 5}" cy="{{cy}}" r="5" fill="none" stroke="#000000" stroke-width="2"/>', "curve"))
    if data.eigenvalues:
        entries.append(('<polygon points="{diamond}" fill="#d62728" stroke="#000000"/>', "eigenvalue"))
    for n, (shape, label) in enumerate(entries):
        y = MARGIN + n * 16
        out.append(shape.format(y=y, cy=y + 5, diamond=_diamond(lx + 5, y + 5, 5)))
        out.append(f'<text x="{lx + 16}" y="{y + 9}">{_escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
