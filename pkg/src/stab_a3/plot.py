"""Static SVG pictures: the six central-charge rays, and chart timelines of lifted paths."""
from __future__ import annotations

import math
from typing import List, Tuple
from xml.sax.saxutils import escape

from .charts import CentralCharge
from .exccol import LABELS
from .repcore import INTERVALS

PALETTE = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
           "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#8c564b"]


def ray_groups(Z: CentralCharge, tol: float = 1e-9) -> Tuple[List[Tuple[complex, List[str]]], List[str]]:
    """Nonzero charges grouped by equal value, and the names of vanishing ones."""
    groups: List[Tuple[complex, List[str]]] = []
    zeros = []
    scale = max(1.0, max(abs(Z(w)) for w in INTERVALS))
    for w in INTERVALS:
        z = Z(w)
        if abs(z) <= tol * scale:
            zeros.append(w.name)
            continue
        for g in groups:
            if abs(g[0] - z) <= tol * scale:
                g[1].append(w.name)
                break
        else:
            groups.append((z, [w.name]))
    return groups, zeros


def charge_svg(Z: CentralCharge, size: int = 360, title: str = "") -> str:
    groups, zeros = ray_groups(Z)
    c = size / 2
    r = 0.8 * c
    big = max((abs(z) for z, _ in groups), default=1.0)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="12">',
           '<defs><marker id="tip" markerWidth="8" markerHeight="8" refX="7" refY="4" '
           'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#222"/></marker></defs>',
           f'<line x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="#bbb"/>',
           f'<line x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="#bbb"/>']
    for z, names in groups:
        x, y = c + r * z.real / big, c - r * z.imag / big
        out.append(f'<line x1="{c}" y1="{c}" x2="{x:.2f}" y2="{y:.2f}" stroke="#222" '
                   f'stroke-width="1.5" marker-end="url(#tip)"/>')
        ang = math.atan2(-(y - c), x - c)
        lx, ly = x + 14 * math.cos(ang), y - 14 * math.sin(ang)
        anchor = "start" if math.cos(ang) > 0.2 else "end" if math.cos(ang) < -0.2 else "middle"
        out.append(f'<text x="{lx:.2f}" y="{ly:.2f}" text-anchor="{anchor}">'
                   f'{escape("=".join(names))}</text>')
    if zeros:
        out.append(f'<text x="{c + 6}" y="{c + 18}">({escape("=".join(zeros))}=0)</text>')
    if title:
        out.append(f'<text x="8" y="16">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def trace_svg(trace, width: int = 720, height: int = 90) -> str:
    """Chart timeline over t in [0, 1]: one coloured band per chart, a tick per facet crossing."""
    pad = 30
    span = width - 2 * pad
    ev = trace.events
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">']
    stop = ev[-1].t if ev else 1.0
    for a, b in zip(ev, ev[1:] + [None]):
        t0, t1 = a.t, (b.t if b is not None else stop)
        if t1 <= t0 and b is not None:
            continue
        x0, x1 = pad + span * t0, pad + span * max(t1, t0)
        color = PALETTE[LABELS.index(a.chart)]
        out.append(f'<rect x="{x0:.2f}" y="25" width="{max(x1 - x0, 0.5):.2f}" height="30" '
                   f'fill="{color}"/>')
        if x1 - x0 > 14:
            out.append(f'<text x="{(x0 + x1) / 2:.2f}" y="44" text-anchor="middle">{a.chart}</text>')
    for e in trace.crossings:
        x = pad + span * e.t
        out.append(f'<line x1="{x:.2f}" y1="18" x2="{x:.2f}" y2="62" stroke="#000" stroke-width="2"/>')
        out.append(f'<text x="{x:.2f}" y="14" text-anchor="middle">{e.facet[0]}&#8594;{e.chart}</text>')
    if trace.hit is not None:
        x = pad + span * trace.hit[1]
        out.append(f'<text x="{x:.2f}" y="78" text-anchor="middle" fill="#c00">L{trace.hit[0]}</text>')
    out.append(f'<line x1="{pad}" y1="62" x2="{pad + span}" y2="62" stroke="#444"/>')
    out.append(f'<text x="{pad}" y="78" text-anchor="middle">0</text>')
    out.append(f'<text x="{pad + span}" y="78" text-anchor="middle">1</text>')
    out.append(f'<text x="4" y="88" font-size="10">{escape(trace.status)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
