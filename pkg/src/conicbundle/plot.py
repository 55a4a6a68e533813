"""SVG region plots: ``f <= 0`` in blue, ``Q1 >= 0`` in red, real bitangents in black.

Regions are filled cell by cell from sign samples on a regular grid; their
boundaries are traced by marching squares with linear interpolation along
cell edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bitangents import real_bitangents
from .exact import TernaryForm
from .model import QuadricTriple, quartic_from_triple

CHARTS = {"u": 0, "v": 1, "w": 2}


@dataclass(frozen=True)
class PlotConfig:
    grid: int = 256
    chart: str = "w"
    box: tuple[float, float, float, float] = (-3.0, 3.0, -3.0, 3.0)  # xmin, xmax, ymin, ymax
    size: int = 600
    seed: int = 0
    bitangents: bool = True


def _embed(chart: str, x, y):
    """Homogeneous coordinates of the affine point ``(x, y)`` in the chart."""
    k = CHARTS[chart]
    one = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    coords = [x, y]
    coords.insert(k, one)
    return coords


def evaluate_grid(form: TernaryForm, chart: str, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    X, Y = np.meshgrid(xs, ys)
    u, v, w = _embed(chart, X, Y)
    out = np.zeros_like(X)
    for (i, j, k), c in form.terms:
        out += float(c) * u**i * v**j * w**k
    return out


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Segments of the zero level set of ``values`` (rows indexed by ``ys``)."""
    segs = []
    neg = values <= 0
    ny, nx = values.shape

    def interp(p, q, vp, vq):
        t = vp / (vp - vq) if vp != vq else 0.5
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    for r in range(ny - 1):
        for c in range(nx - 1):
            corners = [(r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c)]
            flags = [neg[a] for a in corners]
            if all(flags) or not any(flags):
                continue
            pts = []
            for e in range(4):
                a, b = corners[e], corners[(e + 1) % 4]
                if neg[a] != neg[b]:
                    pa = (xs[a[1]], ys[a[0]])
                    pb = (xs[b[1]], ys[b[0]])
                    pts.append(interp(pa, pb, values[a], values[b]))
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            elif len(pts) == 4:
                # saddle: decide by the cell-centre average
                centre = values[r:r + 2, c:c + 2].mean()
                if (centre <= 0) == flags[0]:
                    segs.extend([(pts[0], pts[1]), (pts[2], pts[3])])
                else:
                    segs.extend([(pts[3], pts[0]), (pts[1], pts[2])])
    return segs


def boundary_displacement(form: TernaryForm, chart: str, segments) -> float:
    """Mean first-order distance ``|g| / |grad g|`` from segment midpoints to the true curve."""
    if not segments:
        return 0.0
    k = CHARTS[chart]
    free = [i for i in range(3) if i != k]
    grads = [form.partial(i) for i in free]
    total = 0.0
    for (a, b) in segments:
        x, y = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        p = _embed(chart, x, y)
        g = form.evaluate_float(*p)
        gx, gy = (d.evaluate_float(*p) for d in grads)
        n = (gx * gx + gy * gy) ** 0.5
        if n > 0:
            total += abs(g) / n
    return total / len(segments)


def _clip_line(L: Sequence[float], chart: str, box) -> Optional[tuple[tuple[float, float], tuple[float, float]]]:
    k = CHARTS[chart]
    free = [i for i in range(3) if i != k]
    a, b, c = L[free[0]], L[free[1]], L[k]  # a x + b y + c = 0
    xmin, xmax, ymin, ymax = box
    pts = []
    if abs(b) > 1e-14:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin <= y <= ymax:
                pts.append((x, y))
    if abs(a) > 1e-14:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin <= x <= xmax:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    pts.sort()
    return pts[0], pts[-1]


def region_plot(T: QuadricTriple, path: Optional[str] = None, config: PlotConfig = PlotConfig()) -> str:
    """Render the plot; writes it to ``path`` when given and returns the SVG text."""
    xmin, xmax, ymin, ymax = config.box
    n = config.grid
    xs = np.linspace(xmin, xmax, n + 1)
    ys = np.linspace(ymin, ymax, n + 1)
    f = quartic_from_triple(T).f
    q1 = T.forms[0]
    S = config.size
    sx = S / (xmax - xmin)
    sy = S / (ymax - ymin)

    def px(x, y):
        return f"{(x - xmin) * sx:.3f},{(ymax - y) * sy:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{S}" height="{S}" viewBox="0 0 {S} {S}">',
        f'<rect width="{S}" height="{S}" fill="white"/>',
    ]
    layers = [
        ("blue", evaluate_grid(f, config.chart, xs, ys)),
        ("red", -evaluate_grid(q1, config.chart, xs, ys)),
    ]
    for colour, vals in layers:
        centre = (vals[:-1, :-1] + vals[1:, :-1] + vals[:-1, 1:] + vals[1:, 1:]) / 4
        rects = []
        for r in range(n):
            row = centre[r] <= 0
            c = 0
            while c < n:
                if row[c]:
                    c0 = c
                    while c < n and row[c]:
                        c += 1
                    x0, x1 = xs[c0], xs[c]
                    y1 = ys[r + 1]
                    rects.append(f'<rect x="{(x0 - xmin) * sx:.3f}" y="{(ymax - y1) * sy:.3f}" '
                                 f'width="{(x1 - x0) * sx:.3f}" height="{(ys[r + 1] - ys[r]) * sy:.3f}"/>')
                else:
                    c += 1
        parts.append(f'<g fill="{colour}" fill-opacity="0.45" stroke="none">' + "".join(rects) + "</g>")
        segs = marching_squares(vals, xs, ys)
        path_d = "".join(f"M{px(*a)}L{px(*b)}" for a, b in segs)
        parts.append(f'<path d="{path_d}" stroke="{colour}" stroke-width="1" fill="none"/>')
    if config.bitangents:
        lines = []
        for b in real_bitangents(f, config.seed).bitangents:
            seg = _clip_line(b.line_float(), config.chart, config.box)
            if seg:
                lines.append(f"M{px(*seg[0])}L{px(*seg[1])}")
        parts.append(f'<path d="{"".join(lines)}" stroke="black" stroke-width="1" fill="none"/>')
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(svg)
    return svg
