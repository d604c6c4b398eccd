"""Minimal standalone SVG output for plane vectors and feasible regions."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .errors import InvalidArgument

SIZE = 480
PAD = 40


def _doc(body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
        f'width="{SIZE}" height="{SIZE}">'
    )
    return "\n".join([head, f"<title>{escape(title)}</title>",
                      f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>', *body, "</svg>\n"])


def vectors_svg(vectors, labels=None, title: str = "plane vectors") -> str:
    """Unit-circle axes with one labelled dot per vector, scaled so the
    longest vector touches the circle."""
    v = np.asarray(vectors, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or len(v) == 0:
        raise InvalidArgument("need a non-empty list of 2-d vectors")
    if labels is None:
        labels = [str(i) for i in range(len(v))]
    r = (SIZE - 2 * PAD) / 2
    cx = cy = SIZE / 2
    top = float(np.hypot(v[:, 0], v[:, 1]).max()) or 1.0
    body = [
        f'<circle cx="{cx}" cy="{cy}" r="{r:.2f}" fill="none" stroke="#999"/>',
        f'<line x1="{PAD}" y1="{cy}" x2="{SIZE - PAD}" y2="{cy}" stroke="#bbb"/>',
        f'<line x1="{cx}" y1="{PAD}" x2="{cx}" y2="{SIZE - PAD}" stroke="#bbb"/>',
    ]
    seen: dict[tuple[int, int], int] = {}
    for (x, y), lab in zip(v, labels):
        px, py = cx + r * x / top, cy - r * y / top
        key = (round(px), round(py))
        k = seen.get(key, 0)
        seen[key] = k + 1
        body.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="#1f6feb"/>')
        body.append(
            f'<text x="{px + 6:.2f}" y="{py - 6 - 12 * k:.2f}" font-size="11" '
            f'font-family="sans-serif">{escape(str(lab))}</text>'
        )
    return _doc(body, title)


def region_svg(a_grid, c_grid, mask, curves=(), title: str = "feasible region") -> str:
    """Shade the true cells of ``mask`` (rows follow ``c``) and overlay
    polylines given as ``(name, a_values, c_values)``."""
    a = np.asarray(a_grid, dtype=float)
    c = np.asarray(c_grid, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (len(c), len(a)):
        raise InvalidArgument("mask shape must be (len(c_grid), len(a_grid))")
    a0, a1, c0, c1 = a.min(), a.max(), c.min(), c.max()
    w = SIZE - 2 * PAD

    def px(av):
        return PAD + w * (av - a0) / ((a1 - a0) or 1)

    def py(cv):
        return SIZE - PAD - w * (cv - c0) / ((c1 - c0) or 1)

    cw = w / max(len(a) - 1, 1)
    ch = w / max(len(c) - 1, 1)
    body = [f'<rect x="{PAD}" y="{PAD}" width="{w}" height="{w}" fill="none" stroke="#999"/>']
    for i, j in np.argwhere(mask):
        body.append(
            f'<rect x="{px(a[j]) - cw / 2:.2f}" y="{py(c[i]) - ch / 2:.2f}" '
            f'width="{cw:.2f}" height="{ch:.2f}" fill="#2da44e" fill-opacity="0.55"/>'
        )
    palette = ["#cf222e", "#bc4c00", "#0969da", "#8250df", "#57606a"]
    for k, (name, av, cv) in enumerate(curves):
        av = np.asarray(av, dtype=float)
        cv = np.asarray(cv, dtype=float)
        ok = np.isfinite(av) & np.isfinite(cv) & (av >= a0) & (av <= a1) & (cv >= c0) & (cv <= c1)
        pts = [f"{px(x):.2f},{py(y):.2f}" for x, y, g in zip(av, cv, ok) if g]
        if len(pts) >= 2:
            colour = palette[k % len(palette)]
            body.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="{colour}" '
                        f'stroke-width="1.5"><title>{escape(name)}</title></polyline>')
    body.append(f'<text x="{SIZE / 2}" y="{SIZE - 10}" font-size="12" text-anchor="middle">a</text>')
    body.append(f'<text x="12" y="{SIZE / 2}" font-size="12">c</text>')
    return _doc(body, title)
