"""Minimal static SVG writer: line charts and heatmaps, no plotting backend."""
from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 440
MARGIN = dict(left=78, right=24, top=36, bottom=58)
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
# perceptually ordered anchors, interpolated linearly
CMAP = [(68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37)]


class _Axis:
    def __init__(self, lo, hi, log, p0, p1):
        if log:
            if lo <= 0 or hi <= 0:
                raise ValueError("log axis needs positive limits")
            lo, hi = math.log10(lo), math.log10(hi)
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        self.lo, self.hi, self.log, self.p0, self.p1 = lo, hi, log, p0, p1

    def __call__(self, v):
        v = math.log10(v) if self.log else v
        return self.p0 + (v - self.lo) / (self.hi - self.lo) * (self.p1 - self.p0)

    def ticks(self):
        if self.log:
            first, last = math.ceil(self.lo - 1e-9), math.floor(self.hi + 1e-9)
            step = max(1, int(math.ceil((last - first + 1) / 8)))
            return [(10.0 ** e, f"1e{e}") for e in range(first, last + 1, step)]
        span = self.hi - self.lo
        raw = span / 6
        mag = 10 ** math.floor(math.log10(raw))
        step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=mag)
        start = math.ceil(self.lo / step) * step
        out = []
        v = start
        while v <= self.hi + 1e-9 * span:
            out.append((v, f"{v:g}"))
            v += step
        return out


def _frame(title, xlabel, ylabel, xa: _Axis, ya: _Axis) -> list[str]:
    L, R = MARGIN["left"], WIDTH - MARGIN["right"]
    T, B = MARGIN["top"], HEIGHT - MARGIN["bottom"]
    out = [f'<rect x="{L}" y="{T}" width="{R - L}" height="{B - T}" fill="none" stroke="#333"/>']
    for v, lab in xa.ticks():
        px = xa(v)
        out.append(f'<line x1="{px:.1f}" y1="{B}" x2="{px:.1f}" y2="{B + 5}" stroke="#333"/>')
        out.append(f'<text x="{px:.1f}" y="{B + 18}" font-size="11" text-anchor="middle">{escape(lab)}</text>')
    for v, lab in ya.ticks():
        py = ya(v)
        out.append(f'<line x1="{L - 5}" y1="{py:.1f}" x2="{L}" y2="{py:.1f}" stroke="#333"/>')
        out.append(f'<text x="{L - 8}" y="{py + 4:.1f}" font-size="11" text-anchor="end">{escape(lab)}</text>')
    out.append(f'<text x="{(L + R) / 2}" y="{HEIGHT - 16}" font-size="13" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="18" y="{(T + B) / 2}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 18 {(T + B) / 2})">{escape(ylabel)}</text>')
    out.append(f'<text x="{(L + R) / 2}" y="22" font-size="14" text-anchor="middle">{escape(title)}</text>')
    return out


def _doc(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">')
    return "\n".join([head, f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>', *body, "</svg>"]) + "\n"


def line_chart(series: Sequence[tuple[str, Sequence[float], Sequence[float]]], *, title: str = "",
               xlabel: str = "", ylabel: str = "", logx: bool = False, logy: bool = False,
               hline: Optional[float] = None) -> str:
    """Render (label, x, y) series as polylines; non-finite or non-plottable points break the line."""
    xs = np.concatenate([np.asarray(s[1], float) for s in series])
    ys = np.concatenate([np.asarray(s[2], float) for s in series])
    okx = np.isfinite(xs) & ((xs > 0) if logx else True)
    oky = np.isfinite(ys) & ((ys > 0) if logy else True)
    if hline is not None:
        ys = np.append(ys, hline)
        oky = np.append(oky, True)
    xa = _Axis(xs[okx].min(), xs[okx].max(), logx, MARGIN["left"], WIDTH - MARGIN["right"])
    ya = _Axis(ys[oky].min(), ys[oky].max(), logy, HEIGHT - MARGIN["bottom"], MARGIN["top"])
    body = _frame(title, xlabel, ylabel, xa, ya)
    for i, (label, x, y) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        runs, cur = [], []
        for xv, yv in zip(x, y):
            good = (math.isfinite(xv) and math.isfinite(yv)
                    and (xv > 0 or not logx) and (yv > 0 or not logy))
            if good:
                cur.append(f"{xa(xv):.2f},{ya(yv):.2f}")
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        for run in runs:
            body.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{" ".join(run)}"/>')
        ly = MARGIN["top"] + 16 + 16 * i
        lx = WIDTH - MARGIN["right"] - 150
        body.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        body.append(f'<text x="{lx + 26}" y="{ly + 4}" font-size="11">{escape(label)}</text>')
    if hline is not None:
        py = ya(hline)
        body.append(f'<line x1="{MARGIN["left"]}" y1="{py:.1f}" x2="{WIDTH - MARGIN["right"]}" '
                    f'y2="{py:.1f}" stroke="#777" stroke-dasharray="4 3"/>')
    return _doc(body)


def _color(t: float) -> str:
    if not math.isfinite(t):
        return "#cccccc"
    t = min(max(t, 0.0), 1.0) * (len(CMAP) - 1)
    i = min(int(t), len(CMAP) - 2)
    f = t - i
    c = [round(a + (b - a) * f) for a, b in zip(CMAP[i], CMAP[i + 1])]
    return "#%02x%02x%02x" % tuple(c)


def heatmap(x: Sequence[float], y: Sequence[float], z, *, title: str = "", xlabel: str = "",
            ylabel: str = "", logx: bool = False, logy: bool = False, logz: bool = False) -> str:
    """Render z[iy, ix] on a rect grid; cell edges sit halfway between samples."""
    x, y, z = np.asarray(x, float), np.asarray(y, float), np.asarray(z, float)

    def edges(v, log):
        w = np.log10(v) if log else v
        mid = (w[1:] + w[:-1]) / 2
        e = np.concatenate([[w[0] - (mid[0] - w[0])], mid, [w[-1] + (w[-1] - mid[-1])]])
        return 10 ** e if log else e

    ex, ey = edges(x, logx), edges(y, logy)
    xa = _Axis(ex[0], ex[-1], logx, MARGIN["left"], WIDTH - MARGIN["right"] - 60)
    ya = _Axis(ey[0], ey[-1], logy, HEIGHT - MARGIN["bottom"], MARGIN["top"])
    zz = np.log10(np.where(z > 0, z, np.nan)) if logz else z
    finite = zz[np.isfinite(zz)]
    zlo, zhi = (finite.min(), finite.max()) if finite.size else (0.0, 1.0)
    span = zhi - zlo or 1.0
    body = []
    for iy in range(len(y)):
        y0, y1 = ya(ey[iy + 1]), ya(ey[iy])
        for ix in range(len(x)):
            x0, x1 = xa(ex[ix]), xa(ex[ix + 1])
            body.append(f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{x1 - x0 + 0.3:.2f}" '
                        f'height="{y1 - y0 + 0.3:.2f}" fill="{_color((zz[iy, ix] - zlo) / span)}"/>')
    body += _frame(title, xlabel, ylabel, xa, ya)
    bx = WIDTH - MARGIN["right"] - 40
    top, bot = MARGIN["top"], HEIGHT - MARGIN["bottom"]
    for k in range(50):
        yk = bot - (k + 1) * (bot - top) / 50
        body.append(f'<rect x="{bx}" y="{yk:.2f}" width="14" height="{(bot - top) / 50 + 0.5:.2f}" '
                    f'fill="{_color(k / 49)}"/>')
    fmt = (lambda v: f"1e{v:.2g}") if logz else (lambda v: f"{v:.3g}")
    body.append(f'<text x="{bx + 18}" y="{top + 8}" font-size="10">{escape(fmt(zhi))}</text>')
    body.append(f'<text x="{bx + 18}" y="{bot}" font-size="10">{escape(fmt(zlo))}</text>')
    return _doc(body)
