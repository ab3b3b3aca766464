"""Minimal static SVG line charts (no plotting dependency)."""

import math
from xml.sax.saxutils import escape

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173",
]

WIDTH, HEIGHT = 640, 400
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 20, 40, 50


def _nice_ticks(lo, hi, count=6):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=mag * 10)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def line_chart(series, title="", xlabel="iteration", ylabel="", log_y=False,
               width=WIDTH, height=HEIGHT):
    """Render ``series`` (list of (label, xs, ys)) as an SVG 1.1 document string.

    On a log axis, non-positive and non-finite values are dropped.
    """
    pts = []
    for label, xs, ys in series:
        keep = [(float(x), float(y)) for x, y in zip(xs, ys)
                if math.isfinite(y) and (y > 0 or not log_y)]
        pts.append((label, keep))
    all_x = [x for _, p in pts for x, _ in p] or [0.0, 1.0]
    all_y = [y for _, p in pts for _, y in p] or [1.0]
    tf = math.log10 if log_y else (lambda v: v)
    x0, x1 = min(all_x), max(all_x)
    y0, y1 = tf(min(all_y)), tf(max(all_y))
    if log_y:
        y0, y1 = math.floor(y0), math.ceil(y1)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1

    pw = width - MARGIN_LEFT - MARGIN_RIGHT
    ph = height - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x):
        return MARGIN_LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_TOP + (1 - (tf(y) - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    # y grid
    if log_y:
        yticks = [(10.0 ** e, f"1e{e}") for e in range(int(y0), int(y1) + 1)]
        step = max(1, len(yticks) // 8)
        yticks = yticks[::step]
    else:
        yticks = [(t, f"{t:g}") for t in _nice_ticks(y0, y1)]
    for val, text in yticks:
        y = sy(val)
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y:.1f}" x2="{width - MARGIN_RIGHT}" y2="{y:.1f}" '
                   f'stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_LEFT - 6}" y="{y + 4:.1f}" text-anchor="end">{text}</text>')
    for t in _nice_ticks(x0, x1):
        x = sx(t)
        out.append(f'<line x1="{x:.1f}" y1="{MARGIN_TOP + ph}" x2="{x:.1f}" y2="{MARGIN_TOP + ph + 4}" '
                   f'stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{MARGIN_TOP + ph + 17}" text-anchor="middle">{t:g}</text>')
    out.append(f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" '
               f'stroke="black"/>')
    out.append(f'<text x="{MARGIN_LEFT + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    out.append(f'<text x="16" y="{MARGIN_TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {MARGIN_TOP + ph / 2:.1f})">{escape(ylabel)}</text>')
    for k, (label, p) in enumerate(pts):
        if not p:
            continue
        color = PALETTE[k % len(PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in p)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}">'
                   f'<title>{escape(label)}</title></polyline>')
    if 1 < len(pts) <= 6:
        for k, (label, _) in enumerate(pts):
            y = MARGIN_TOP + 14 + 14 * k
            color = PALETTE[k % len(PALETTE)]
            out.append(f'<line x1="{width - MARGIN_RIGHT - 120}" y1="{y - 4}" '
                       f'x2="{width - MARGIN_RIGHT - 100}" y2="{y - 4}" stroke="{color}" stroke-width="2"/>')
            out.append(f'<text x="{width - MARGIN_RIGHT - 95}" y="{y}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
