"""CSV and SVG writers with locale-independent, deterministic formatting."""
from __future__ import annotations

import csv
import math
from pathlib import Path
from xml.sax.saxutils import escape


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".12g")
    if isinstance(value, (list, tuple)):
        return ";".join(fmt(v) for v in value)
    return str(value)


def write_csv(path, header, rows) -> Path:
    """Write dict rows; missing keys become empty cells."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(row.get(h)) for h in header])
    return path


def _log_ticks(lo: float, hi: float) -> list[float]:
    ticks = []
    for e in range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1):
        for m in (1, 2, 5):
            v = m * 10.0**e
            if lo <= v <= hi:
                ticks.append(v)
    return ticks or [lo, hi]


def loglog_svg(path, title, x_label, series, width=640, height=420) -> Path:
    """Write a log-log line plot.

    ``series`` is a list of (label, color, points, axis) with ``axis`` either
    "left" or "right"; each axis gets its own log range.
    """
    ml, mr, mt, mb = 70, 70, 40, 50
    pw, ph = width - ml - mr, height - mt - mb
    xs = [x for _, _, pts, _ in series for x, _ in pts if x > 0]
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo / 2, x_hi * 2

    ranges = {}
    for side in ("left", "right"):
        ys = [y for _, _, pts, ax in series if ax == side for _, y in pts if y > 0 and math.isfinite(y)]
        if ys:
            lo, hi = min(ys), max(ys)
            if lo == hi:
                lo, hi = lo / 2, hi * 2
            ranges[side] = (lo, hi)

    def sx(x):
        return ml + pw * (math.log(x) - math.log(x_lo)) / (math.log(x_hi) - math.log(x_lo))

    def sy(y, side):
        lo, hi = ranges[side]
        return mt + ph * (1 - (math.log(y) - math.log(lo)) / (math.log(hi) - math.log(lo)))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _log_ticks(x_lo, x_hi):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{mt + ph}" x2="{x:.2f}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{mt + ph + 18}" text-anchor="middle">{t:g}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{escape(x_label)}</text>')

    for side, (lo, hi) in ranges.items():
        edge = ml if side == "left" else ml + pw
        tick = -5 if side == "left" else 5
        anchor = "end" if side == "left" else "start"
        for t in _log_ticks(lo, hi):
            y = sy(t, side)
            out.append(f'<line x1="{edge}" y1="{y:.2f}" x2="{edge + tick}" y2="{y:.2f}" stroke="black"/>')
            out.append(f'<text x="{edge + 2 * tick:.1f}" y="{y + 4:.2f}" text-anchor="{anchor}">{t:g}</text>')

    legend_y = mt + 15
    for label, color, pts, side in series:
        pts = [(x, y) for x, y in sorted(pts) if x > 0 and y > 0 and math.isfinite(y)]
        if pts and side in ranges:
            coords = " ".join(f"{sx(x):.2f},{sy(y, side):.2f}" for x, y in pts)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
            for x, y in pts:
                out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y, side):.2f}" r="2.5" fill="{color}"/>')
        out.append(f'<line x1="{ml + pw - 170}" y1="{legend_y}" x2="{ml + pw - 150}" y2="{legend_y}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw - 145}" y="{legend_y + 4}">{escape(label)} ({side} axis)</text>')
        legend_y += 16
    out.append("</svg>")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
