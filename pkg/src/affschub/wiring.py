"""Loop wiring diagrams on the cylinder.

Columns are read left to right as the factors of
``sigma^j s_{l_1} ... s_{l_k}``. A wire entering on the right at track ``i``
is pushed leftward through the columns; its height lives in Z (the universal
cover), so the number of times it wraps the cylinder is visible directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .affine_weyl import AffinePermutation, ReducedWord, decompose, greedy_reduced_word, simple_reflection


@dataclass(frozen=True)
class Wire:
    start: int     # right endpoint
    end: int       # left endpoint, pbar(start)
    winding: int   # c_start


@dataclass(frozen=True)
class Event:
    kind: str               # "cross" or "sigma"
    letter: int | None      # simple reflection index, for crossings
    wires: tuple[int, ...]  # the two crossing wires (right-endpoint labels)
    margin: bool = False    # crossing drawn over the identified border
    step: int = 0           # +1/-1 for sigma events


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    word: ReducedWord
    wires: tuple[Wire, ...]
    events: tuple[Event, ...]
    heights: tuple[tuple[int, ...], ...]  # heights[col][wire-1], col 0 = left edge

    @property
    def crossings(self) -> list[tuple[int, tuple[int, int]]]:
        out = []
        for e in self.events:
            if e.kind == "cross":
                out.append((len(out), e.wires))
        return out

    @property
    def crossing_count(self) -> int:
        return sum(1 for e in self.events if e.kind == "cross")

    def word_letters(self) -> list[int]:
        return [e.letter for e in self.events if e.kind == "cross"]


def build_diagram(p: AffinePermutation, word: ReducedWord | None = None) -> WiringDiagram:
    n = p.n
    word = word or greedy_reduced_word(p)
    j = word.sigma_power
    step = 1 if j >= 0 else -1
    factors = [("sigma", None)] * abs(j) + [("cross", a) for a in word.letters]
    # heights right of the last column are the identity; walk leftwards
    cur = list(range(1, n + 1))
    cols = [tuple(cur)]
    events_rev = []
    for kind, a in reversed(factors):
        if kind == "sigma":
            cur = [v + step for v in cur]
            events_rev.append(Event("sigma", None, (), step=step))
        else:
            s = simple_reflection(n, a)
            hit = tuple(w + 1 for w, v in enumerate(cur) if v % n in (a % n, (a + 1) % n))
            cur = [s(v) for v in cur]
            events_rev.append(Event("cross", a, hit, margin=(a == 0)))
        cols.append(tuple(cur))
    heights = tuple(reversed(cols))
    pbar, c = decompose(p)
    wires = tuple(Wire(i + 1, pbar[i], c.c[i]) for i in range(n))
    if heights[0] != p.window:
        raise AssertionError("wiring diagram does not realise the permutation")
    return WiringDiagram(n, word, wires, tuple(reversed(events_rev)), heights)


def count_geometric_crossings(heights, n: int) -> int:
    """Recount crossings from column heights, including translates by n."""
    total = 0
    m = len(heights[0])
    for left, right in zip(heights, heights[1:]):
        for a in range(m):
            for b in range(a + 1, m):
                diffs = (left[a] - left[b], right[a] - right[b])
                for shift in range(min(diffs) // n - 1, max(diffs) // n + 2):
                    if (diffs[0] > shift * n) != (diffs[1] > shift * n):
                        total += 1
    return total


# ------------------------------------------------------------------ render

_CELL = 3


def render(d: WiringDiagram, format: str = "ascii") -> str:
    if format == "ascii":
        return _render_ascii(d)
    if format == "svg":
        return _render_svg(d)
    raise ValueError(f"unknown format {format!r}")


def _render_ascii(d: WiringDiagram) -> str:
    n = d.n
    ncols = max(1, len(d.events)) * _CELL
    rows_n = _CELL * n + 1
    grid = [[" "] * ncols for _ in range(rows_n)]
    grid[0] = ["="] * ncols
    grid[-1] = ["="] * ncols

    def track_row(t: int) -> int:  # track n on top
        return 2 + _CELL * (n - t)

    for t in range(1, n + 1):
        grid[track_row(t)] = ["-"] * ncols
    for k, e in enumerate(d.events):
        c = k * _CELL + 1
        if e.kind == "sigma":
            for t in range(1, n + 1):
                grid[track_row(t)][c] = "^" if e.step > 0 else "v"
        elif e.margin:
            grid[0][c] = "X"
            grid[-1][c] = "+"
        else:
            upper = track_row(e.letter + 1)
            grid[upper][c] = "\\"
            grid[upper + 1][c] = "X"
            grid[track_row(e.letter)][c] = "/"
    right_of = {w.start: w for w in d.wires}
    left_label = {}
    for w in d.wires:
        left_label[w.end] = f"{w.start}({w.winding:+d})" if w.winding else f"{w.start}"
    width = max(len(v) for v in left_label.values())
    lines = []
    for r, row in enumerate(grid):
        t = next((t for t in range(1, n + 1) if track_row(t) == r), None)
        lab_l = left_label[t].rjust(width) if t else " " * width
        lab_r = str(right_of[t].start) if t else ""
        lines.append(f"{lab_l} {''.join(row)} {lab_r}".rstrip())
    return "\n".join(lines) + "\n"


def _render_svg(d: WiringDiagram) -> str:
    n = d.n
    dx, dy, pad = 40, 30, 50
    ncol = len(d.heights)
    width = 2 * pad + dx * max(1, ncol - 1)
    lo = min(min(h) for h in d.heights)
    hi = max(max(h) for h in d.heights)
    top_h, bottom_h = max(hi, n) + 0.5, min(lo, 1) - 0.5
    height = 2 * pad + dy * (top_h - bottom_h)

    def y(v: float) -> float:
        return pad + dy * (top_h - v)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:g}" height="{height:g}">',
    ]
    for border in (n + 0.5, 0.5):
        out.append(
            f'<line class="border" x1="{pad}" y1="{y(border):g}" x2="{width - pad}" '
            f'y2="{y(border):g}" stroke="gray" stroke-dasharray="4,3"/>'
        )
    for w in d.wires:
        pts = " ".join(f"{pad + dx * k:g},{y(col[w.start - 1]):g}" for k, col in enumerate(d.heights))
        out.append(
            f'<polyline class="wire" data-wire="{w.start}" points="{pts}" fill="none" stroke="black"/>'
        )
        out.append(
            f'<text x="{width - pad + 8}" y="{y(w.start):g}">{escape(str(w.start))}</text>'
        )
        out.append(
            f'<text x="{pad - 30}" y="{y(d.heights[0][w.start - 1]):g}">{escape(str(w.start))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_svg_heights(svg: str, n: int) -> list[tuple[int, ...]]:
    """Recover column heights from rendered polylines (inverse of ``y``)."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    wires = sorted(root.iter(ns + "polyline"), key=lambda e: int(e.get("data-wire")))
    series = []
    for el in wires:
        ys = [float(pt.split(",")[1]) for pt in el.get("points").split()]
        series.append(ys)
    # heights are affine in y with slope -1/dy; recover integer offsets
    dy = 30
    base = series[0][-1]
    cols = []
    for k in range(len(series[0])):
        cols.append(tuple(round(1 + (base - s[k]) / dy) for s in series))
    return cols
