"""Dual line arrangements, median levels, and crossings along the green level.

Values here are elements of any exact ordered field (Fraction, QuadSurd, Eps),
so the same code serves rational, quadratic-irrational and perturbed slopes.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import NamedTuple, Optional, Sequence

from .errors import DegenerateArrangement, EndpointTie, InternalInconsistency
from .exact import sgn
from .signseq import Sym, validate


class DualLine(NamedTuple):
    """The line y = slope * x + intercept, dual to the point (slope, intercept)."""

    slope: object
    intercept: object
    id: int
    color: str

    def at(self, x):
        return self.slope * x + self.intercept


def dualize(points) -> list[DualLine]:
    return [DualLine(p.u, p.z, p.id, p.color) for p in points]


def _meet(a: DualLine, b: DualLine):
    """x-coordinate of the intersection of two non-parallel lines."""
    return (b.intercept - a.intercept) / (a.slope - b.slope)


@dataclass
class LevelPolyline:
    """x-monotone curve: segment i lies on line ``ids[i]`` between ``breaks[i-1]`` and ``breaks[i]``."""

    ids: list[int]
    breaks: list
    lines: dict[int, DualLine] = field(repr=False)
    color: str = ""

    def line_at(self, x) -> DualLine:
        # breaks are ordered; bisect works because field elements implement <
        return self.lines[self.ids[bisect_left(self.breaks, x)]]

    def value_at(self, x):
        return self.line_at(x).at(x)

    @property
    def first(self) -> DualLine:
        return self.lines[self.ids[0]]

    @property
    def last(self) -> DualLine:
        return self.lines[self.ids[-1]]


def _left_order(a: DualLine, b: DualLine) -> int:
    """Order at x -> -inf, lowest first."""
    if a.slope != b.slope:
        return -1 if a.slope > b.slope else 1
    if a.intercept != b.intercept:
        return -1 if a.intercept < b.intercept else 1
    raise DegenerateArrangement(f"dual lines {a.id} and {b.id} coincide")


def median_level(duals: Sequence[DualLine]) -> LevelPolyline:
    """Walk the floor(m/2)-level from x = -inf to x = +inf."""
    duals = list(duals)
    if not duals:
        raise ValueError("median level of an empty arrangement")
    by_id = {d.id: d for d in duals}
    color = duals[0].color
    start = sorted(duals, key=cmp_to_key(_left_order))
    k = len(duals) // 2
    cur = start[k]
    ids, breaks = [cur.id], []
    x_cur = None
    while True:
        best, group = None, []
        for d in duals:
            if d.id == cur.id:
                continue
            if d.slope == cur.slope:
                if d.intercept == cur.intercept:
                    raise DegenerateArrangement(f"dual lines {d.id} and {cur.id} coincide")
                continue
            x = _meet(cur, d)
            if x_cur is not None and not x > x_cur:
                continue
            if best is None or x < best:
                best, group = x, [d]
            elif x == best:
                group.append(d)
        if best is None:
            break
        group.append(cur)
        # just left of the vertex the lowest line has the largest slope, just right the smallest
        group.sort(key=lambda d: d.slope)
        p = len(group) - 1 - group.index(cur)
        nxt = group[p]
        x_cur = best
        if nxt.id != cur.id:
            breaks.append(best)
            ids.append(nxt.id)
            cur = nxt
    return LevelPolyline(ids, breaks, by_id, color)


def kth_value(duals: Sequence[DualLine], x, k: Optional[int] = None):
    """Direct selection: the k-th smallest line value at x (default k = floor(m/2))."""
    vals = sorted(d.at(x) for d in duals)
    return vals[len(vals) // 2 if k is None else k]


class Contact(NamedTuple):
    x: object
    crossing: bool  # False for a touching contact
    sign: int       # +1 from above, -1 from below (0 for touches)


@dataclass(frozen=True)
class Coincidence:
    """The three median levels share the point (x, y): a common bisector exists."""

    point: tuple
    ids: dict  # color -> dual line id through the point


def _merged_breaks(a: LevelPolyline, b: LevelPolyline) -> list:
    out: list = []
    i = j = 0
    A, B = a.breaks, b.breaks
    while i < len(A) or j < len(B):
        if j >= len(B) or (i < len(A) and A[i] < B[j]):
            x = A[i]
            i += 1
        elif i >= len(A) or B[j] < A[i]:
            x = B[j]
            j += 1
        else:
            x = A[i]
            i += 1
            j += 1
        out.append(x)
    return out


def contacts(green: LevelPolyline, other: LevelPolyline) -> list[Contact]:
    """All points where ``other`` meets ``green``, left to right."""
    xs = _merged_breaks(green, other)
    gi = oi = 0  # segment indices of the piece to the right of the current break
    out: list[Contact] = []

    def piece_lines():
        return green.lines[green.ids[gi]], other.lines[other.ids[oi]]

    for n in range(len(xs) + 1):
        g, o = piece_lines()
        ds = o.slope - g.slope
        lo = xs[n - 1] if n > 0 else None
        hi = xs[n] if n < len(xs) else None
        if sgn(ds) == 0:
            if o.intercept == g.intercept:
                raise DegenerateArrangement("median levels overlap on a segment")
        else:
            x0 = _meet(g, o)
            if (lo is None or x0 > lo) and (hi is None or x0 < hi):
                out.append(Contact(x0, True, -sgn(ds)))
        if hi is None:
            break
        # advance to the piece right of hi, then classify a contact at hi itself
        if gi < len(green.breaks) and green.breaks[gi] == hi:
            gi += 1
        if oi < len(other.breaks) and other.breaks[oi] == hi:
            oi += 1
        g2, o2 = piece_lines()
        if sgn(o2.at(hi) - g2.at(hi)) != 0:
            continue
        left = -sgn(o.slope - g.slope)
        right = sgn(o2.slope - g2.slope)
        if left == 0 or right == 0:
            raise DegenerateArrangement("median levels overlap on a segment")
        if left != right:
            out.append(Contact(hi, True, left))
        else:
            out.append(Contact(hi, False, 0))
    return out


def _through(level: LevelPolyline, x, y) -> int:
    hits = [d.id for d in level.lines.values() if d.at(x) == y]
    return min(hits)


def crossing_sequence(green: LevelPolyline, red: LevelPolyline, blue: LevelPolyline):
    """The sign sequence of red/blue crossings along ``green``, or a Coincidence.

    Touching contacts are dropped (they sit exactly at an insertion or
    deletion event and either choice gives the same trace). Raises
    EndpointTie when some level runs parallel to green at x = +-inf.
    """
    rc, bc = contacts(green, red), contacts(green, blue)
    i = j = 0
    while i < len(rc) and j < len(bc):
        xr, xb = rc[i].x, bc[j].x
        if xr == xb:
            y = green.value_at(xr)
            ids = {"R": _through(red, xr, y), "G": _through(green, xr, y), "B": _through(blue, xr, y)}
            return Coincidence((xr, y), ids)
        if xr < xb:
            i += 1
        else:
            j += 1
    for lv in (red, blue):
        if lv.first.slope == green.first.slope or lv.last.slope == green.last.slope:
            raise EndpointTie(f"{lv.color} and green median levels are parallel at infinity")
    merged = [(c.x, "R", c.sign) for c in rc if c.crossing]
    merged += [(c.x, "B", c.sign) for c in bc if c.crossing]
    merged.sort(key=cmp_to_key(lambda a, b: -1 if a[0] < b[0] else 1))
    seq = tuple(Sym(col, s) for _, col, s in merged)
    problem = validate(seq)
    if problem:
        raise InternalInconsistency(f"crossing sequence is not a sign sequence: {problem}")
    return seq
