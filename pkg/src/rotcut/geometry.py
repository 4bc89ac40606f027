"""Scenes of colored lines in 3-space and their cross-sections by planes through the z-axis.

The plane at slope ``m`` is ``{y = m x}``, spanned by the z-axis and the
horizontal direction ``(1, m, 0)``. A cross-section point is written in the
plane's affine chart ``(u, z)`` with ``u`` the x-coordinate of the
intersection. The two endpoints ``m = -inf`` and ``m = +inf`` are both the
plane ``x = 0``, read with ``u = -y`` and ``u = +y`` respectively.

For a line with anchor ``p`` and direction ``v`` every cross-section point
has homogeneous coordinates ``(A, B0 + B1 m, vy - vx m)`` where
``A = xp vy - yp vx`` etc., so orientations of point triples are the sign
of a degree-2 polynomial in ``m`` times the signs of three linear factors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DegenerateInput
from .exact import (
    AlgebraicReal,
    Infinity,
    Poly,
    as_rational,
    field_value,
    format_rational,
    isolate_roots,
    sgn,
    sign_at,
)

COLORS = ("R", "G", "B")
COLOR_NAMES = {"R": "red", "G": "green", "B": "blue"}

Vec3 = tuple[Fraction, Fraction, Fraction]


def _vec(xs) -> Vec3:
    t = tuple(as_rational(x) for x in xs)
    if len(t) != 3:
        raise ValueError("expected three coordinates")
    return t


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a: Vec3, b: Vec3) -> Fraction:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class Line3:
    id: int
    anchor: Vec3
    direction: Vec3
    color: str

    def __post_init__(self):
        object.__setattr__(self, "anchor", _vec(self.anchor))
        object.__setattr__(self, "direction", _vec(self.direction))
        if self.color not in COLORS:
            raise ValueError(f"unknown color {self.color!r}")

    # homogeneous cross-section coefficients
    @property
    def A(self) -> Fraction:
        (xp, yp, _), (vx, vy, _) = self.anchor, self.direction
        return xp * vy - yp * vx

    @property
    def B0(self) -> Fraction:
        (_, yp, zp), (_, vy, vz) = self.anchor, self.direction
        return zp * vy - yp * vz

    @property
    def B1(self) -> Fraction:
        (xp, _, zp), (vx, _, vz) = self.anchor, self.direction
        return xp * vz - zp * vx

    def row(self) -> tuple[Poly, Poly, Poly]:
        vx, vy = self.direction[0], self.direction[1]
        return Poly((self.A,)), Poly((self.B0, self.B1)), Poly((vy, -vx))

    def denominator(self) -> Poly:
        return Poly((self.direction[1], -self.direction[0]))

    def rotated(self, c: Fraction, s: Fraction) -> "Line3":
        def rot(v):
            return (c * v[0] - s * v[1], s * v[0] + c * v[1], v[2])

        return Line3(self.id, rot(self.anchor), rot(self.direction), self.color)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": [format_rational(x) for x in self.anchor],
            "dir": [format_rational(x) for x in self.direction],
            "color": self.color,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Line3":
        return cls(int(obj["id"]), obj["anchor"], obj["dir"], obj["color"])


def parallel_slope(line: Line3) -> Fraction:
    vx, vy = line.direction[0], line.direction[1]
    if vx == 0:
        raise DegenerateInput(f"line {line.id} has vx = 0; normalize the scene first")
    return vy / vx


def _det3(rows) -> object:
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = rows
    return a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2)


def _perm_sign(ids: Sequence[int]) -> tuple[tuple[int, int, int], int]:
    """Sorted key and parity of the permutation sorting ``ids``."""
    a, b, c = ids
    s = 1
    if a > b:
        a, b, s = b, a, -s
    if b > c:
        b, c, s = c, b, -s
    if a > b:
        a, b, s = b, a, -s
    return (a, b, c), s


class Scene:
    """Immutable arrangement of colored lines, plus memoized per-triple polynomials."""

    def __init__(self, lines: Iterable[Line3], rotation: tuple = (Fraction(1), Fraction(0))):
        self.lines: tuple[Line3, ...] = tuple(lines)
        self.rotation = (as_rational(rotation[0]), as_rational(rotation[1]))
        self._by_id = {l.id: l for l in self.lines}
        if len(self._by_id) != len(self.lines):
            raise DegenerateInput("duplicate line ids")
        self._polys: dict = {}
        self._events: dict = {}

    def __len__(self) -> int:
        return len(self.lines)

    def __getitem__(self, i: int) -> Line3:
        return self._by_id[i]

    @property
    def ids(self) -> list[int]:
        return [l.id for l in self.lines]

    def ids_of(self, color: str) -> list[int]:
        return [l.id for l in self.lines if l.color == color]

    def counts(self) -> dict[str, int]:
        return {c: len(self.ids_of(c)) for c in COLORS}

    def color(self, i: int) -> str:
        return self._by_id[i].color

    def parallel_slopes(self) -> dict[int, Fraction]:
        return {l.id: parallel_slope(l) for l in self.lines}

    def orientation_poly(self, i: int, j: int, k: int) -> tuple[Poly, int]:
        """(P, s) with P the cleared orientation polynomial of the sorted triple.

        The orientation of (i, j, k) in the given order is ``s`` times the
        orientation of the sorted triple.
        """
        key, s = _perm_sign((i, j, k))
        p = self._polys.get(key)
        if p is None:
            p = _det3([self._by_id[t].row() for t in key])
            self._polys[key] = p
        return p, s

    def same_lines(self, other: "Scene") -> bool:
        return self.lines == other.lines

    def to_json(self) -> dict:
        out = {"lines": [l.to_json() for l in self.lines]}
        if self.rotation != (1, 0):
            out["rotation"] = [format_rational(x) for x in self.rotation]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "Scene":
        lines = [Line3.from_json(o) for o in obj["lines"]]
        rot = obj.get("rotation", ["1", "0"])
        return cls(lines, (as_rational(rot[0]), as_rational(rot[1])))

    @classmethod
    def loads(cls, text: str) -> "Scene":
        return cls.from_json(json.loads(text))

    def __repr__(self) -> str:
        c = self.counts()
        return f"Scene(R={c['R']}, G={c['G']}, B={c['B']})"


# validation


def _line_problem(l: Line3) -> Optional[str]:
    vx, vy, vz = l.direction
    if vx == 0 and vy == 0 and vz == 0:
        return f"line {l.id} has a zero direction vector"
    if vx == 0 and vy == 0:
        return f"line {l.id} is vertical"
    if l.A == 0:
        return f"line {l.id} intersects the z-axis"
    return None


def _pair_problem(a: Line3, b: Line3) -> Optional[str]:
    cr = _cross(a.direction, b.direction)
    if cr == (0, 0, 0):
        return f"lines {a.id} and {b.id} are parallel"
    diff = tuple(y - x for x, y in zip(a.anchor, b.anchor))
    if _dot(cr, diff) == 0:
        return f"lines {a.id} and {b.id} intersect"
    # horizontal projections parallel <=> equal parallel slopes (rotation-invariant)
    if a.direction[0] * b.direction[1] == a.direction[1] * b.direction[0]:
        return f"lines {a.id} and {b.id} have the same parallel slope"
    return None


def _chart_point(l: Line3, side: int) -> tuple[Fraction, Fraction]:
    vx = l.direction[0]
    y, z = -l.A / vx, -l.B1 / vx
    return (y if side > 0 else -y, z)


def _chart_problem(scene: Scene) -> Optional[str]:
    """Problems fixable by a rotation about the z-axis (the x = 0 chart plane)."""
    for l in scene.lines:
        if l.direction[0] == 0:
            return f"line {l.id} is parallel to the plane x = 0"
    pts = {l.id: _chart_point(l, 1) for l in scene.lines}
    seen: dict = {}
    for i, (u, _) in pts.items():
        if u in seen:
            return f"lines {seen[u]} and {i} are vertically aligned in the plane x = 0"
        seen[u] = i
    items = sorted(pts.items())
    for n, (i, (ui, zi)) in enumerate(items):
        dirs: dict = {}
        for j, (uj, zj) in items[n + 1:]:
            d = (zj - zi) / (uj - ui)  # u-values are distinct here
            if d in dirs:
                return f"lines {(i, dirs[d], j)} meet the plane x = 0 in collinear points"
            dirs[d] = j
    return None


def _structural_problem(scene: Scene) -> Optional[str]:
    """Problems no rotation about the z-axis can fix."""
    for color, n in scene.counts().items():
        if n % 2 == 0:
            return f"{COLOR_NAMES[color]} class has even size {n}"
    for l in scene.lines:
        msg = _line_problem(l)
        if msg:
            return msg
    for a, b in combinations(scene.lines, 2):
        msg = _pair_problem(a, b)
        if msg:
            return msg
    return None


def always_collinear(scene: Scene) -> Optional[tuple]:
    """A triple whose cross-section points are collinear at every slope, if any (O(n^3))."""
    for t in combinations(scene.ids, 3):
        if scene.orientation_poly(*t)[0].is_zero():
            return t
    return None


def check_scene(scene: Scene) -> Optional[str]:
    """First violated invariant, or None. Includes the cubic always-collinear test."""
    msg = _structural_problem(scene) or _chart_problem(scene)
    if msg is None and (t := always_collinear(scene)):
        msg = f"lines {t} are collinear in every cross-section"
    return msg


def validate_and_normalize(scene: Scene, seed: Optional[int] = 0, attempts: int = 200) -> Scene:
    """Return a valid scene, rotating about the z-axis by a rational angle if needed.

    A scene that is already valid is returned unchanged (identity rotation).
    Otherwise rotations by ``(a^2-b^2, 2ab)/(a^2+b^2)`` with random small
    ``a, b`` are tried; the accepted rotation is stored on the result.
    """
    msg = _structural_problem(scene)
    if msg:
        raise DegenerateInput(msg)
    msg = _chart_problem(scene)
    if msg is None:
        return scene
    rng = random.Random(seed)
    c0, s0 = scene.rotation
    for _ in range(attempts):
        a, b = rng.randint(1, 40), rng.randint(1, 40)
        h = a * a + b * b
        c, s = Fraction(a * a - b * b, h), Fraction(2 * a * b, h)
        rotated = Scene(
            (l.rotated(c, s) for l in scene.lines), (c0 * c - s0 * s, s0 * c + c0 * s)
        )
        if _chart_problem(rotated) is None:
            return rotated
    raise DegenerateInput(f"no rotation fixes: {msg}")


def generate_scene(reds: int, greens: int, blues: int, coord_bound: int, seed: int,
                   max_rejections: int = 10000) -> Scene:
    """Random integer-coordinate scene in general position, deterministic in ``seed``."""
    for name, k in (("reds", reds), ("greens", greens), ("blues", blues)):
        if k < 1 or k % 2 == 0:
            raise ValueError(f"{name} must be odd and >= 1, got {k}")
    if coord_bound < 1:
        raise ValueError("coord_bound must be positive")
    rng = random.Random(seed)
    colors = ["R"] * reds + ["G"] * greens + ["B"] * blues
    rejections = 0
    lines: list[Line3] = []
    while len(lines) < len(colors):
        i = len(lines)
        B = coord_bound
        cand = Line3(
            i,
            tuple(rng.randint(-B, B) for _ in range(3)),
            tuple(rng.randint(-B, B) for _ in range(3)),
            colors[i],
        )
        if _accepts(lines, cand):
            lines.append(cand)
            continue
        rejections += 1
        if rejections > max_rejections:
            raise ValueError(
                f"gave up after {max_rejections} rejections; coord_bound={coord_bound} too small"
            )
    return Scene(lines)


def _accepts(lines: list[Line3], cand: Line3) -> bool:
    if _line_problem(cand) or cand.direction[0] == 0:
        return False
    if any(_pair_problem(l, cand) for l in lines):
        return False
    pc = _chart_point(cand, 1)
    pts = [_chart_point(l, 1) for l in lines]
    if any(p[0] == pc[0] for p in pts):
        return False
    rows = [l.row() for l in lines]
    rc = cand.row()
    for a, b in combinations(range(len(lines)), 2):
        if _det3([(pts[a][0], pts[a][1], 1), (pts[b][0], pts[b][1], 1), (pc[0], pc[1], 1)]) == 0:
            return False
        if _det3([rows[a], rows[b], rc]).is_zero():
            return False
    return True


# cross-sections


class CSPoint(NamedTuple):
    id: int
    color: str
    u: object
    z: object


@dataclass(frozen=True)
class CrossSection:
    points: tuple[CSPoint, ...]
    slope: object
    omitted: Optional[int] = None  # id of the line parallel to the plane, if any

    def of_color(self, color: str) -> list[CSPoint]:
        return [p for p in self.points if p.color == color]

    def point(self, i: int) -> CSPoint:
        for p in self.points:
            if p.id == i:
                return p
        raise KeyError(i)


def cross_section(scene: Scene, slope) -> CrossSection:
    if isinstance(slope, Infinity):
        pts = tuple(
            CSPoint(l.id, l.color, *_chart_point(l, slope.sign)) for l in scene.lines
        )
        return CrossSection(pts, slope)
    m = field_value(slope)
    pts, omitted = [], None
    for l in scene.lines:
        vx, vy = l.direction[0], l.direction[1]
        d = vy - m * vx
        if sgn(d) == 0:
            omitted = l.id
            continue
        pts.append(CSPoint(l.id, l.color, l.A / d, (m * l.B1 + l.B0) / d))
    return CrossSection(tuple(pts), slope, omitted)


def orientation(scene: Scene, slope, i: int, j: int, k: int) -> int:
    """Exact orientation (+1 ccw, -1 cw, 0 collinear) of three cross-section points."""
    if len({i, j, k}) != 3:
        raise ValueError("orientation needs three distinct points")
    if isinstance(slope, Infinity):
        pts = [_chart_point(scene[t], slope.sign) for t in (i, j, k)]
        return sgn(_det3([(u, z, 1) for u, z in pts]))
    p, s = scene.orientation_poly(i, j, k)
    out = s * sign_at(p, slope)
    if out == 0:
        for t in (i, j, k):
            if sign_at(scene[t].denominator(), slope) == 0:
                raise ValueError(f"line {t} is parallel to the plane at this slope")
        return 0
    for t in (i, j, k):
        d = sign_at(scene[t].denominator(), slope)
        if d == 0:
            raise ValueError(f"line {t} is parallel to the plane at this slope")
        out *= d
    return out


def collinearity_events(scene: Scene, i: int, j: int, k: int) -> list[tuple[AlgebraicReal, tuple]]:
    """Slopes at which the three cross-section points are collinear, ascending."""
    if len({i, j, k}) != 3:
        raise ValueError("collinearity_events needs three distinct ids")
    key, _ = _perm_sign((i, j, k))
    cached = scene._events.get(key)
    if cached is None:
        p, _ = scene.orientation_poly(*key)
        if p.is_zero():
            raise DegenerateInput(f"lines {key} are collinear in every cross-section")
        # a root at a parallel slope is a vanishing point, not a collinearity
        par = [m for m in (parallel_slope(scene[t]) for t in key) if p(m) == 0]
        cached = [r for r in isolate_roots(p) if not any(r == m for m in par)]
        scene._events[key] = cached
    return [(r, (i, j, k)) for r in cached]


def demo_scene() -> Scene:
    """Small fixed 3-line scene (one line per color) used in docs and tests.

    At slope 0 its cross-section is (1, 0), (1, 1), (-1, 2).
    """
    return Scene([
        Line3(0, (1, 0, 0), (1, 1, 1), "R"),
        Line3(1, (0, 1, 1), (1, -1, 0), "G"),
        Line3(2, (-1, 0, 2), (2, 1, 1), "B"),
    ])
