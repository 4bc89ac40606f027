"""Brute-force ground truth: every candidate event is tested for a bisecting line."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Union

from .errors import InternalInconsistency, VerificationFailed
from .exact import AlgebraicReal, compare, sgn
from .geometry import (
    COLORS,
    CrossSection,
    Scene,
    collinearity_events,
    cross_section,
    parallel_slope,
)
from .solution import COLLINEAR, PARALLEL, Solution, bisects, class_sizes, side_counts, slope_to_json


@dataclass
class EventRecord:
    slope: Union[Fraction, AlgebraicReal]
    provenance: tuple  # ("triple", (i, j, k)) or ("parallel", line_id)
    is_solution: bool = False
    witness: Optional[tuple[int, int]] = None

    @property
    def is_parallel(self) -> bool:
        return self.provenance[0] == "parallel"

    def to_json(self) -> dict:
        kind, data = self.provenance
        return {
            "slope": slope_to_json(self.slope),
            "approx": float(self.slope),
            "provenance": {"kind": kind, "ids": list(data) if kind == "triple" else [data]},
            "is_solution": self.is_solution,
            "witness": list(self.witness) if self.witness else None,
        }


def _counts_direct(cs: CrossSection, p, q) -> dict[str, list[int]]:
    """Side counts for rational cross-sections, straight from the coordinates."""
    a, b = cs.point(p), cs.point(q)
    if (b.u, b.z) < (a.u, a.z):
        a, b = b, a
    out = {c: [0, 0, 0] for c in COLORS}
    du, dz = b.u - a.u, b.z - a.z
    for pt in cs.points:
        o = sgn(du * (pt.z - a.z) - dz * (pt.u - a.u))
        out[pt.color][1 - o] += 1
    return out


def check_parallel_plane(scene: Scene, line_id: int) -> Optional[Solution]:
    """Look for a bisector at the slope where ``line_id`` is parallel to the plane.

    The line's class loses a point and becomes even; a bisector then passes
    through one point of each of the two remaining odd classes.
    """
    m = parallel_slope(scene[line_id])
    cs = cross_section(scene, m)
    sizes = class_sizes(scene, line_id)
    odd = [c for c in COLORS if sizes[c] % 2 == 1]
    first, second = cs.of_color(odd[0]), cs.of_color(odd[1])
    for p in first:
        for q in second:
            counts = _counts_direct(cs, p.id, q.id)
            if bisects(counts, sizes):
                return Solution(m, PARALLEL, [p.id, q.id, line_id], (p.id, q.id), counts,
                                scene.rotation)
    return None


def _triple_solution(scene: Scene, slope, triple) -> Optional[Solution]:
    if sorted(scene.color(i) for i in triple) != ["B", "G", "R"]:
        return None
    i, j, _ = triple
    counts = side_counts(scene, slope, i, j)
    if bisects(counts, class_sizes(scene)):
        by_color = sorted(triple, key=lambda t: "RGB".index(scene.color(t)))
        return Solution(slope, COLLINEAR, by_color, (i, j), counts, scene.rotation)
    return None


def all_events(scene: Scene) -> list[EventRecord]:
    out = []
    for t in combinations(scene.ids, 3):
        for r, _ in collinearity_events(scene, *t):
            out.append(EventRecord(r.rational if r.is_rational else r, ("triple", t)))
    for l in scene.lines:
        out.append(EventRecord(parallel_slope(l), ("parallel", l.id)))
    out.sort(key=cmp_to_key(lambda a, b: compare(a.slope, b.slope)))
    return out


def _event_solution(scene: Scene, e: EventRecord) -> Optional[Solution]:
    if e.is_parallel:
        return check_parallel_plane(scene, e.provenance[1])
    return _triple_solution(scene, e.slope, e.provenance[1])


def brute_solve(scene: Scene) -> list[EventRecord]:
    """Every event, sorted by slope, with solutions marked."""
    events = all_events(scene)
    for e in events:
        sol = _event_solution(scene, e)
        if sol is not None:
            e.is_solution, e.witness = True, sol.bisector
    return events


def brute_solution(scene: Scene) -> Solution:
    """The first solution in slope order, found by exhaustive testing."""
    for e in all_events(scene):
        sol = _event_solution(scene, e)
        if sol is not None:
            return sol
    raise InternalInconsistency("no event carries a bisector")


def solution_slopes(events: list[EventRecord]) -> list:
    return [e.slope for e in events if e.is_solution]


def parallel_solution_exists(events: list[EventRecord]) -> bool:
    """Whether some parallel event carries a bisector (recorded as experimental data)."""
    return any(e.is_solution and e.is_parallel for e in events)


def dumps_events(events: list[EventRecord]) -> str:
    return json.dumps({"events": [e.to_json() for e in events]}, indent=2) + "\n"


def bisector_in_crosssection(cs: CrossSection) -> Optional[tuple[int, int]]:
    """A bisecting line through two of the points, if any (rational cross-sections)."""
    sizes = {c: len(cs.of_color(c)) for c in COLORS}
    for a, b in combinations(cs.points, 2):
        if a.color == b.color:
            continue
        counts = _counts_direct(cs, a.id, b.id)
        if bisects(counts, sizes):
            return (a.id, b.id)
    return None


def rotate_to(scene: Scene, rotation) -> Scene:
    """The scene rotated about the z-axis so that its stored rotation becomes ``rotation``."""
    c0, s0 = scene.rotation
    c1, s1 = rotation
    if (c0, s0) == (c1, s1):
        return scene
    # relative rotation R1 * R0^-1
    c, s = c1 * c0 + s1 * s0, s1 * c0 - c1 * s0
    return Scene((l.rotated(c, s) for l in scene.lines), (c1, s1))


def verify_solution(scene: Scene, sol: Solution) -> dict[str, list[int]]:
    """Recompute side counts of the witness line exactly; raise VerificationFailed if not bisecting."""
    scene = rotate_to(scene, sol.rotation)
    omitted = sol.parallel_line
    if omitted is None:
        for l in scene.lines:
            if compare(sol.slope, parallel_slope(l)) == 0:
                omitted = l.id
    sizes = class_sizes(scene, omitted)
    p, q = sol.bisector
    if p in (omitted,) or q in (omitted,) or p == q:
        raise ValueError("bisector must pass through two distinct cross-section points")
    counts = side_counts(scene, sol.slope, p, q)
    for c in COLORS:
        above, on, below = counts[c]
        half = sizes[c] // 2
        if above > half or below > half:
            raise VerificationFailed(c, (above, on, below), sizes[c])
    return counts
