"""The Solution record shared by the fast solver and the brute-force oracle."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exact import AlgebraicReal, as_rational, format_rational
from .geometry import COLORS, Scene, cross_section, orientation

COLLINEAR = "collinear-triple"
PARALLEL = "parallel-degenerate"


def slope_to_json(x):
    if isinstance(x, AlgebraicReal):
        if x.is_rational:
            return format_rational(x.rational)
        return x.to_json()
    return format_rational(Fraction(x))


def slope_from_json(obj) -> Union[Fraction, AlgebraicReal]:
    if isinstance(obj, str):
        return as_rational(obj)
    r = AlgebraicReal.from_json(obj)
    return r.rational if r.is_rational else r


@dataclass
class Solution:
    slope: Union[Fraction, AlgebraicReal]
    kind: str
    witness: list[int]
    bisector: tuple[int, int]
    counts: dict[str, list[int]] = field(default_factory=dict)
    rotation: tuple[Fraction, Fraction] = (Fraction(1), Fraction(0))
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def parallel_line(self) -> Optional[int]:
        return self.witness[2] if self.kind == PARALLEL else None

    def to_json(self) -> dict:
        return {
            "slope": slope_to_json(self.slope),
            "kind": self.kind,
            "witness": list(self.witness),
            "bisector": list(self.bisector),
            "counts": {c: list(self.counts[c]) for c in COLORS if c in self.counts},
            "rotation": [format_rational(x) for x in self.rotation],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "Solution":
        rot = obj.get("rotation", ["1/1", "0/1"])
        return cls(
            slope_from_json(obj["slope"]),
            obj["kind"],
            [int(i) for i in obj["witness"]],
            tuple(int(i) for i in obj["bisector"]),
            {c: list(v) for c, v in obj.get("counts", {}).items()},
            (as_rational(rot[0]), as_rational(rot[1])),
        )


def side_counts(scene: Scene, slope, p: int, q: int) -> dict[str, list[int]]:
    """Per color (above, on, below) for the line through points p and q of the cross-section.

    "Above" is the left side of p->q after ordering p, q by u.
    """
    cs = cross_section(scene, slope)
    a, b = cs.point(p), cs.point(q)
    if (b.u, b.z) < (a.u, a.z):
        p, q = q, p
    out = {c: [0, 0, 0] for c in COLORS}
    for pt in cs.points:
        if pt.id in (p, q):
            out[pt.color][1] += 1
            continue
        o = orientation(scene, slope, p, q, pt.id)
        out[pt.color][1 - o] += 1
    return out


def bisects(counts: dict[str, list[int]], sizes: dict[str, int]) -> bool:
    return all(counts[c][0] <= sizes[c] // 2 and counts[c][2] <= sizes[c] // 2 for c in COLORS)


def class_sizes(scene: Scene, omitted: Optional[int] = None) -> dict[str, int]:
    sizes = scene.counts()
    if omitted is not None:
        sizes[scene.color(omitted)] -= 1
    return sizes
