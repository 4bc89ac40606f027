"""Sidedness oracle: trace of the cross-section at a slope, or a bisecting line found there."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import EndpointTie, InternalInconsistency
from .exact import NEG_INF, POS_INF, Infinity, Perturbed, compare
from .geometry import Scene, cross_section, parallel_slope
from .levels import Coincidence, crossing_sequence, dualize, median_level
from .signseq import format_seq, reverse, trace


@dataclass(frozen=True)
class Trace:
    value: int
    seq: tuple
    slope: object = None

    def __str__(self) -> str:
        return f"{self.value}  [{format_seq(self.seq)}]"


@dataclass(frozen=True)
class Witness:
    """Common point (X, Y) of the three median levels, i.e. the bisector z = -X u + Y."""

    slope: object
    point: tuple
    ids: dict  # color -> line id of a cross-section point on the bisector

    @property
    def primal_line(self) -> tuple:
        x, y = self.point
        return (-x, y)  # (slope, intercept) in the (u, z) chart


OracleResult = Union[Trace, Witness]


def _check_not_parallel(scene: Scene, slope) -> None:
    if isinstance(slope, Infinity):
        return
    x = slope.base if isinstance(slope, Perturbed) else slope
    if isinstance(slope, Perturbed) and slope.eps != 0:
        return
    for l in scene.lines:
        if compare(x, parallel_slope(l)) == 0:
            raise ValueError(
                f"slope is parallel to line {l.id}; use check_parallel_plane or a perturbed slope"
            )


def sign_sequence(scene: Scene, slope):
    """Crossing sequence (or Coincidence) of the cross-section at ``slope``."""
    cs = cross_section(scene, slope)
    g, r, b = (median_level(dualize(cs.of_color(c))) for c in "GRB")
    return crossing_sequence(g, r, b)


def sidedness(scene: Scene, slope) -> OracleResult:
    _check_not_parallel(scene, slope)
    try:
        res = sign_sequence(scene, slope)
    except EndpointTie:
        if isinstance(slope, (Infinity, Perturbed)):
            raise
        # two median points share u here; the trace is the same just after
        res = sign_sequence(scene, Perturbed(slope, 1))
        if isinstance(res, Coincidence):
            raise InternalInconsistency("coincidence appeared only after perturbation")
    if isinstance(res, Coincidence):
        return Witness(slope, res.point, res.ids)
    return Trace(trace(res), res, slope)


def endpoint_traces(scene: Scene) -> tuple[Trace, Trace]:
    neg, pos = sidedness(scene, NEG_INF), sidedness(scene, POS_INF)
    if not isinstance(neg, Trace) or not isinstance(pos, Trace):
        raise InternalInconsistency("endpoint chart contains a bisector; scene not normalized")
    if pos.seq != reverse(neg.seq):
        raise InternalInconsistency(
            f"endpoint sequences are not reverses: {format_seq(neg.seq)} vs {format_seq(pos.seq)}"
        )
    if neg.value == pos.value:
        raise InternalInconsistency("endpoint traces agree")
    return neg, pos
