"""Fast solver: parallel-event prescan, then parametric search over a sorting network."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Protocol, Sequence, Union

from .bruteforce import check_parallel_plane, verify_solution
from .errors import InternalInconsistency
from .exact import NEG_INF, POS_INF, AlgebraicReal, Perturbed, compare, rational_between
from .geometry import Scene, collinearity_events, orientation, validate_and_normalize
from .oracle import Witness, endpoint_traces, sidedness
from .solution import COLLINEAR, Solution, side_counts

log = logging.getLogger(__name__)


@dataclass
class Interval:
    """Open slope interval whose two ends carry different traces."""

    lo: object
    hi: object
    tau_lo: int
    tau_hi: int

    def __post_init__(self):
        if compare(self.lo, self.hi) >= 0:
            raise InternalInconsistency("empty interval")
        if self.tau_lo == self.tau_hi:
            raise InternalInconsistency("interval ends carry equal traces")

    def contains(self, t) -> bool:
        return compare(self.lo, t) < 0 and compare(t, self.hi) < 0

    def sample(self) -> Fraction:
        return rational_between(self.lo, self.hi)


class KineticFamily(Protocol):
    ids: Sequence[int]

    def orientation(self, t, i: int, j: int, k: int) -> int: ...

    def events(self, i: int, j: int, k: int) -> list: ...


class SceneFamily:
    """Cross-sections of a scene, seen as points moving with the slope."""

    def __init__(self, scene: Scene):
        self.scene = scene
        self.ids = scene.ids

    def orientation(self, t, i, j, k) -> int:
        return orientation(self.scene, t, i, j, k)

    def events(self, i, j, k) -> list:
        return [r for r, _ in collinearity_events(self.scene, i, j, k)]


@dataclass
class Stats:
    oracle_calls: int = 0
    calls_per_round: list = field(default_factory=list)
    rounds: int = 0
    prescan_calls: int = 0


class _Found(Exception):
    def __init__(self, witness: Witness):
        self.witness = witness


def _witness_solution(scene: Scene, w: Witness) -> Solution:
    ids = [w.ids["R"], w.ids["G"], w.ids["B"]]
    slope = w.slope
    if isinstance(slope, AlgebraicReal) and slope.is_rational:
        slope = slope.rational
    counts = side_counts(scene, slope, ids[0], ids[1])
    return Solution(slope, COLLINEAR, ids, (ids[0], ids[1]), counts, scene.rotation)


def _trace_or_raise(res) -> int:
    if isinstance(res, Witness):
        raise _Found(res)
    return res.value


# parallel prescan


def scan_parallel(scene: Scene, stats: Optional[Stats] = None) -> Union[Solution, Interval]:
    stats = stats or Stats()
    par = scene.parallel_slopes()
    order = sorted(par, key=lambda i: par[i])
    ms = [par[i] for i in order]
    n = len(ms)
    samples = [NEG_INF] + [(ms[j] + ms[j + 1]) / 2 for j in range(n - 1)] + [POS_INF]
    neg, pos = endpoint_traces(scene)
    taus: dict[int, int] = {0: neg.value, n: pos.value}

    def tau(j: int) -> int:
        if j not in taus:
            stats.prescan_calls += 1
            res = sidedness(scene, samples[j])
            if isinstance(res, Witness):
                raise _Found(res)
            taus[j] = res.value
        return taus[j]

    try:
        lo, hi = 0, n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if tau(mid) == taus[lo]:
                lo = mid
            else:
                hi = mid
        line = order[lo]  # the only parallel slope between samples lo and hi
        m = ms[lo]
        sol = check_parallel_plane(scene, line)
        if sol is not None:
            return sol
        stats.prescan_calls += 2
        before = _trace_or_raise(sidedness(scene, Perturbed(m, -1)))
        after = _trace_or_raise(sidedness(scene, Perturbed(m, 1)))
    except _Found as f:
        return _witness_solution(scene, f.witness)
    if before != after:
        raise InternalInconsistency(f"trace jumps at parallel slope {m} with no bisector there")
    if before != taus[lo]:
        return Interval(samples[lo], m, taus[lo], before)
    if after == taus[hi]:
        raise InternalInconsistency("no trace flip found in the prescan gap")
    return Interval(m, samples[hi], after, taus[hi])


# sorting network


def batcher_layers(n: int) -> list[list[tuple[int, int]]]:
    """Odd-even mergesort comparators for n items, grouped into parallel layers."""
    layers = []
    N = 1
    while N < n:
        N *= 2
    p = 1
    while p < N:
        k = p
        while k >= 1:
            layer = []
            for j in range(k % p, N - k, 2 * k):
                for i in range(k):
                    a, b = i + j, i + j + k
                    if a // (2 * p) == b // (2 * p) and b < n:
                        layer.append((a, b))
            if layer:
                layers.append(layer)
            k //= 2
        p *= 2
    return layers


def _median(items: list, cmp) -> object:
    """Lower median by linear-time selection (median of medians)."""
    return _select(items, (len(items) - 1) // 2, cmp)


def _select(items: list, k: int, cmp):
    while True:
        if len(items) <= 10:
            return sorted(items, key=cmp_to_key(cmp))[k]
        groups = [sorted(items[i:i + 5], key=cmp_to_key(cmp)) for i in range(0, len(items), 5)]
        meds = [g[(len(g) - 1) // 2] for g in groups]
        pivot = _select(meds, (len(meds) - 1) // 2, cmp)
        lows, highs, eq = [], [], 0
        for x in items:
            c = cmp(x, pivot)
            if c < 0:
                lows.append(x)
            elif c > 0:
                highs.append(x)
            else:
                eq += 1
        if k < len(lows):
            items = lows
        elif k < len(lows) + eq:
            return pivot
        else:
            k -= len(lows) + eq
            items = highs


class _Search:
    def __init__(self, family: KineticFamily, oracle, interval: Interval, stats: Stats):
        self.family = family
        self.oracle = oracle
        self.iv = interval
        self.stats = stats

    def _narrow(self, triples: list[tuple]) -> None:
        """Query median events until none of ``triples`` has an event inside the interval."""
        calls = 0
        seen, pending = set(), []
        for t in triples:
            for e in self.family.events(*t):
                key = e.key()
                if key not in seen:
                    seen.add(key)
                    pending.append(e)
        pending = [e for e in pending if self.iv.contains(e)]
        while pending:
            t = _median(pending, compare)
            calls += 1
            res = self.oracle(t)
            if isinstance(res, Witness):
                self.stats.calls_per_round.append(calls)
                self.stats.oracle_calls += calls
                raise _Found(res)
            if res.value == self.iv.tau_lo:
                self.iv.lo = t
            else:
                self.iv.hi = t
            if self.iv.tau_lo == self.iv.tau_hi:
                raise InternalInconsistency("interval lost its trace flip")
            pending = [e for e in pending if self.iv.contains(e)]
        self.stats.calls_per_round.append(calls)
        self.stats.oracle_calls += calls

    def run(self) -> Witness:
        fam = self.family
        ids = sorted(fam.ids)
        refs = {p: next(q for q in ids if q != p) for p in ids}
        seqs = {p: [a for a in ids if a != p and a != refs[p]] for p in ids}
        try:
            # points passing through the reference direction change the linearization
            self._narrow([(p, refs[p], a) for p in ids for a in seqs[p]])
            self.stats.rounds += 1
            for layer in batcher_layers(len(ids) - 2):
                comps = [(p, a, b) for p in ids for a, b in layer]
                triples = []
                for p, a, b in comps:
                    x, y, q = seqs[p][a], seqs[p][b], refs[p]
                    triples += [(p, q, x), (p, q, y), (p, x, y)]
                self._narrow(triples)
                self.stats.rounds += 1
                t = self.iv.sample()
                for p, a, b in comps:
                    s = seqs[p]
                    if not self._before(t, p, refs[p], s[a], s[b]):
                        s[a], s[b] = s[b], s[a]
        except _Found as f:
            return f.witness
        raise InternalInconsistency(
            "sorting finished without a bisector although the interval flips its trace"
        )

    def _before(self, t, p, q, a, b) -> bool:
        o = self.family.orientation
        return o(t, p, q, a) * o(t, p, q, b) * o(t, p, a, b) > 0


def parametric_search(family: KineticFamily, oracle, interval: Interval,
                      stats: Optional[Stats] = None) -> Witness:
    """Locate a slope inside ``interval`` where ``oracle`` reports a bisector."""
    return _Search(family, oracle, interval, stats or Stats()).run()


def solve(scene: Scene, seed: int = 0) -> Solution:
    scene = validate_and_normalize(scene, seed)
    stats = Stats()
    res = scan_parallel(scene, stats)
    if isinstance(res, Interval):
        w = parametric_search(SceneFamily(scene), lambda t: sidedness(scene, t), res, stats)
        res = _witness_solution(scene, w)
    res.counts = verify_solution(scene, res)
    res.stats = {
        "prescan_calls": stats.prescan_calls,
        "oracle_calls": stats.oracle_calls,
        "rounds": stats.rounds,
        "calls_per_round": stats.calls_per_round,
    }
    log.debug("solved %r: %s", scene, res.stats)
    return res
