import random
from fractions import Fraction
from functools import cmp_to_key

import pytest

from conftest import scene
from rotcut.errors import DegenerateInput
from rotcut.exact import NEG_INF, POS_INF, compare, rational_between
from rotcut.geometry import (
    Line3,
    Scene,
    check_scene,
    collinearity_events,
    cross_section,
    demo_scene,
    generate_scene,
    orientation,
    parallel_slope,
    validate_and_normalize,
)


def _det(pts):
    (a, b), (c, d), (e, f) = pts
    v = (c - a) * (f - b) - (d - b) * (e - a)
    return (v > 0) - (v < 0)


def _float_point(line, m):
    (xp, yp, zp), (vx, vy, vz) = [[float(c) for c in v] for v in (line.anchor, line.direction)]
    s = (m * xp - yp) / (vy - m * vx)
    return xp + s * vx, zp + s * vz


def test_generate_examples():
    s = generate_scene(1, 1, 1, 10, 42)
    assert len(s) == 3 and check_scene(s) is None
    s = generate_scene(3, 3, 3, 50, 7)
    assert s.counts() == {"R": 3, "G": 3, "B": 3} and check_scene(s) is None
    with pytest.raises(ValueError):
        generate_scene(2, 3, 3, 10, 0)


def test_generation_is_deterministic():
    assert generate_scene(3, 1, 1, 10, 5).dumps() == generate_scene(3, 1, 1, 10, 5).dumps()
    assert generate_scene(3, 1, 1, 10, 5).dumps() != generate_scene(3, 1, 1, 10, 6).dumps()


def test_too_small_bound_gives_up():
    with pytest.raises(ValueError):
        generate_scene(5, 5, 5, 1, 0, max_rejections=200)


def test_normalize_identity_on_valid_scene():
    s = generate_scene(1, 1, 1, 10, 42)
    assert validate_and_normalize(s) is s
    assert s.rotation == (1, 0)


def test_normalize_rotates_away_zero_vx():
    raw = Scene([
        Line3(0, (1, 0, 0), (0, 1, 1), "R"),
        Line3(1, (0, 1, 1), (1, -1, 0), "G"),
        Line3(2, (-1, 0, 2), (2, 1, 1), "B"),
    ])
    out = validate_and_normalize(raw, seed=3)
    assert all(l.direction[0] != 0 for l in out.lines)
    c, s = out.rotation
    assert c * c + s * s == 1 and check_scene(out) is None


def test_parallel_lines_rejected():
    raw = Scene([
        Line3(0, (1, 0, 0), (1, 2, 3), "R"),
        Line3(1, (0, 1, 1), (2, 4, 6), "G"),
        Line3(2, (-1, 0, 2), (2, 1, 1), "B"),
    ])
    with pytest.raises(DegenerateInput, match="parallel"):
        validate_and_normalize(raw)


def test_line_through_z_axis_rejected():
    raw = Scene([
        Line3(0, (0, 0, 5), (1, 2, 3), "R"),
        Line3(1, (0, 1, 1), (1, -1, 0), "G"),
        Line3(2, (-1, 0, 2), (2, 1, 1), "B"),
    ])
    with pytest.raises(DegenerateInput):
        validate_and_normalize(raw)


def test_even_class_rejected():
    raw = Scene([
        Line3(0, (1, 0, 0), (1, 1, 1), "R"),
        Line3(1, (0, 1, 1), (1, -1, 0), "R"),
    ])
    with pytest.raises(DegenerateInput):
        validate_and_normalize(raw)


@pytest.mark.parametrize("d, m", [((1, 2, 1), 2), ((2, -1, 5), Fraction(-1, 2)), ((1, 0, 3), 0)])
def test_parallel_slope_examples(d, m):
    assert parallel_slope(Line3(0, (1, 1, 1), d, "R")) == m


def test_cross_section_examples():
    raw = Scene([
        Line3(0, (1, 0, 0), (0, 1, 1), "R"),
        Line3(1, (0, 1, 1), (1, -1, 0), "G"),
        Line3(2, (-1, 0, 2), (2, 1, 1), "B"),
    ])
    cs = cross_section(raw, Fraction(0))
    assert [(p.u, p.z) for p in cs.points] == [(1, 0), (1, 1), (-1, 2)]
    assert orientation(raw, Fraction(0), 0, 1, 2) == 1
    assert [(p.u, p.z) for p in cross_section(demo_scene(), Fraction(0)).points] == [
        (1, 0), (1, 1), (-1, 2)]


def test_parallel_line_is_omitted():
    s = scene(3, 3, 3, 1)
    l = s.lines[4]
    cs = cross_section(s, parallel_slope(l))
    assert cs.omitted == l.id and len(cs.points) == len(s) - 1
    with pytest.raises(ValueError):
        orientation(s, parallel_slope(l), l.id, s.lines[0].id, s.lines[1].id)


def test_orientation_needs_distinct_points():
    with pytest.raises(ValueError):
        orientation(demo_scene(), Fraction(0), 0, 0, 1)


def test_mirror_constructed_event_at_zero():
    s = Scene([
        Line3(0, (1, 0, 0), (1, 2, 3), "R"),
        Line3(1, (2, 0, 0), (2, 1, -1), "G"),
        Line3(2, (3, 0, 0), (1, 3, 2), "B"),
    ])
    events = [r for r, _ in collinearity_events(s, 0, 1, 2)]
    assert any(compare(r, Fraction(0)) == 0 for r in events)
    assert orientation(s, Fraction(0), 0, 1, 2) == 0


def test_demo_triple_never_collinear():
    assert collinearity_events(demo_scene(), 0, 1, 2) == []


def test_orientation_zero_at_own_events():
    s = scene(3, 3, 3, 2)
    ids = s.ids
    seen = 0
    for i, j, k in [(ids[0], ids[1], ids[2]), (ids[3], ids[5], ids[7]), (ids[1], ids[4], ids[8])]:
        for r, _ in collinearity_events(s, i, j, k):
            assert orientation(s, r, i, j, k) == 0
            seen += 1
    assert seen > 0


def test_events_match_numeric_scan():
    checked = 0
    for s in [demo_scene()] + [scene(1, 1, 1, seed) for seed in (0, 1, 3)]:
        a, b, c = s.lines
        par = sorted(float(parallel_slope(l)) for l in s.lines)
        events = [float(r.enclosure(60)[0]) for r, _ in collinearity_events(s, 0, 1, 2)]
        lo, hi = -8.0, 8.0
        # sign changes of the float determinant, away from the parallel slopes
        step = 1e-4
        n = int((hi - lo) / step)
        prev = None
        changes = []
        for t in range(n + 1):
            m = lo + t * step
            if any(abs(m - p) < 2 * step for p in par):
                prev = None
                continue
            cur = _det([_float_point(l, m) for l in (a, b, c)])
            if prev is not None and cur != prev:
                changes.append(m - step / 2)
            prev = cur
        inside = [e for e in events if lo < e < hi and all(abs(e - p) > 3 * step for p in par)]
        assert len(inside) == len(changes)
        for e, x in zip(inside, changes):
            assert abs(e - x) <= step
        checked += len(inside)
    assert checked > 0


def test_orientation_matches_direct_determinant():
    rng = random.Random(6)
    for seed in range(5):
        s = scene(3, 3, 3, seed)
        for _ in range(100):
            m = Fraction(rng.randint(-400, 400), rng.randint(1, 60))
            cs = cross_section(s, m)
            pts = rng.sample(cs.points, 3)
            want = _det([(p.u, p.z) for p in pts])
            assert orientation(s, m, *(p.id for p in pts)) == want


def test_orientation_constant_between_events():
    s = scene(3, 3, 3, 4)
    ids = s.ids
    rng = random.Random(8)
    for _ in range(40):
        t = rng.sample(ids, 3)
        events = [r for r, _ in collinearity_events(s, *t)]
        assert len(events) <= 6
        stops = sorted(events + [parallel_slope(s[i]) for i in t], key=cmp_to_key(compare))
        bounds = [NEG_INF] + stops + [POS_INF]
        for lo, hi in zip(bounds, bounds[1:]):
            if compare(lo, hi) == 0:
                continue
            x = rational_between(lo, hi)
            y = rational_between(x, hi)
            assert orientation(s, x, *t) == orientation(s, y, *t) != 0


def test_endpoint_charts_are_mirror_images():
    s = scene(3, 3, 3, 9)
    ids = s.ids
    events = []
    for t in [(ids[i], ids[j], ids[k]) for i in range(9) for j in range(i) for k in range(j)]:
        events += [float(r.enclosure(30)[1]) for r, _ in collinearity_events(s, *t)]
    big = max([abs(e) for e in events] + [abs(float(parallel_slope(l))) for l in s.lines])
    M = Fraction(int(big) + 10)
    for i in range(9):
        for j in range(i):
            for k in range(j):
                t = (ids[i], ids[j], ids[k])
                assert orientation(s, M, *t) == -orientation(s, -M, *t)
                assert orientation(s, POS_INF, *t) == orientation(s, M, *t)
                assert orientation(s, NEG_INF, *t) == orientation(s, -M, *t)


def test_scene_json_round_trip():
    s = scene(3, 1, 3, 11)
    back = Scene.loads(s.dumps())
    assert back.dumps() == s.dumps()
    obj = s.to_json()
    assert set(obj["lines"][0]) == {"id", "anchor", "dir", "color"}
    assert all("/" in v for v in obj["lines"][0]["anchor"])
