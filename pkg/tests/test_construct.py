import random
from collections import Counter
from fractions import Fraction as F
from itertools import combinations

import pytest

from fourcross.construct import (
    DEFAULT_HEXAGON,
    CylinderParams,
    HexTemplate,
    build_cylinder,
    circle_point,
    cylinder,
    face_names,
    predicted_edge_count,
)
from fourcross.construct import _tiling
from fourcross.discharge import run_discharging
from fourcross.mapcore import parse_map, recover_edges, validate


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_too_few_layers(bad):
    with pytest.raises(ValueError, match="at least 2 layers"):
        CylinderParams(bad)
    with pytest.raises(ValueError):
        cylinder(bad)
    with pytest.raises(ValueError):
        predicted_edge_count(bad)


@pytest.mark.parametrize("layers, m", [(2, 54), (10, 342), (3, 90)])
def test_predicted_edge_count(layers, m):
    assert predicted_edge_count(layers) == m


def test_l2_counts():
    pmap = build_cylinder(2)
    report = validate(pmap)
    assert (report.n, report.m) == (12, 54)
    assert report.m == 6 * 12 - 18
    assert Counter(pmap.degree[v] for v in pmap.originals) == {10: 6, 8: 6}


@pytest.mark.parametrize("layers", [3, 4, 6])
def test_degree_profile(layers):
    pmap = build_cylinder(layers)
    profile = Counter(pmap.degree[v] for v in pmap.originals)
    assert profile == {12: 6 * layers - 12, 10: 6, 8: 6}
    assert len(recover_edges(pmap)) == predicted_edge_count(layers)


def test_document_round_trip():
    text = cylinder(3)
    assert parse_map(text) == build_cylinder(3)
    assert cylinder(3) == text


def test_tiles_follow_convex_crossing_pattern():
    """Two diagonals of a tile cross exactly when their corners interleave."""
    layers = 3
    pmap = build_cylinder(layers)
    tiles = _tiling(layers)
    by_crossing: dict[str, list] = {}
    for e in recover_edges(pmap):
        for x in e.crossing_nodes:
            by_crossing.setdefault(x, []).append(e)
    for name, cyc in tiles.items():
        pos = {v: i for i, v in enumerate(cyc)}
        prefix = f"x{name}_"
        tile_edges = {
            tuple(sorted(pos[v] for v in e.endpoints))
            for x, es in by_crossing.items() if x.startswith(prefix) for e in es
        }
        drawn = [d for d in combinations(range(6), 2) if (d[1] - d[0]) % 6 not in (1, 5)]
        if name in ("T", "B"):
            assert len(tile_edges) <= 6
        else:
            assert sorted(tile_edges) == drawn
        crossed = Counter()
        for x, es in by_crossing.items():
            if not x.startswith(prefix):
                continue
            (i, j), (k, l) = (tuple(sorted(pos[v] for v in e.endpoints)) for e in es)
            assert (i < k < j) != (i < l < j)
            crossed[frozenset([(i, j), (k, l)])] += 1
        assert all(c == 1 for c in crossed.values())
        expected = sum(1 for (i, j), (k, l) in combinations(sorted(tile_edges), 2)
                       if (i < k < j) != (i < l < j) and len({i, j, k, l}) == 4)
        assert len(crossed) == expected
        if name not in ("T", "B"):
            assert expected == 15


def test_caps_omit_three_hexagon_diagonals():
    pmap = build_cylinder(2)
    edges = Counter(frozenset(e.endpoints) for e in recover_edges(pmap))
    assert max(edges.values()) == 1
    # d0_i lies on T, C0_i and C0_{i-1}; a tile already joins each pair, so
    # the cap must not draw it through its own interior
    cap_edges = {frozenset(e.endpoints) for e in recover_edges(pmap)
                 if any(x.startswith("xT_") for x in e.crossing_nodes)}
    for a, b in combinations(["d0_0", "d0_1", "d0_2"], 2):
        assert edges[frozenset((a, b))] == 1
        assert frozenset((a, b)) not in cap_edges
    for a, b in combinations(["u0_0", "u0_1", "u0_2"], 2):
        assert frozenset((a, b)) in cap_edges


@pytest.mark.parametrize("layers", range(2, 6))
def test_cylinder_valid_and_certified(layers):
    pmap = build_cylinder(layers)
    report = validate(pmap)
    assert report.assumption_flags == []
    assert report.max_crossings_per_edge == 4
    assert report.min_degree == 8
    r = run_discharging(pmap, strict=True)
    assert r.certificate.holds
    assert r.certificate.m == 36 * layers - 18 <= 6 * (6 * layers) - 12


def test_circle_point_is_rational_on_circle():
    for t in (F(0), F(1, 3), F(-7, 2)):
        x, y = circle_point(t)
        assert x * x + y * y == 1


def test_template_rejects_nonconvex():
    pts = list(DEFAULT_HEXAGON)
    pts[2], pts[3] = pts[3], pts[2]
    with pytest.raises(ValueError, match="convex"):
        HexTemplate.from_points(pts)


def test_template_rejects_concurrent_diagonals():
    # centrally symmetric, so the three long diagonals meet at the origin
    pts = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
    with pytest.raises(ValueError, match="concurrent"):
        HexTemplate.from_points(pts)


def test_template_wrong_size():
    with pytest.raises(ValueError, match="six"):
        HexTemplate.from_points(DEFAULT_HEXAGON[:5])


def test_unknown_face_rejected():
    with pytest.raises(ValueError, match="no face named"):
        build_cylinder(2, skip=[("Z9", (0, 2))])


def test_random_templates_still_certify():
    rng = random.Random(3)
    names = face_names(3)
    for _ in range(5):
        per_face = {}
        for name in names:
            ts = sorted(F(rng.randint(-400, 400), rng.randint(1, 40)) for _ in range(6))
            if len(set(ts)) < 6:
                continue
            try:
                HexTemplate.from_points([circle_point(t) for t in ts])
            except ValueError:
                continue
            per_face[name] = [circle_point(t) for t in ts]
        r = run_discharging(build_cylinder(3, face_hexagons=per_face), strict=True)
        assert r.certificate.holds
