"""Regenerate the map fixtures in tests/fixtures/ from straight-line drawings.

    python tests/make_fixtures.py

The committed .map files are the fixtures; test_fixtures_current.py checks
that they still match what this script produces.
"""

from __future__ import annotations

import sys
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from drawings import planarize  # noqa: E402
from fourcross.mapcore import serialize_map  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def tri():
    return {"A": (0, 0), "B": (4, 0), "C": (2, 3)}, [("A", "B"), ("B", "C"), ("C", "A")]


def x4():
    pts = {"A": (0, 0), "B": (4, 0), "C": (4, 4), "D": (0, 4)}
    return pts, [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A"), ("A", "C"), ("B", "D")]


def star():
    # hexagon with its three long diagonals, perturbed so they are not concurrent
    pts = {"v0": (4, 1), "v1": (2, 4), "v2": (-2, 4), "v3": (-4, 0), "v4": (-2, -4), "v5": (2, -4)}
    sides = [(f"v{i}", f"v{(i + 1) % 6}") for i in range(6)]
    return pts, sides + [("v0", "v3"), ("v1", "v4"), ("v2", "v5")]


def w1():
    # 1-triangle A-x-y cut off by the edge DE, flanked by two 2-triangles
    pts = {"A": (0, 4), "B": (-2, 0), "C": (2, 0), "D": (-4, 2), "E": (4, 2)}
    edges = [("A", "B"), ("A", "C"), ("B", "C"), ("D", "E"),
             ("D", "A"), ("A", "E"), ("D", "B"), ("C", "E")]
    return pts, edges


def w2():
    # as w1, with a 0-quadrilateral between two parallel cutting edges
    pts = {"A": (0, 6), "B": (-2, 0), "C": (2, 0),
           "D1": (-6, 4), "E1": (6, 4), "D2": (-6, 2), "E2": (6, 2)}
    edges = [("A", "B"), ("A", "C"), ("B", "C"), ("D1", "E1"), ("D2", "E2"),
             ("D1", "A"), ("A", "E1"), ("D1", "D2"), ("E1", "E2"), ("D2", "B"), ("E2", "C")]
    return pts, edges


def chain(k: int):
    # 1-triangle with k parallel cutting edges below its apex
    pts = {"A": (0, 4 * (k + 1)), "B": (-2, 0), "C": (2, 0)}
    edges = [("A", "B"), ("A", "C"), ("B", "C")]
    for i in range(k):
        y = 4 * (k - i)
        pts[f"D{i}"] = (-20 - i * i, y)
        pts[f"E{i}"] = (20 + i * i, y)
        edges.append((f"D{i}", f"E{i}"))
        if i:
            edges += [(f"D{i - 1}", f"D{i}"), (f"E{i - 1}", f"E{i}")]
    edges += [("A", "D0"), ("A", "E0"), (f"D{k - 1}", "B"), (f"E{k - 1}", "C")]
    return pts, edges


def fan():
    # vertex A whose four edges are all crossed by DE: three consecutive 1-triangles
    pts = {"A": (0, 6), "D": (-12, 4), "E": (12, 4),
           "B1": (-6, 0), "B2": (-2, -1), "B3": (2, -1), "B4": (6, 0)}
    edges = [("A", f"B{i}") for i in range(1, 5)] + [("D", "E")]
    edges += [("D", "A"), ("A", "E"), ("D", "B1"), ("B1", "B2"), ("B2", "B3"),
              ("B3", "B4"), ("B4", "E")]
    return pts, edges


def pentagram():
    # five lines in pentagram position; tips and inner corners are crossings,
    # so the centre is a 0-pentagon ringed by five 0-triangles
    tips = [(F(0), F(100)), (F(95), F(31)), (F(59), F(-81)), (F(-59), F(-81)), (F(-95), F(31))]
    pts, edges = {}, []
    for k in range(5):
        (px, py), (qx, qy) = tips[k], tips[(k + 2) % 5]
        dx, dy = qx - px, qy - py
        a, b = f"a{k}", f"b{k}"
        pts[a] = (px - dx * F(1, 2), py - dy * F(1, 2))
        pts[b] = (qx + dx * F(1, 2), qy + dy * F(1, 2))
        edges.append((a, b))
    ring = sorted(pts, key=lambda v: _angle(pts[v]))
    for i, v in enumerate(ring):
        edges.append((v, ring[(i + 1) % len(ring)]))
    return pts, edges


def _angle(p):
    import math
    return math.atan2(float(p[1]), float(p[0]))


def two_triangles():
    pts = {"A": (0, 0), "B": (2, 2), "C": (2, -2), "D": (-2, 2), "E": (-2, -2)}
    return pts, [("A", "B"), ("B", "C"), ("C", "A"), ("A", "D"), ("D", "E"), ("E", "A")]


def step1_chain(depth: int):
    # 0-triangle near the origin; ``depth`` edges parallel to its bottom side
    # stack 0-quadrilaterals below it
    pts = {"p0": (-40, -1), "q0": (40, 1), "p1": (-21, -38), "q1": (19, 36),
           "p2": (21, -38), "q2": (-19, 36)}
    edges = [("p0", "q0"), ("p1", "q1"), ("p2", "q2")]
    for i in range(1, depth + 1):
        pts[f"s{i}"] = (-60, -5 * i)
        pts[f"t{i}"] = (60, -5 * i + 2)
        edges.append((f"s{i}", f"t{i}"))
    return pts, edges


ALL = {
    "tri": tri,
    "x4": x4,
    "star": star,
    "w1": w1,
    "w2": w2,
    "chain4": lambda: chain(5),
    "fan": fan,
    "pentagram": pentagram,
    "two_triangles": two_triangles,
    "step1_chain": lambda: step1_chain(2),
    "step1_long": lambda: step1_chain(3),
}


def build(name: str):
    pts, edges = ALL[name]()
    return planarize(pts, edges)


def main():
    FIXTURES.mkdir(exist_ok=True)
    for name in ALL:
        pmap = build(name)
        (FIXTURES / f"{name}.map").write_text(serialize_map(pmap))
        print(name, len(pmap.originals), len(pmap.crossings), pmap.n_segments)


if __name__ == "__main__":
    main()
