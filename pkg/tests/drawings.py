"""Planarize straight-line drawings into the map format (test support only).

Coordinates are exact rationals, so crossings and rotations are computed
without rounding.  The drawing must be in general position: no vertex on
the interior of an edge, no collinear overlaps, no three edges through one
crossing point.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction as F

from fourcross.mapcore import Dart, NodeKind, PlanarMap


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _half(dx, dy):
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _ccw_key(vectors):
    def cmp(i, j):
        (ax, ay), (bx, by) = vectors[i], vectors[j]
        ha, hb = _half(ax, ay), _half(bx, by)
        if ha != hb:
            return ha - hb
        c = _cross(ax, ay, bx, by)
        return -1 if c > 0 else (1 if c < 0 else 0)
    return functools.cmp_to_key(cmp)


class GeneralPositionError(ValueError):
    pass


def planarize(points: dict, edges: list[tuple[str, str]]) -> PlanarMap:
    pts = {k: (F(x), F(y)) for k, (x, y) in points.items()}
    for a, b in edges:
        if a == b:
            raise ValueError("loop")
    # crossings
    on_edge: list[list[tuple[F, str]]] = [[] for _ in edges]
    xpos: dict[str, tuple[F, F]] = {}
    for i, (a, b) in enumerate(edges):
        (px, py), (qx, qy) = pts[a], pts[b]
        rx, ry = qx - px, qy - py
        for v, (vx, vy) in pts.items():
            if v in (a, b):
                continue
            if _cross(rx, ry, vx - px, vy - py) == 0:
                t = ((vx - px) * rx + (vy - py) * ry) / (rx * rx + ry * ry)
                if 0 < t < 1:
                    raise GeneralPositionError(f"vertex {v} on edge {a}{b}")
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if {a, b} & {c, d}:
                continue
            (sx, sy), (ux, uy) = pts[c], pts[d]
            tx, ty = ux - sx, uy - sy
            den = _cross(rx, ry, tx, ty)
            if den == 0:
                if _cross(rx, ry, sx - px, sy - py) == 0:
                    raise GeneralPositionError("collinear edges")
                continue
            t = _cross(sx - px, sy - py, tx, ty) / den
            u = _cross(sx - px, sy - py, rx, ry) / den
            if 0 < t < 1 and 0 < u < 1:
                name = f"x{len(xpos)}"
                xpos[name] = (px + t * rx, py + t * ry)
                on_edge[i].append((t, name))
                on_edge[j].append((u, name))
            elif 0 <= t <= 1 and 0 <= u <= 1:
                raise GeneralPositionError("edges touch")
    seen_pts = {}
    for name, p in xpos.items():
        if p in seen_pts:
            raise GeneralPositionError("three edges through one point")
        seen_pts[p] = name
    allpos = dict(pts)
    allpos.update(xpos)

    # directed neighbour lists: (node) -> list of (key, other node)
    nbrs: dict[str, list[tuple[tuple[int, int], str]]] = {v: [] for v in allpos}
    chains = []
    for i, (a, b) in enumerate(edges):
        chain = [a] + [name for _, name in sorted(on_edge[i])] + [b]
        chains.append(chain)
        for k in range(len(chain) - 1):
            u, w = chain[k], chain[k + 1]
            nbrs[u].append(((i, k), w))
            nbrs[w].append(((i, k), u))
    slot = {}
    for v, lst in nbrs.items():
        vx, vy = allpos[v]
        vecs = [(allpos[w][0] - vx, allpos[w][1] - vy) for _, w in lst]
        order = sorted(range(len(lst)), key=_ccw_key(vecs))
        for s, idx in enumerate(order):
            slot[(v, lst[idx][0])] = s
    segs = []
    for i, chain in enumerate(chains):
        for k in range(len(chain) - 1):
            u, w = chain[k], chain[k + 1]
            segs.append((Dart(u, slot[(u, (i, k))]), Dart(w, slot[(w, (i, k))])))
    kinds = {v: NodeKind.ORIGINAL for v in pts if nbrs[v]}
    kinds.update({x: NodeKind.CROSSING for x in xpos})
    return PlanarMap.from_segments(kinds, segs)


def random_drawing(rng: random.Random, n_points: int, n_edges: int, grid: int = 1000):
    """Random straight-line drawing on integer coordinates; may raise GeneralPositionError."""
    pts = {}
    while len(pts) < n_points:
        pts[f"v{len(pts)}"] = (rng.randrange(grid), rng.randrange(grid))
    names = list(pts)
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    rng.shuffle(pairs)
    return planarize(pts, pairs[:n_edges])
