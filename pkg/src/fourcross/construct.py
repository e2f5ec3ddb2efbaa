"""Near-extremal drawings for the 4-crossings edge bound: hexagons on a cylinder.

The base tiling has ``l`` boundary 6-cycles ``u0 d0 u1 d1 u2 d2`` stacked
around a vertical cylinder; a vertical edge joins ``d{k}_{i}`` to
``u{k+1}_{i}``, so between consecutive cycles sit three hexagonal cells.
The top cap is boundary 0 and the bottom cap is boundary ``l-1``.

Inside every cell all nine diagonals are drawn as in a convex hexagon.  In
the two caps the diagonals joining two vertices that lie on three hexagons
are left out.  Crossings inside a face come from a fixed convex template
evaluated in exact arithmetic; faces never share crossings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .mapcore import Dart, NodeKind, PlanarMap, serialize_map

Point = tuple[Fraction, Fraction]


def circle_point(t: Fraction) -> Point:
    """Rational point on the unit circle (angle 2*atan(t))."""
    t = Fraction(t)
    return (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)


DEFAULT_HEXAGON: tuple[Point, ...] = tuple(
    circle_point(Fraction(t)) for t in ("-23/2", "-10/7", "-7/15", "1/11", "7/10", "15/7")
)


@dataclass(frozen=True)
class CylinderParams:
    layers: int

    def __post_init__(self):
        if self.layers < 2:
            raise ValueError(f"cylinder needs at least 2 layers, got {self.layers}")


def predicted_edge_count(layers: int) -> int:
    CylinderParams(layers)
    return 36 * layers - 18


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _interleave(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (i, j), (k, l) = a, b
    return (i < k < j) != (i < l < j) and len({i, j, k, l}) == 4


@dataclass(frozen=True)
class HexTemplate:
    """Diagonal arrangement of a convex hexagon, combinatorially.

    ``order[(i, j)]`` lists the diagonals crossing diagonal ``(i, j)`` in
    order from corner i to corner j.  ``positive[(a, b)]`` is True when
    diagonal b turns counterclockwise from diagonal a at their crossing
    (both oriented from the lower to the higher corner).
    """

    order: dict[tuple[int, int], tuple[tuple[int, int], ...]]
    positive: dict[tuple[tuple[int, int], tuple[int, int]], bool]

    @classmethod
    def from_points(cls, pts: Sequence[Point]) -> "HexTemplate":
        pts = [(Fraction(x), Fraction(y)) for x, y in pts]
        if len(pts) != 6:
            raise ValueError("template needs six corners")
        for i in range(6):
            if _cross(pts[i], pts[(i + 1) % 6], pts[(i + 2) % 6]) <= 0:
                raise ValueError("template corners must be strictly convex and counterclockwise")
        diags = [(i, j) for i, j in combinations(range(6), 2) if (j - i) % 6 not in (1, 5)]
        where: dict[tuple[int, int], list[tuple[Fraction, tuple[int, int]]]] = {d: [] for d in diags}
        points_seen: dict[Point, tuple] = {}
        positive = {}
        for a, b in combinations(diags, 2):
            if not _interleave(a, b):
                continue
            p, q = pts[a[0]], pts[a[1]]
            r, s = pts[b[0]], pts[b[1]]
            rx, ry = q[0] - p[0], q[1] - p[1]
            sx, sy = s[0] - r[0], s[1] - r[1]
            den = rx * sy - ry * sx
            t = ((r[0] - p[0]) * sy - (r[1] - p[1]) * sx) / den
            u = ((r[0] - p[0]) * ry - (r[1] - p[1]) * rx) / den
            x = (p[0] + t * rx, p[1] + t * ry)
            if x in points_seen:
                raise ValueError(f"diagonals {a}, {b} and {points_seen[x]} are concurrent")
            points_seen[x] = (a, b)
            where[a].append((t, b))
            where[b].append((u, a))
            positive[(a, b)] = den > 0
            positive[(b, a)] = den < 0
        order = {d: tuple(e for _, e in sorted(lst)) for d, lst in where.items()}
        return cls(order, positive)


def _cap_skip(two_hex_positions: Iterable[int]) -> set[tuple[int, int]]:
    """Diagonals of a cap joining two corners that lie on three hexagons."""
    three = sorted(set(range(6)) - set(two_hex_positions))
    return {(i, j) for i, j in combinations(three, 2)}


def _tiling(layers: int) -> dict[str, tuple[str, ...]]:
    """Counterclockwise corner cycles of all hexagonal faces."""
    last = layers - 1
    u = lambda k, i: f"u{k}_{i % 3}"  # noqa: E731
    d = lambda k, i: f"d{k}_{i % 3}"  # noqa: E731
    faces = {"T": (u(0, 0), d(0, 0), u(0, 1), d(0, 1), u(0, 2), d(0, 2)),
             "B": (d(last, 2), u(last, 2), d(last, 1), u(last, 1), d(last, 0), u(last, 0))}
    for k in range(last):
        for i in range(3):
            faces[f"C{k}_{i}"] = (u(k + 1, i), d(k + 1, i), u(k + 1, i + 1),
                                  d(k, i + 1), u(k, i + 1), d(k, i))
    return faces


def face_names(layers: int) -> list[str]:
    return list(_tiling(layers))


def build_cylinder(layers: int, hexagon: Sequence[Point] | None = None,
                   skip: Iterable[tuple[str, tuple[int, int]]] = (),
                   face_hexagons: Mapping[str, Sequence[Point]] | None = None) -> PlanarMap:
    """The cylinder drawing as a plane map.

    ``hexagon`` replaces the convex template used inside every face and
    ``face_hexagons`` overrides it per face.  ``skip`` lists extra
    diagonals ``(face, (i, j))`` to leave out, with corners numbered by
    position in the face's counterclockwise cycle.  These exist so tests
    can vary the drawing.
    """
    CylinderParams(layers)
    default = HexTemplate.from_points(hexagon or DEFAULT_HEXAGON)
    faces = _tiling(layers)
    templates = {name: default for name in faces}
    for name, pts in (face_hexagons or {}).items():
        if name not in faces:
            raise ValueError(f"no face named {name!r}")
        templates[name] = HexTemplate.from_points(pts)
    omitted = {name: set() for name in faces}
    omitted["T"] |= _cap_skip(i for i, v in enumerate(faces["T"]) if v.startswith("u"))
    omitted["B"] |= _cap_skip(i for i, v in enumerate(faces["B"]) if v.startswith("d"))
    for name, diag in skip:
        if name not in faces:
            raise ValueError(f"no face named {name!r}")
        omitted[name].add(tuple(sorted(diag)))

    # rotation of the tiling itself: for a ccw face cycle a -> v -> b, the
    # face lies counterclockwise from vb to va, so succ_v(b) = a
    succ: dict[str, dict[str, tuple[str, str, int]]] = {}
    for name, cyc in faces.items():
        for pos, v in enumerate(cyc):
            a, b = cyc[pos - 1], cyc[(pos + 1) % 6]
            succ.setdefault(v, {})[b] = (a, name, pos)

    kinds: dict[str, NodeKind] = {v: NodeKind.ORIGINAL for v in succ}
    rot: dict[str, list] = {}
    segments: list[tuple[tuple[str, object], tuple[str, object]]] = []

    # each key names one segment end; keys are matched into segments below
    def side_key(v, w):
        return ("side",) + tuple(sorted((v, w)))

    for v, table in succ.items():
        start = min(table)
        b = start
        order = []
        while True:
            a, name, pos = table[b]
            order.append(side_key(v, b))
            for step in range(2, 5):
                other = (pos + step) % 6
                diag = tuple(sorted((pos, other)))
                if diag not in omitted[name]:
                    order.append(("diag", name, diag, pos))
            b = a
            if b == start:
                break
        if len(order) != len(set(order)):
            raise AssertionError(f"rotation at {v} repeats an edge")
        rot[v] = order

    for name, cyc in faces.items():
        template = templates[name]
        for diag, crossing_list in template.order.items():
            if diag in omitted[name]:
                continue
            chain = [("end", diag[0])]
            for other in crossing_list:
                if other not in omitted[name]:
                    chain.append(("x", other))
            chain.append(("end", diag[1]))
            for k, (kind, val) in enumerate(chain):
                if kind != "x":
                    continue
                x = _crossing_name(name, diag, val)
                if x not in rot:
                    kinds[x] = NodeKind.CROSSING
                    a, b = (diag, val) if diag < val else (val, diag)
                    # ccw around the crossing: +a, +b, -a, -b when b turns ccw from a
                    if template.positive[(a, b)]:
                        rot[x] = [("fwd", a), ("fwd", b), ("back", a), ("back", b)]
                    else:
                        rot[x] = [("fwd", a), ("back", b), ("back", a), ("fwd", b)]
            for k in range(len(chain) - 1):
                segments.append((_endpoint(name, cyc, diag, chain[k], +1),
                                 _endpoint(name, cyc, diag, chain[k + 1], -1)))

    for v, table in succ.items():
        for w in table:
            if v < w:
                segments.append(((v, side_key(v, w)), (w, side_key(v, w))))

    slot = {(v, key): s for v, keys in rot.items() for s, key in enumerate(keys)}
    darts = [(Dart(a, slot[(a, ka)]), Dart(b, slot[(b, kb)])) for (a, ka), (b, kb) in segments]
    return PlanarMap.from_segments(kinds, darts)


def _crossing_name(face: str, a: tuple[int, int], b: tuple[int, int]) -> str:
    a, b = sorted((a, b))
    return f"x{face}_{a[0]}{a[1]}_{b[0]}{b[1]}"


def _endpoint(face, cyc, diag, item, direction):
    """(node, rotation key) of one end of a diagonal piece.

    ``direction`` is +1 for the end where the piece leaves toward the higher
    corner of ``diag`` and -1 for the end it arrives at.
    """
    kind, val = item
    if kind == "end":
        return cyc[val], ("diag", face, diag, val)
    x = _crossing_name(face, diag, val)
    return x, ("fwd" if direction > 0 else "back", diag)


def cylinder(layers: int, hexagon: Sequence[Point] | None = None) -> str:
    """Map document of the cylinder drawing with ``layers`` boundary cycles."""
    return serialize_map(build_cylinder(layers, hexagon))
