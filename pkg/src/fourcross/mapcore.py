"""Combinatorial maps of planarized topological drawings.

A drawing is given already planarized: every crossing point is a node of
degree four, and the map records, for each node, the counterclockwise
rotation of its incident segments.  Darts are ``(node, slot)`` pairs and
segments pair them up.

Conventions used throughout the package:

* slots at a node are numbered counterclockwise;
* a face orbit is generated by ``next(d) = (partner(d).node, partner(d).slot + 1)``,
  so faces are traced clockwise and a dart belongs to the face lying to the
  right of the segment it leaves along;
* the two strands through a crossing pair slot 0 with 2 and slot 1 with 3.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import networkx as nx

MIN_DEGREE = 7

FLAG_MIN_DEGREE = "min-degree<7"
FLAG_NOT_2_CONNECTED = "not-2-connected"
FLAG_NOT_SIMPLE = "not-simple"
FLAG_CROSSINGS = "crossings>k_max"
FLAG_CLOSED_STRAND = "closed-strand"


class MapError(ValueError):
    """Structural problem with a map (bad document or non-spherical embedding)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NodeKind(enum.Enum):
    ORIGINAL = "original"
    CROSSING = "crossing"


class Dart(NamedTuple):
    node: str
    slot: int

    def __str__(self) -> str:
        return f"{self.node}.{self.slot}"


@dataclass(frozen=True)
class PlanarMap:
    """The plane map M(G) of a drawing.

    ``kinds`` maps node id to :class:`NodeKind`; ``segments`` holds each
    segment once as an ordered dart pair (smaller dart first), sorted.
    Construct through :meth:`from_segments` or :func:`parse_map`.
    """

    kinds: dict[str, NodeKind]
    segments: tuple[tuple[Dart, Dart], ...]
    degree: dict[str, int] = field(compare=False, repr=False)
    partner: dict[Dart, Dart] = field(compare=False, repr=False)

    @classmethod
    def from_segments(cls, kinds: dict[str, NodeKind],
                      segments: Iterable[tuple[Dart, Dart]]) -> "PlanarMap":
        partner: dict[Dart, Dart] = {}
        canon = []
        for a, b in segments:
            a, b = Dart(*a), Dart(*b)
            if a.node not in kinds:
                raise MapError(f"dangling dart {a}: node {a.node!r} not declared")
            if b.node not in kinds:
                raise MapError(f"dangling dart {b}: node {b.node!r} not declared")
            if a.node == b.node:
                raise MapError(f"segment {a} {b} is a loop")
            for d in (a, b):
                if d.slot < 0:
                    raise MapError(f"negative slot in {d}")
                if d in partner:
                    raise MapError(f"duplicate slot {d}")
            partner[a] = b
            partner[b] = a
            canon.append((a, b) if a < b else (b, a))

        used: dict[str, list[int]] = {v: [] for v in kinds}
        for d in partner:
            used[d.node].append(d.slot)
        degree = {}
        for v, slots in used.items():
            deg = len(slots)
            if slots and sorted(slots) != list(range(deg)):
                missing = sorted(set(range(max(slots) + 1)) - set(slots))
                raise MapError(f"dangling dart: node {v!r} has no segment on slot {missing[0]}")
            if kinds[v] is NodeKind.CROSSING and deg != 4:
                raise MapError(f"crossing degree must be 4 (node {v!r} has {deg})")
            if kinds[v] is NodeKind.ORIGINAL and deg < 1:
                raise MapError(f"original node {v!r} is isolated")
            degree[v] = deg
        return cls(dict(sorted(kinds.items())), tuple(sorted(canon)), degree, partner)

    # -- basic queries -------------------------------------------------
    @property
    def nodes(self) -> list[str]:
        return list(self.kinds)

    @cached_property
    def originals(self) -> list[str]:
        return [v for v, k in self.kinds.items() if k is NodeKind.ORIGINAL]

    @cached_property
    def crossings(self) -> list[str]:
        return [v for v, k in self.kinds.items() if k is NodeKind.CROSSING]

    def is_original(self, v: str) -> bool:
        return self.kinds[v] is NodeKind.ORIGINAL

    def is_crossing(self, v: str) -> bool:
        return self.kinds[v] is NodeKind.CROSSING

    @cached_property
    def darts(self) -> list[Dart]:
        return [Dart(v, i) for v in self.kinds for i in range(self.degree[v])]

    @cached_property
    def segment_of(self) -> dict[Dart, int]:
        """Segment id (index into ``segments``) of every dart."""
        out = {}
        for i, (a, b) in enumerate(self.segments):
            out[a] = i
            out[b] = i
        return out

    def rotate(self, d: Dart, step: int = 1) -> Dart:
        return Dart(d.node, (d.slot + step) % self.degree[d.node])

    def face_step(self, d: Dart) -> Dart:
        """Next dart on the face boundary containing ``d``."""
        return self.rotate(self.partner[d])

    def continue_strand(self, d: Dart) -> Dart:
        """Dart leaving a crossing opposite to the one by which a strand entered."""
        return Dart(d.node, (d.slot + 2) % 4)

    @property
    def n_nodes(self) -> int:
        return len(self.kinds)

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    def to_graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.kinds)
        g.add_edges_from((a.node, b.node) for a, b in self.segments)
        return g


# ---------------------------------------------------------------------------
# text format

_ID = r"[^\s.#]+"
_NODE_RE = re.compile(rf"node\s+({_ID})\s+(\S+)\s*$")
_SEG_RE = re.compile(rf"seg\s+({_ID})\.(\S+)\s+({_ID})\.(\S+)\s*$")


def parse_map(document: str) -> PlanarMap:
    """Parse the line-oriented map format.

    ::

        node <id> original|crossing
        seg <idA>.<slotA> <idB>.<slotB>

    ``#`` starts a comment.  Raises :class:`MapError` with line/column on
    any syntax or structural problem.
    """
    kinds: dict[str, NodeKind] = {}
    segs: list[tuple[Dart, Dart]] = []
    where: dict[Dart, tuple[int, int]] = {}
    for lineno, raw in enumerate(document.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        stripped = text.strip()
        if not stripped:
            continue
        col = len(text) - len(text.lstrip()) + 1
        keyword = stripped.split()[0]
        if keyword == "node":
            m = _NODE_RE.fullmatch(stripped)
            if not m:
                raise MapError("expected 'node <id> original|crossing'", lineno, col)
            nid, kind = m.groups()
            try:
                nk = NodeKind(kind)
            except ValueError:
                raise MapError(f"unknown node kind {kind!r}", lineno,
                               col + stripped.index(kind, len("node") + len(nid))) from None
            if nid in kinds:
                raise MapError(f"duplicate node {nid!r}", lineno, col)
            kinds[nid] = nk
        elif keyword == "seg":
            m = _SEG_RE.fullmatch(stripped)
            if not m:
                raise MapError("expected 'seg <id>.<slot> <id>.<slot>'", lineno, col)
            a_id, a_slot, b_id, b_slot = m.groups()
            darts = []
            for nid, slot in ((a_id, a_slot), (b_id, b_slot)):
                if not slot.isdigit():
                    raise MapError(f"slot must be a non-negative integer, got {slot!r}",
                                   lineno, col + stripped.index(f"{nid}.{slot}"))
                d = Dart(nid, int(slot))
                if d in where:
                    raise MapError(f"duplicate slot {d} (first used on line {where[d][0]})",
                                   lineno, col + stripped.index(f"{nid}.{slot}"))
                where[d] = (lineno, col)
                darts.append(d)
            segs.append((darts[0], darts[1]))
        else:
            raise MapError(f"unknown directive {keyword!r}", lineno, col)
    try:
        return PlanarMap.from_segments(kinds, segs)
    except MapError as exc:
        # point at a line when the problem is tied to one dart
        for d, (ln, c) in where.items():
            if str(d) in str(exc):
                raise MapError(str(exc), ln, c) from None
        raise


def serialize_map(pmap: PlanarMap) -> str:
    """Canonical text: nodes sorted by id, then segments sorted."""
    lines = [f"node {v} {k.value}" for v, k in pmap.kinds.items()]
    lines += [f"seg {a} {b}" for a, b in pmap.segments]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class FaceRecord:
    id: int
    boundary: tuple[Dart, ...]
    size: int
    originals: int
    corners: tuple[str, ...]

    @property
    def label(self) -> str:
        return face_label(self.size, self.originals)

    def is_kind(self, originals: int, size: int) -> bool:
        return self.originals == originals and self.size == size


_SHAPES = {3: "triangle", 4: "quadrilateral", 5: "pentagon", 6: "hexagon"}


def face_label(size: int, originals: int) -> str:
    return f"{originals}-{_SHAPES.get(size, f'{size}-gon')}"


def trace_faces(pmap: PlanarMap) -> list[FaceRecord]:
    """Faces as orbits of the face permutation, in order of smallest dart.

    Raises :class:`MapError` when Euler's relation fails, i.e. the map is
    disconnected or not a sphere embedding.
    """
    seen: set[Dart] = set()
    faces = []
    for start in pmap.darts:
        if start in seen:
            continue
        orbit = []
        d = start
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            d = pmap.face_step(d)
        corners = tuple(d.node for d in orbit)
        n_orig = len({v for v in corners if pmap.is_original(v)})
        faces.append(FaceRecord(len(faces), tuple(orbit), len(orbit), n_orig, corners))
    chi = pmap.n_nodes - pmap.n_segments + len(faces)
    if chi != 2:
        raise MapError(f"non-spherical embedding: V-E+F = {chi}, expected 2")
    return faces


def face_index(faces: list[FaceRecord]) -> dict[Dart, int]:
    return {d: f.id for f in faces for d in f.boundary}


# ---------------------------------------------------------------------------
# original edges


@dataclass(frozen=True)
class OriginalEdge:
    endpoints: tuple[str, str]
    darts: tuple[Dart, ...]
    crossing_nodes: tuple[str, ...]
    segments: tuple[int, ...]
    self_crossing: bool

    @property
    def crossings(self) -> int:
        return len(self.crossing_nodes)


def _walk(pmap: PlanarMap, start: Dart) -> tuple[list[Dart], Dart]:
    path = [start]
    d = pmap.partner[start]
    while pmap.is_crossing(d.node):
        nxt = pmap.continue_strand(d)
        path.append(nxt)
        d = pmap.partner[nxt]
    return path, d


def recover_edges(pmap: PlanarMap) -> list[OriginalEdge]:
    """Original edges, each walked once from its smaller end dart."""
    edges = []
    for v in pmap.originals:
        for i in range(pmap.degree[v]):
            start = Dart(v, i)
            path, end = _walk(pmap, start)
            if end < start:
                continue
            inner = tuple(d.node for d in path[1:])
            edges.append(OriginalEdge(
                endpoints=(start.node, end.node),
                darts=tuple(path),
                crossing_nodes=inner,
                segments=tuple(pmap.segment_of[d] for d in path),
                self_crossing=len(set(inner)) < len(inner),
            ))
    return edges


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    euler_ok: bool
    two_connected: bool
    simple: bool
    max_crossings_per_edge: int
    min_degree: int
    self_crossing: bool
    n: int
    m: int
    k_max: int
    assumption_flags: list[str]
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "euler_ok": self.euler_ok,
            "two_connected": self.two_connected,
            "simple": self.simple,
            "self_crossing": self.self_crossing,
            "max_crossings_per_edge": self.max_crossings_per_edge,
            "k_max": self.k_max,
            "min_degree": self.min_degree,
            "assumption_flags": list(self.assumption_flags),
            "notes": list(self.notes),
        }


def simplicity_problems(pmap: PlanarMap, edges: list[OriginalEdge]) -> list[str]:
    """Reasons the drawing is not simple (empty list when it is).

    Two edges may share at most one point, counting common endpoints.
    """
    problems = []
    strands: dict[str, list[int]] = {}
    for idx, e in enumerate(edges):
        if e.endpoints[0] == e.endpoints[1]:
            problems.append(f"edge {idx} is a loop at {e.endpoints[0]}")
        if e.self_crossing:
            problems.append(f"edge {idx} crosses itself")
        for x in set(e.crossing_nodes):
            strands.setdefault(x, []).append(idx)
    shared = Counter()
    for x, owners in strands.items():
        if len(owners) == 2:
            shared[tuple(sorted(owners))] += 1
    for idx_a in range(len(edges)):
        ends_a = set(edges[idx_a].endpoints)
        for idx_b in range(idx_a + 1, len(edges)):
            common = len(ends_a & set(edges[idx_b].endpoints)) + shared.get((idx_a, idx_b), 0)
            if common > 1:
                problems.append(f"edges {idx_a} and {idx_b} meet {common} times")
    return problems


def validate(pmap: PlanarMap, k_max: int = 4) -> ValidationReport:
    try:
        trace_faces(pmap)
        euler_ok = True
    except MapError:
        euler_ok = False
    graph = nx.Graph(pmap.to_graph())
    two_connected = pmap.n_nodes >= 3 and nx.is_biconnected(graph)

    edges = recover_edges(pmap)
    covered = {s for e in edges for s in e.segments}
    closed = len(covered) < pmap.n_segments
    problems = simplicity_problems(pmap, edges)
    deg = {v: pmap.degree[v] for v in pmap.originals}
    min_degree = min(deg.values()) if deg else 0
    max_cross = max((e.crossings for e in edges), default=0)

    flags = []
    if min_degree < MIN_DEGREE:
        flags.append(FLAG_MIN_DEGREE)
    if not two_connected:
        flags.append(FLAG_NOT_2_CONNECTED)
    if problems:
        flags.append(FLAG_NOT_SIMPLE)
    if max_cross > k_max:
        flags.append(FLAG_CROSSINGS)
    if closed:
        flags.append(FLAG_CLOSED_STRAND)
    return ValidationReport(
        euler_ok=euler_ok,
        two_connected=two_connected,
        simple=not problems,
        max_crossings_per_edge=max_cross,
        min_degree=min_degree,
        self_crossing=any(e.self_crossing for e in edges),
        n=len(pmap.originals),
        m=len(edges),
        k_max=k_max,
        assumption_flags=flags,
        notes=problems[:20],
    )
