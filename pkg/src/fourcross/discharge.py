"""Six-step discharging on the plane map of a drawing, in exact arithmetic.

Each face starts with ``|f| + |V(f)| - 4``; the total is ``4n - 8``.  The
steps move charge between faces and onto original vertices.  If every face
ends nonnegative and every original vertex holds ``deg/3``, then
``2m/3 <= 4n - 8``, i.e. ``m <= 6n - 12``.

Every step gathers its contributions from the previous ledger and commits
them together.  Structural facts the argument relies on (chain lengths,
distinct neighbours, once-per-edge donation, ...) are checked as the run
goes; a failed check is a :class:`Violation`.  In strict mode the first
violation raises :class:`DischargeError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .mapcore import Dart, FaceRecord, PlanarMap, face_index, trace_faces, validate

THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)
STEP_NAMES = {
    0: "initial charge",
    1: "charge 0-triangles",
    2: "charge original vertices",
    3: "1-triangles with poor neighbours",
    4: "1-triangles with positive neighbours",
    5: "finish 1-triangles",
    6: "charge 0-pentagons",
}

Receiver = Union[int, str]


class DischargeError(RuntimeError):
    def __init__(self, violation: "Violation"):
        self.violation = violation
        super().__init__(f"step {violation.step}: {violation.kind}: {violation.detail}")


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str
    detail: str

    def as_dict(self) -> dict:
        return {"step": self.step, "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class ContributionEvent:
    step: int
    donor: int
    receiver: Receiver
    amount: Fraction
    conduit: int | str | None
    """Segment id for steps 1 and 3-5, crossing node for step 6, None for step 2."""

    def as_dict(self) -> dict:
        return {
            "step": self.step,
            "donor": self.donor,
            "receiver": self.receiver,
            "amount": fraction_str(self.amount),
            "conduit": self.conduit,
        }


@dataclass
class ChargeLedger:
    step: int
    face_charge: dict[int, Fraction]
    vertex_charge: dict[str, Fraction]
    events: list[ContributionEvent] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.face_charge.values(), Fraction(0)) + sum(self.vertex_charge.values(), Fraction(0))

    def as_dict(self, faces: list[FaceRecord] | None = None) -> dict:
        out = {"step": self.step, "name": STEP_NAMES[self.step], "total": fraction_str(self.total())}
        out["faces"] = [
            {"face": fid, **({"label": faces[fid].label} if faces else {}), "charge": fraction_str(c)}
            for fid, c in sorted(self.face_charge.items())
        ]
        out["vertices"] = [{"vertex": v, "charge": fraction_str(c)} for v, c in sorted(self.vertex_charge.items())]
        out["events"] = [e.as_dict() for e in self.events]
        return out


@dataclass(frozen=True)
class WedgeInfo:
    triangle: int
    quads: tuple[int, ...]
    wedge_neighbor: int | None
    through: int | None

    @property
    def j(self) -> int:
        return len(self.quads) + 1


@dataclass(frozen=True)
class Certificate:
    n: int
    m: int
    bound: int
    holds: bool

    def __str__(self) -> str:
        verdict = "HOLDS" if self.holds else "NOT CERTIFIED"
        return f"m={self.m} ≤ {self.bound}: {verdict}" if self.m <= self.bound else \
            f"m={self.m} > {self.bound}: {verdict}"


@dataclass
class DischargeReport:
    faces: list[FaceRecord]
    ledgers: list[ChargeLedger]
    final_nonnegative: bool
    vertex_charges_ok: bool
    certificate: Certificate
    assertion_violations: list[Violation]
    assumption_flags: list[str]

    @property
    def final(self) -> ChargeLedger:
        return self.ledgers[-1]

    def as_dict(self) -> dict:
        c = self.certificate
        return {
            "n": c.n,
            "m": c.m,
            "assumption_flags": list(self.assumption_flags),
            "steps": [led.as_dict(self.faces) for led in self.ledgers],
            "final_nonnegative": self.final_nonnegative,
            "vertex_charges_ok": self.vertex_charges_ok,
            "certificate": {"n": c.n, "m": c.m, "bound": c.bound, "holds": c.holds},
            "violations": [v.as_dict() for v in self.assertion_violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# local structure


class Structure:
    """Face adjacency queries over a traced map."""

    def __init__(self, pmap: PlanarMap, faces: list[FaceRecord]):
        self.pmap = pmap
        self.faces = faces
        self.face_of = face_index(faces)
        self.position = {d: k for f in faces for k, d in enumerate(f.boundary)}

    def across(self, d: Dart) -> int:
        return self.face_of[self.pmap.partner[d]]

    def kind(self, fid: int, originals: int, size: int) -> bool:
        return self.faces[fid].is_kind(originals, size)

    def is_0quad(self, fid: int) -> bool:
        return self.kind(fid, 0, 4)

    def chain(self, d: Dart, limit: int) -> tuple[list[int], Dart, bool]:
        """Walk away from dart ``d`` through opposite edges of 0-quadrilaterals.

        Returns the faces met (the last one is the first face that is not a
        0-quadrilateral, unless the walk was cut short), the dart of the
        last face on the crossed edge, and whether a face repeated.
        ``limit`` bounds the number of faces visited.
        """
        seen = {self.face_of[d]}
        met = []
        p = self.pmap.partner[d]
        while True:
            f = self.face_of[p]
            if f in seen:
                return met + [f], p, True
            seen.add(f)
            met.append(f)
            if not self.is_0quad(f) or len(met) >= limit:
                return met, p, False
            k = self.position[p]
            p = self.pmap.partner[self.faces[f].boundary[(k + 2) % 4]]

    def one_triangle_parts(self, fid: int) -> tuple[Dart, Dart, Dart]:
        """(edge leaving A, edge entering A, edge opposite A) of a 1-triangle."""
        f = self.faces[fid]
        if not f.is_kind(1, 3):
            raise ValueError(f"face {fid} is a {f.label}, not a 1-triangle")
        a = next(k for k, v in enumerate(f.corners) if self.pmap.is_original(v))
        b = f.boundary
        return b[a], b[(a - 1) % 3], b[(a + 1) % 3]

    def neighbors(self, fid: int) -> tuple[tuple[int, Dart], tuple[int, Dart]]:
        out_d, in_d, _ = self.one_triangle_parts(fid)
        return (self.across(out_d), out_d), (self.across(in_d), in_d)

    def wedge(self, fid: int) -> tuple[WedgeInfo, list[str]]:
        _, _, opp = self.one_triangle_parts(fid)
        met, p, repeated = self.chain(opp, limit=len(self.faces))
        problems = []
        if repeated:
            problems.append(f"wedge of face {fid} revisits face {met[-1]}")
            return WedgeInfo(fid, tuple(met[:-1]), None, None), problems
        if len(met) > 4:
            problems.append(f"wedge of face {fid} has j={len(met)} > 4")
        return WedgeInfo(fid, tuple(met[:-1]), met[-1], self.pmap.segment_of[p]), problems

    def vertex_neighbor(self, fid: int, x: str) -> int:
        if not self.pmap.is_crossing(x):
            raise ValueError(f"node {x!r} is not a crossing")
        for d in self.faces[fid].boundary:
            if d.node == x:
                return self.face_of[Dart(x, (d.slot + 2) % 4)]
        raise ValueError(f"crossing {x!r} is not on the boundary of face {fid}")


# ---------------------------------------------------------------------------
# public single-purpose entry points


def initial_charges(pmap: PlanarMap, faces: list[FaceRecord]) -> ChargeLedger:
    fc = {f.id: Fraction(f.size + f.originals - 4) for f in faces}
    return ChargeLedger(0, fc, {v: Fraction(0) for v in pmap.originals})


def neighbors_of_1_triangle(pmap: PlanarMap, faces: list[FaceRecord], t: int) -> tuple[int, int]:
    """The two faces sharing with 1-triangle ``t`` the edges at its original vertex.

    Raises ``ValueError`` if ``t`` is not a 1-triangle or if the two coincide.
    """
    (g1, _), (g2, _) = Structure(pmap, faces).neighbors(t)
    if g1 == g2:
        raise ValueError(f"neighbours of face {t} coincide (face {g1})")
    return g1, g2


def wedge(pmap: PlanarMap, faces: list[FaceRecord], t: int) -> WedgeInfo:
    info, problems = Structure(pmap, faces).wedge(t)
    if problems:
        raise DischargeError(Violation(3, "wedge", problems[0]))
    return info


def vertex_neighbor(pmap: PlanarMap, faces: list[FaceRecord], f: int, x: str) -> int:
    return Structure(pmap, faces).vertex_neighbor(f, x)


def apply_step(pmap: PlanarMap, faces: list[FaceRecord], ledger: ChargeLedger, i: int,
               strict: bool = False) -> tuple[ChargeLedger, list[ContributionEvent]]:
    new = _Engine(Structure(pmap, faces), strict).step(ledger, i)
    return new, new.events


# ---------------------------------------------------------------------------
# engine


class _Engine:
    def __init__(self, st: Structure, strict: bool):
        self.st = st
        self.strict = strict
        self.donations: dict[tuple[int, int], int] = {}

    def step(self, ledger: ChargeLedger, i: int) -> ChargeLedger:
        if ledger.step != i - 1:
            raise ValueError(f"step {i} needs the ledger after step {i - 1}, got {ledger.step}")
        self.violations: list[Violation] = []
        self.i = i
        events = getattr(self, f"_step{i}")(ledger)
        fc = dict(ledger.face_charge)
        vc = dict(ledger.vertex_charge)
        for e in events:
            fc[e.donor] -= e.amount
            if isinstance(e.receiver, str):
                vc[e.receiver] += e.amount
            else:
                fc[e.receiver] += e.amount
        new = ChargeLedger(i, fc, vc, events, self.violations)
        self._check_once(events)
        self._postconditions(ledger, new)
        return new

    def flag(self, kind: str, detail: str) -> None:
        v = Violation(self.i, kind, detail)
        if self.strict:
            raise DischargeError(v)
        self.violations.append(v)

    def _check_once(self, events: list[ContributionEvent]) -> None:
        if self.i in (2, 6):
            return
        for e in events:
            key = (e.donor, e.conduit)
            if key in self.donations:
                self.flag("donated-twice",
                          f"face {e.donor} contributes through segment {e.conduit} "
                          f"in steps {self.donations[key]} and {e.step}")
            else:
                self.donations[key] = e.step

    def _postconditions(self, old: ChargeLedger, new: ChargeLedger) -> None:
        st = self.st
        if new.total() != old.total():
            self.flag("conservation", f"total moved from {old.total()} to {new.total()}")
        fc = new.face_charge
        if self.i == 1:
            for f in st.faces:
                if f.is_kind(0, 3) and fc[f.id] != 0:
                    self.flag("0-triangle-not-zero", f"face {f.id} holds {fc[f.id]}")
        elif self.i == 2:
            for v, c in new.vertex_charge.items():
                if c != Fraction(st.pmap.degree[v], 3):
                    self.flag("vertex-charge", f"vertex {v} holds {c}, degree {st.pmap.degree[v]}")
            for f in st.faces:
                if fc[f.id] < 0 and not (f.is_kind(1, 3) or f.is_kind(0, 5)):
                    self.flag("negative-face", f"{f.label} {f.id} holds {fc[f.id]} after step 2")
        elif self.i == 5:
            for f in st.faces:
                if fc[f.id] < 0 and not f.is_kind(0, 5):
                    self.flag("negative-face", f"{f.label} {f.id} holds {fc[f.id]} after step 5")

    # -- steps ---------------------------------------------------------
    def _step1(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        events = []
        for t in st.faces:
            if not t.is_kind(0, 3):
                continue
            for d in t.boundary:
                met, p, repeated = st.chain(d, limit=3)
                if repeated:
                    self.flag("step1-chain-repeats", f"chain from face {t.id} revisits face {met[-1]}")
                    continue
                if st.faces[met[0]].size <= 3:
                    self.flag("step1-adjacent-triangle",
                              f"0-triangle {t.id} shares an edge with {st.faces[met[0]].label} {met[0]}")
                if st.is_0quad(met[-1]):
                    self.flag("step1-chain-too-long",
                              f"third face {met[-1]} of the chain from 0-triangle {t.id} is a 0-quadrilateral")
                events.append(ContributionEvent(1, met[-1], t.id, THIRD, st.pmap.segment_of[p]))
        return events

    def _step2(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        return [
            ContributionEvent(2, f.id, v, THIRD, None)
            for f in st.faces for v in f.corners if st.pmap.is_original(v)
        ]

    def _neighbors(self, t: int):
        (g1, d1), (g2, d2) = self.st.neighbors(t)
        return (g1, d1), (g2, d2)

    def _wedge(self, t: int) -> WedgeInfo:
        info, problems = self.st.wedge(t)
        for p in problems:
            self.flag("wedge", p)
        return info

    def _step3(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        ch = led.face_charge
        events = []
        for t in st.faces:
            if not t.is_kind(1, 3):
                continue
            (g1, _), (g2, _) = self._neighbors(t.id)
            if g1 == g2:
                self.flag("neighbors-coincide", f"both neighbours of 1-triangle {t.id} are face {g1}")
            poor = ch[g1] <= 0 and ch[g2] <= 0
            both_tri = st.kind(g1, 1, 3) and st.kind(g2, 1, 3)
            if poor and not both_tri:
                self.flag("poor-neighbors",
                          f"1-triangle {t.id} has non-positive neighbours {g1}, {g2} "
                          "that are not both 1-triangles")
            if both_tri:
                w = self._wedge(t.id)
                if w.wedge_neighbor is not None:
                    events.append(ContributionEvent(3, w.wedge_neighbor, t.id, THIRD, w.through))
        return events

    def _step4(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        ch = led.face_charge
        events = []
        for t in st.faces:
            if not t.is_kind(1, 3) or ch[t.id] >= 0:
                continue
            pair = self._neighbors(t.id)
            for k, (g, d) in enumerate(pair):
                other = pair[1 - k][0]
                if ch[g] <= 0:
                    continue
                if not st.kind(g, 1, 4):
                    give = True
                elif ch[g] >= Fraction(2, 3):
                    give = True
                elif ch[g] == THIRD:
                    give = st.kind(other, 1, 3) or (st.kind(other, 1, 4) and ch[other] == THIRD)
                else:
                    give = False
                if give:
                    events.append(ContributionEvent(4, g, t.id, SIXTH, st.pmap.segment_of[d]))
        return events

    def _step5(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        ch = led.face_charge
        events = []
        for t in st.faces:
            if not t.is_kind(1, 3) or ch[t.id] >= 0:
                continue
            w = self._wedge(t.id)
            if w.wedge_neighbor is not None:
                events.append(ContributionEvent(5, w.wedge_neighbor, t.id, SIXTH, w.through))
        return events

    def _step6(self, led: ChargeLedger) -> list[ContributionEvent]:
        st = self.st
        ch = led.face_charge
        events = []
        for f in st.faces:
            if ch[f.id] <= 0:
                continue
            needy: dict[int, str] = {}
            for d in f.boundary:
                if not st.pmap.is_crossing(d.node):
                    continue
                g = st.face_of[Dart(d.node, (d.slot + 2) % 4)]
                if g != f.id and st.kind(g, 0, 5) and ch[g] < 0:
                    needy.setdefault(g, d.node)
            if needy:
                share = ch[f.id] / len(needy)
                for g, x in needy.items():
                    events.append(ContributionEvent(6, f.id, g, share, x))
        return events


def run_discharging(pmap: PlanarMap, strict: bool = True, k_max: int = 4) -> DischargeReport:
    """Run all six steps and certify ``m <= 6n - 12`` when the final charges allow it."""
    faces = trace_faces(pmap)
    report = validate(pmap, k_max)
    st = Structure(pmap, faces)
    engine = _Engine(st, strict)
    n, m = report.n, report.m

    led = initial_charges(pmap, faces)
    violations = []
    if led.total() != 4 * n - 8:
        v = Violation(0, "charge-identity",
                      f"initial total {led.total()} differs from 4n-8 = {4 * n - 8} "
                      "(some face boundary repeats an original vertex)")
        if strict:
            raise DischargeError(v)
        led.violations.append(v)
    ledgers = [led]
    for i in range(1, 7):
        led = engine.step(led, i)
        ledgers.append(led)
    for led in ledgers:
        violations.extend(led.violations)

    final = ledgers[-1]
    nonneg = all(c >= 0 for c in final.face_charge.values())
    vertex_ok = all(c == Fraction(pmap.degree[v], 3) for v, c in final.vertex_charge.items())
    identity_ok = final.total() == 4 * n - 8
    holds = nonneg and vertex_ok and identity_ok
    bound = 6 * n - 12
    if holds:
        assert m <= bound, "nonnegative final charges must imply m <= 6n - 12"
    return DischargeReport(
        faces=faces,
        ledgers=ledgers,
        final_nonnegative=nonneg,
        vertex_charges_ok=vertex_ok,
        certificate=Certificate(n, m, bound, holds),
        assertion_violations=violations,
        assumption_flags=report.assumption_flags,
    )
