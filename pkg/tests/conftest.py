import random
from pathlib import Path

import pytest

from drawings import GeneralPositionError, random_drawing
from fourcross.mapcore import MapError, parse_map, trace_faces, validate

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"


def load(name: str):
    return parse_map((FIXTURES / f"{name}.map").read_text())


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURES.glob("*.map"))


def random_two_connected_maps(seed: int, count: int, max_points: int = 9):
    """Planarized random straight-line drawings whose map is 2-connected."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, max_points)
        e = rng.randint(n, min(n * (n - 1) // 2, 3 * n))
        try:
            pmap = random_drawing(rng, n, e, grid=200)
            report = validate(pmap)
        except (GeneralPositionError, MapError):
            continue
        if report.two_connected:
            out.append(pmap)
    return out


def face_by_label(pmap, label: str):
    return [f for f in trace_faces(pmap) if f.label == label]


@pytest.fixture(params=fixture_names())
def any_fixture(request):
    return request.param, load(request.param)
