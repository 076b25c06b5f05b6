import math

import numpy as np
import pytest

from foliamap.delisle import build_conic, midpoint_standard_parallels
from foliamap.projections import EquidistantConic
from foliamap.sphere import GeoPoint, SphericalTriangle, great_circle_distance

DEG = math.pi / 180.0


def random_points(rng, n):
    """Uniform on the sphere: normalised Gaussian vectors."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return [GeoPoint(math.asin(z), math.atan2(y, x)) for x, y, z in v]


def random_triangles(rng, n, lo=1e-3, hi=math.pi - 1e-3):
    out = []
    while len(out) < n:
        a, b, c = random_points(rng, 3)
        sides = [great_circle_distance(a, b), great_circle_distance(b, c), great_circle_distance(c, a)]
        if all(lo < s < hi for s in sides):
            out.append(SphericalTriangle(a, b, c))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20190514)


@pytest.fixture(scope="session")
def russia():
    """Delisle's parameters for the Russian Empire: window 40-70 N."""
    return build_conic(*midpoint_standard_parallels(40 * DEG, 70 * DEG))


@pytest.fixture(scope="session")
def russia_spec(russia):
    return EquidistantConic(russia)


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_runtest_makereport(item, call):
    if call.when != "call" or item.get_closest_marker("acceptance") is None:
        return
    label = item.get_closest_marker("acceptance").args[0]
    status = "PASS" if call.excinfo is None else "FAIL"
    extra = getattr(item, "_acceptance_detail", "")
    ACCEPTANCE_LINES.append(f"{status}  {label}{'  ' + extra if extra else ''}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
