import math

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliamap.errors import (
    BadSampleCount,
    DegenerateArc,
    DegenerateTriangle,
    NonUnitVector,
    PoleParallel,
)
from foliamap.sphere import (
    GeoPoint,
    SphericalTriangle,
    UnitVec3,
    geo_to_vec,
    geodesic_point,
    great_circle_distance,
    normalize_lon,
    sample_meridian,
    sample_parallel,
    triangle_angles,
    triangle_midline,
    vec_to_geo,
)

from conftest import DEG, random_points, random_triangles

lats = st.floats(-math.pi / 2, math.pi / 2)
lons = st.floats(-10.0, 10.0)


def vec(p):
    v = geo_to_vec(p)
    return np.array([v.x, v.y, v.z])


def girard_area(t):
    # Van Oosterom & Strackee solid angle, independent of the vertex-angle code
    a, b, c = (vec(p) for p in (t.a, t.b, t.c))
    num = abs(np.dot(a, np.cross(b, c)))
    den = 1 + a @ b + b @ c + c @ a
    return 2 * math.atan2(num, den)


OCTANT = SphericalTriangle(GeoPoint(0, 0), GeoPoint(0, math.pi / 2), GeoPoint(math.pi / 2, 0))


class TestGeoPoint:
    def test_lon_wraps_into_half_open_range(self):
        assert GeoPoint(0, math.pi).lon == math.pi
        assert GeoPoint(0, -math.pi).lon == math.pi
        assert GeoPoint(0, 3 * math.pi / 2).lon == pytest.approx(-math.pi / 2)

    def test_poles_canonicalised(self):
        assert GeoPoint(math.pi / 2, 1.3) == GeoPoint(math.pi / 2, -2.0)
        assert GeoPoint(-math.pi / 2, 1.3).lon == 0.0

    def test_latitude_out_of_range(self):
        with pytest.raises(ValueError):
            GeoPoint(2.0, 0.0)

    @given(lons)
    def test_normalize_lon_range(self, lon):
        v = normalize_lon(lon)
        assert -math.pi < v <= math.pi
        assert math.isclose(math.cos(v), math.cos(lon), abs_tol=1e-12)


class TestVectors:
    @pytest.mark.parametrize(
        "lat, lon, expected",
        [
            (0, 0, (1, 0, 0)),
            (90, 0, (0, 0, 1)),
            (45, 90, (0, math.sqrt(0.5), math.sqrt(0.5))),
        ],
    )
    def test_geo_to_vec(self, lat, lon, expected):
        npt.assert_allclose(vec(GeoPoint.from_degrees(lat, lon)), expected, atol=1e-15)

    def test_vec_to_geo(self):
        assert vec_to_geo((0, 0, -1)) == GeoPoint(-math.pi / 2, 0)
        assert vec_to_geo(UnitVec3(1, 0, 0)) == GeoPoint(0, 0)

    def test_non_unit_rejected(self):
        with pytest.raises(NonUnitVector):
            vec_to_geo((1.0, 1e-4, 0.0))

    def test_round_trip_example(self):
        p = GeoPoint(0.3, -2.0)
        q = vec_to_geo(geo_to_vec(p))
        assert abs(q.lat - p.lat) < 1e-10 and abs(q.lon - p.lon) < 1e-10

    def test_round_trip_10k(self, rng):
        for p in random_points(rng, 10_000):
            q = vec_to_geo(geo_to_vec(p))
            assert abs(q.lat - p.lat) < 1e-10
            assert abs(math.remainder(q.lon - p.lon, 2 * math.pi)) < 1e-10

    @given(lats, lons)
    def test_unit_norm(self, lat, lon):
        assert abs(np.linalg.norm(vec(GeoPoint(lat, lon))) - 1) < 1e-12


class TestDistance:
    def test_examples(self):
        p = GeoPoint(0, 0)
        assert great_circle_distance(p, p) == 0
        assert great_circle_distance(p, GeoPoint(0, math.pi / 2)) == pytest.approx(math.pi / 2, abs=1e-15)
        assert great_circle_distance(p, GeoPoint(0, math.pi)) == pytest.approx(math.pi, abs=1e-15)

    def test_tiny_separation_is_accurate(self):
        # arccos(dot) would return 0 or ~1.5e-8 here
        p, q = GeoPoint(0.5, 0.1), GeoPoint(0.5 + 1e-12, 0.1)
        assert great_circle_distance(p, q) == pytest.approx(1e-12, rel=1e-6)

    def test_triangle_inequality(self, rng):
        pts = random_points(rng, 3000)
        for a, b, c in zip(pts[0::3], pts[1::3], pts[2::3]):
            ab, bc, ac = (great_circle_distance(*x) for x in ((a, b), (b, c), (a, c)))
            assert ac <= ab + bc + 1e-12


class TestGeodesicPoint:
    def test_endpoints(self):
        p, q = GeoPoint.from_degrees(10, 20), GeoPoint.from_degrees(-30, 50)
        assert geodesic_point(p, q, 0.0) == p
        assert geodesic_point(p, q, 1.0) == q

    def test_equatorial_midpoint(self):
        m = geodesic_point(GeoPoint(0, 0), GeoPoint(0, math.pi / 2), 0.5)
        assert m.lat == pytest.approx(0, abs=1e-15) and m.lon == pytest.approx(math.pi / 4)

    def test_meridian_midpoint(self):
        m = geodesic_point(GeoPoint(0, 0), GeoPoint(math.pi / 2, 0), 0.5)
        assert m.lat == pytest.approx(math.pi / 4) and m.lon == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("q", [GeoPoint(0.2, 0.3), GeoPoint(-0.2, 0.3 - math.pi)])
    def test_degenerate(self, q):
        with pytest.raises(DegenerateArc):
            geodesic_point(GeoPoint(0.2, 0.3), q, 0.5)

    def test_on_circle_and_proportional(self, rng):
        pts = random_points(rng, 400)
        for p, q in zip(pts[::2], pts[1::2]):
            d = great_circle_distance(p, q)
            axis = np.cross(vec(p), vec(q))
            for t in (0.1, 0.37, 0.5, 0.9):
                r = geodesic_point(p, q, t)
                assert abs(great_circle_distance(p, r) - t * d) < 1e-10
                assert abs(vec(r) @ axis) < 1e-12 * max(1.0, np.linalg.norm(axis)) + 1e-12


class TestTriangles:
    def test_octant_angles(self):
        ang = triangle_angles(OCTANT)
        npt.assert_allclose(ang, [math.pi / 2] * 3, atol=1e-12)
        assert sum(ang) == pytest.approx(3 * math.pi / 2, abs=1e-10)

    def test_tiny_triangle_excess(self):
        # diameter ~1e-4: excess equals the (tiny) area by Girard's theorem
        t = SphericalTriangle(GeoPoint(0.4, 0.2), GeoPoint(0.4, 0.2 + 1e-4), GeoPoint(0.4 + 8e-5, 0.2 + 3e-5))
        excess = sum(triangle_angles(t)) - math.pi
        assert 0 < excess < 1e-7
        assert excess == pytest.approx(girard_area(t), rel=1e-4)

    def test_isosceles_with_high_apex(self):
        t = SphericalTriangle(GeoPoint(0, 0), GeoPoint(0, 10 * DEG), GeoPoint(80 * DEG, 5 * DEG))
        a, b, c = triangle_angles(t)
        assert a == pytest.approx(b, abs=1e-12)
        assert a + b + c > math.pi

    def test_random_angle_sum_and_girard(self, rng):
        for t in random_triangles(rng, 1000):
            ang = triangle_angles(t)
            assert all(0 < x < math.pi for x in ang)
            excess = sum(ang) - math.pi
            assert excess > 0
            assert abs(excess - girard_area(t)) < 1e-9

    def test_octant_midline(self):
        de, half_ac = triangle_midline(OCTANT)
        assert de == pytest.approx(math.pi / 3, abs=1e-12)
        assert half_ac == pytest.approx(math.pi / 4, abs=1e-12)

    def test_tiny_triangle_midline_is_euclidean(self):
        t = SphericalTriangle(GeoPoint(0.4, 0.2), GeoPoint(0.4, 0.2 + 1e-4), GeoPoint(0.4 + 8e-5, 0.2 + 3e-5))
        de, half_ac = triangle_midline(t)
        assert abs(de / half_ac - 1) < 1e-7

    def test_random_midline(self, rng):
        for t in random_triangles(rng, 1000):
            de, half_ac = triangle_midline(t)
            assert de > half_ac

    @pytest.mark.parametrize(
        "pts",
        [
            [(0, 0), (0, 0), (10, 10)],
            [(0, 0), (0, 180), (10, 10)],
            [(0, 0), (0, 10), (0, 20)],
        ],
    )
    def test_degenerate(self, pts):
        with pytest.raises(DegenerateTriangle):
            SphericalTriangle(*(GeoPoint.from_degrees(*p) for p in pts))


class TestFoliations:
    def test_meridian_example(self):
        pts = sample_meridian(0.0, (0.0, math.pi / 2), 3)
        assert [p.to_degrees() for p in pts] == [(0, 0), (45, 0), (90, 0)]

    def test_meridian_keeps_lon_and_equal_steps(self):
        pts = sample_meridian(1.1, (-1.2, 1.4), 9)
        assert all(p.lon == pytest.approx(1.1) for p in pts)
        gaps = [great_circle_distance(a, b) for a, b in zip(pts, pts[1:])]
        npt.assert_allclose(gaps, gaps[0], rtol=1e-12)

    def test_parallel_example(self):
        pts = sample_parallel(0.0, (0.0, math.pi), 3)
        npt.assert_allclose([p.to_degrees() for p in pts], [(0, 0), (0, 90), (0, 180)], atol=1e-12)

    def test_parallel_equal_chords(self):
        pts = sample_parallel(0.7, (-2.0, 1.0), 12)
        chords = [np.linalg.norm(vec(a) - vec(b)) for a, b in zip(pts, pts[1:])]
        npt.assert_allclose(chords, chords[0], rtol=1e-12)

    def test_parallel_gap_shrinks_by_cos_lat(self):
        lat, dl = 1.0, 1e-5
        a, b = sample_parallel(lat, (0.3, 0.3 + dl), 2)
        assert great_circle_distance(a, b) / dl == pytest.approx(math.cos(lat), rel=1e-9)

    def test_bad_inputs(self):
        with pytest.raises(BadSampleCount):
            sample_meridian(0, (0, 1), 1)
        with pytest.raises(PoleParallel):
            sample_parallel(math.pi / 2, (0, 1), 5)

    @settings(max_examples=200)
    @given(st.floats(-1.5, 1.5), st.floats(-3.1, 3.1))
    def test_foliations_orthogonal(self, lat, lon):
        s = 1e-6
        tm = vec(GeoPoint(lat + s, lon)) - vec(GeoPoint(lat - s, lon))
        tp = vec(GeoPoint(lat, lon + s)) - vec(GeoPoint(lat, lon - s))
        cosine = tm @ tp / (np.linalg.norm(tm) * np.linalg.norm(tp))
        assert abs(cosine) < 1e-10

    def test_foliations_singular_only_at_poles(self):
        # the parallel through a point collapses (zero tangent) only at the poles
        for lat in np.linspace(-math.pi / 2, math.pi / 2, 181):
            tp = vec(GeoPoint(lat, 1e-6)) - vec(GeoPoint(lat, -1e-6))
            collapsed = np.linalg.norm(tp) < 1e-15
            assert collapsed == (abs(lat) == math.pi / 2)
