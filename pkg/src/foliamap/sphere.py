"""Geometry on the unit sphere.

Points are latitude/longitude pairs in radians; lengths are angles (the
sphere has radius 1). Vector work goes through unit 3-vectors, with the
geodesic distance taken as ``atan2(|u x v|, u . v)`` so that it stays
accurate for both tiny and nearly antipodal separations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadRegion,
    BadSampleCount,
    DegenerateArc,
    DegenerateTriangle,
    FoliamapError,
    NonUnitVector,
    PoleParallel,
)

__all__ = [
    "GeoPoint",
    "UnitVec3",
    "SphericalTriangle",
    "Region",
    "normalize_lon",
    "geo_to_vec",
    "vec_to_geo",
    "great_circle_distance",
    "geodesic_point",
    "triangle_angles",
    "triangle_midline",
    "sample_meridian",
    "sample_parallel",
]

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi


def normalize_lon(lon: float) -> float:
    """Wrap a longitude into (-pi, pi]."""
    lon = math.remainder(lon, TWO_PI)
    if lon <= -math.pi:
        lon += TWO_PI
    return lon


@dataclass(frozen=True)
class GeoPoint:
    """A point on the unit sphere, ``lat`` in [-pi/2, pi/2], ``lon`` in (-pi, pi].

    Longitude is wrapped on construction and forced to 0 at either pole, so
    two GeoPoints describing the same place compare equal.
    """

    lat: float
    lon: float

    def __post_init__(self):
        lat = float(self.lat)
        lon = float(self.lon)
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise FoliamapError(f"non-finite coordinates ({lat}, {lon})")
        if abs(lat) > HALF_PI:
            raise FoliamapError(f"latitude {lat} outside [-pi/2, pi/2]")
        lon = 0.0 if abs(lat) == HALF_PI else normalize_lon(lon)
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)

    @classmethod
    def from_degrees(cls, lat_deg: float, lon_deg: float) -> "GeoPoint":
        return cls(math.radians(lat_deg), math.radians(lon_deg))

    def to_degrees(self) -> tuple[float, float]:
        return math.degrees(self.lat), math.degrees(self.lon)

    @property
    def is_pole(self) -> bool:
        return abs(self.lat) == HALF_PI


@dataclass(frozen=True)
class UnitVec3:
    """Cartesian unit vector; components are renormalized on construction.

    Raises :class:`NonUnitVector` if the given components are further than
    1e-9 from unit length.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if not math.isfinite(norm) or abs(norm - 1.0) > 1e-9:
            raise NonUnitVector(f"vector norm {norm} is not 1 within 1e-9")
        object.__setattr__(self, "x", self.x / norm)
        object.__setattr__(self, "y", self.y / norm)
        object.__setattr__(self, "z", self.z / norm)

    @classmethod
    def from_array(cls, v: Sequence[float]) -> "UnitVec3":
        """Normalize an arbitrary non-zero 3-vector."""
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not math.isfinite(norm):
            raise NonUnitVector("cannot normalize a zero or non-finite vector")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def geo_to_vec(p: GeoPoint) -> UnitVec3:
    cl = math.cos(p.lat)
    return UnitVec3(cl * math.cos(p.lon), cl * math.sin(p.lon), math.sin(p.lat))


def vec_to_geo(v: UnitVec3 | Sequence[float]) -> GeoPoint:
    if not isinstance(v, UnitVec3):
        v = UnitVec3(*(float(c) for c in v))
    lat = math.atan2(v.z, math.hypot(v.x, v.y))
    lon = math.atan2(v.y, v.x)
    return GeoPoint(lat, lon)


def _vec(p: GeoPoint) -> np.ndarray:
    cl = math.cos(p.lat)
    return np.array([cl * math.cos(p.lon), cl * math.sin(p.lon), math.sin(p.lat)])


def _geo(v: np.ndarray) -> GeoPoint:
    v = v / np.linalg.norm(v)
    return GeoPoint(math.atan2(v[2], math.hypot(v[0], v[1])), math.atan2(v[1], v[0]))


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def great_circle_distance(p: GeoPoint, q: GeoPoint) -> float:
    """Central angle between two points, in [0, pi]."""
    return _angle(_vec(p), _vec(q))


def geodesic_point(p: GeoPoint, q: GeoPoint, t: float) -> GeoPoint:
    """Point a fraction ``t`` of the way along the minor great-circle arc p -> q."""
    u, v = _vec(p), _vec(q)
    axis = np.cross(u, v)
    s = float(np.linalg.norm(axis))
    if s < 1e-15:
        raise DegenerateArc("endpoints are equal or antipodal; the great circle is not unique")
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    omega = math.atan2(s, float(np.dot(u, v)))
    # unit tangent at p pointing toward q
    w = np.cross(axis / s, u)
    a = t * omega
    return _geo(math.cos(a) * u + math.sin(a) * w)


@dataclass(frozen=True)
class SphericalTriangle:
    a: GeoPoint
    b: GeoPoint
    c: GeoPoint

    def __post_init__(self):
        va, vb, vc = _vec(self.a), _vec(self.b), _vec(self.c)
        for name, (u, v) in {"AB": (va, vb), "BC": (vb, vc), "CA": (vc, va)}.items():
            if np.linalg.norm(np.cross(u, v)) < 1e-15:
                raise DegenerateTriangle(f"side {name} has coincident or antipodal endpoints")
        if abs(float(np.dot(va, np.cross(vb, vc)))) < 1e-15:
            raise DegenerateTriangle("vertices lie on one great circle")

    def vectors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return _vec(self.a), _vec(self.b), _vec(self.c)


def _vertex_angle(apex: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    # angle between the planes (apex, u) and (apex, v)
    return _angle(np.cross(apex, u), np.cross(apex, v))


def triangle_angles(t: SphericalTriangle) -> tuple[float, float, float]:
    """Interior angles at A, B and C."""
    a, b, c = t.vectors()
    return _vertex_angle(a, b, c), _vertex_angle(b, c, a), _vertex_angle(c, a, b)


def triangle_midline(t: SphericalTriangle) -> tuple[float, float]:
    """Return ``(DE, AC/2)`` where D and E are the midpoints of AB and BC."""
    a, b, c = t.vectors()
    d = a + b
    e = b + c
    return _angle(d / np.linalg.norm(d), e / np.linalg.norm(e)), 0.5 * _angle(a, c)


def _check_count(n: int) -> None:
    if n < 2:
        raise BadSampleCount(f"need at least 2 samples, got {n}")


def sample_meridian(lon: float, lat_range: tuple[float, float], n: int) -> list[GeoPoint]:
    _check_count(n)
    lo, hi = lat_range
    if abs(lo) > HALF_PI or abs(hi) > HALF_PI:
        raise BadRegion(f"latitude range {lat_range} leaves [-pi/2, pi/2]")
    return [GeoPoint(float(lat), lon) for lat in np.linspace(lo, hi, n)]


def sample_parallel(lat: float, lon_range: tuple[float, float], n: int) -> list[GeoPoint]:
    _check_count(n)
    if abs(lat) >= HALF_PI:
        raise PoleParallel("the parallel at a pole degenerates to a point")
    lo, hi = lon_range
    return [GeoPoint(lat, float(lon)) for lon in np.linspace(lo, hi, n)]


@dataclass(frozen=True)
class Region:
    """Latitude/longitude box. Longitudes are kept unwrapped so a window may
    straddle the antimeridian (``lon_max - lon_min`` in (0, 2 pi])."""

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    def __post_init__(self):
        if not self.lat_min < self.lat_max:
            raise BadRegion("lat_min must be < lat_max")
        if self.lat_min < -HALF_PI or self.lat_max > HALF_PI:
            raise BadRegion("latitudes must lie in [-pi/2, pi/2]")
        span = self.lon_max - self.lon_min
        if not 0.0 < span <= TWO_PI + 1e-12:
            raise BadRegion("longitude span must be in (0, 2 pi]")

    @classmethod
    def from_degrees(cls, lat_min, lat_max, lon_min, lon_max) -> "Region":
        return cls(*(math.radians(v) for v in (lat_min, lat_max, lon_min, lon_max)))

    def contains(self, other: "Region") -> bool:
        return (
            self.lat_min <= other.lat_min
            and other.lat_max <= self.lat_max
            and self.lon_min <= other.lon_min
            and other.lon_max <= self.lon_max
        )
