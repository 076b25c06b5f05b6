"""Forward and inverse map projections of the unit sphere.

Four families are provided, each characterised by what it does to the
meridians and the parallels:

* :class:`Stereographic` - from one pole onto the plane tangent at the other.
  Parallels become concentric circles about the image of the far pole,
  meridians become straight lines through it. Conformal.
* :class:`Gnomonic` - central projection onto a tangent plane. Every great
  circle becomes a straight line.
* :class:`Cylindrical` - meridians become vertical lines, parallels
  horizontal ones. The profile picks the latitude spacing: equirectangular
  (true along meridians), conformal (Mercator) or equal-area (Lambert).
* :class:`EquidistantConic` - meridians are straight lines through an apex,
  parallels are arcs of circles about it, spaced at their true distance.

Each projection exposes ``xy(lat, lon)`` and ``latlon(x, y)`` on raw floats
(no longitude wrapping, used by the finite-difference code) and
``domain_error(lat, lon)``. The module-level :func:`forward`,
:func:`inverse` and :func:`in_domain` are the checked entry points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

from .errors import OutOfDomain, OutOfImage
from .sphere import HALF_PI, GeoPoint

if TYPE_CHECKING:
    from .delisle import ConicParams

__all__ = [
    "PlanePoint",
    "Pole",
    "Profile",
    "Stereographic",
    "Gnomonic",
    "Cylindrical",
    "EquidistantConic",
    "ProjectionSpec",
    "forward",
    "inverse",
    "in_domain",
]

# slack for points sitting on the edge of an image (e.g. lon = pi)
_IMAGE_EPS = 1e-12
_HORIZON = 1e-12


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise OutOfDomain(f"non-finite plane point ({self.x}, {self.y})")


class Pole(str, enum.Enum):
    NORTH = "north"
    SOUTH = "south"


class Profile(str, enum.Enum):
    EQUIRECTANGULAR = "equirectangular"
    CONFORMAL = "conformal"
    EQUAL_AREA = "equal_area"


@dataclass(frozen=True)
class Stereographic:
    """Projection from ``projection_pole`` onto the plane tangent at the
    opposite pole. Plane distance from the origin is ``2 tan(d/2)`` where d
    is the angular distance from the tangent pole."""

    projection_pole: Pole = Pole.NORTH

    def __post_init__(self):
        object.__setattr__(self, "projection_pole", Pole(self.projection_pole))

    @property
    def _sign(self) -> float:
        # +1 when projecting from the north pole (map centred on the south pole)
        return 1.0 if self.projection_pole is Pole.NORTH else -1.0

    def domain_error(self, lat, lon):
        if self._sign * lat >= HALF_PI:
            return f"point is the projection pole ({self.projection_pole.value})"
        return None

    def xy(self, lat, lon):
        s = self._sign
        r = 2.0 * math.tan(math.pi / 4.0 + s * lat / 2.0)
        return r * math.sin(lon), s * r * math.cos(lon)

    def latlon(self, x, y):
        s = self._sign
        r = math.hypot(x, y)
        lat = s * (2.0 * math.atan(r / 2.0) - HALF_PI)
        lon = math.atan2(x, s * y) if r > 0 else 0.0
        return lat, lon


@dataclass(frozen=True)
class Gnomonic:
    """Central projection onto the plane tangent at ``tangent_point``.

    Coordinates are taken in the local east/north frame of the tangent
    point; at a pole, "east" is the direction of longitude 90 degrees.
    """

    tangent_point: GeoPoint = field(default_factory=lambda: GeoPoint(-HALF_PI, 0.0))

    def _frame(self):
        p0, l0 = self.tangent_point.lat, self.tangent_point.lon
        cp = 0.0 if self.tangent_point.is_pole else math.cos(p0)
        sp = math.sin(p0)
        t = (cp * math.cos(l0), cp * math.sin(l0), sp)
        e = (-math.sin(l0), math.cos(l0), 0.0)
        n = (-sp * math.cos(l0), -sp * math.sin(l0), cp)
        return t, e, n

    @staticmethod
    def _unit(lat, lon):
        cl = math.cos(lat)
        return cl * math.cos(lon), cl * math.sin(lon), math.sin(lat)

    def _dots(self, lat, lon):
        v = self._unit(lat, lon)
        return tuple(sum(a * b for a, b in zip(v, axis)) for axis in self._frame())

    def domain_error(self, lat, lon):
        # within 1e-12 of the horizon the image is beyond 1e12 and meaningless
        if self._dots(lat, lon)[0] <= _HORIZON:
            return "angular distance from the tangent point must be < pi/2"
        return None

    def xy(self, lat, lon):
        vt, ve, vn = self._dots(lat, lon)
        return ve / vt, vn / vt

    def latlon(self, x, y):
        t, e, n = self._frame()
        v = [ti + x * ei + y * ni for ti, ei, ni in zip(t, e, n)]
        norm = math.sqrt(sum(c * c for c in v))
        return math.asin(max(-1.0, min(1.0, v[2] / norm))), math.atan2(v[1], v[0])


@dataclass(frozen=True)
class Cylindrical:
    """Normal-aspect cylindrical projection, true along the parallel ``ref_lat``.

    ``x = lon * cos(ref_lat)``. The profile fixes ``y`` so that the class
    property survives the rescaling: equirectangular ``y = lat``, conformal
    ``y = cos(ref_lat) * ln tan(pi/4 + lat/2)``, equal-area
    ``y = sin(lat) / cos(ref_lat)``.
    """

    profile: Profile = Profile.EQUIRECTANGULAR
    ref_lat: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if not abs(self.ref_lat) < HALF_PI:
            raise OutOfDomain("ref_lat must lie in (-pi/2, pi/2)")

    @property
    def _c(self) -> float:
        return math.cos(self.ref_lat)

    def domain_error(self, lat, lon):
        if self.profile is Profile.CONFORMAL and abs(lat) >= HALF_PI:
            return "conformal cylindrical needs |lat| < pi/2"
        return None

    def xy(self, lat, lon):
        c = self._c
        if self.profile is Profile.EQUIRECTANGULAR:
            y = lat
        elif self.profile is Profile.CONFORMAL:
            y = c * math.log(math.tan(math.pi / 4.0 + lat / 2.0))
        else:
            y = math.sin(lat) / c
        return lon * c, y

    def latlon(self, x, y):
        c = self._c
        lon = x / c
        if abs(lon) > math.pi + _IMAGE_EPS:
            raise OutOfImage(f"x = {x} lies beyond the antimeridian")
        if self.profile is Profile.EQUIRECTANGULAR:
            lat = y
        elif self.profile is Profile.CONFORMAL:
            lat = 2.0 * math.atan(math.exp(y / c)) - HALF_PI
        else:
            s = y * c
            if abs(s) > 1.0 + _IMAGE_EPS:
                raise OutOfImage(f"|y| = {abs(y)} exceeds the equal-area span {1.0 / c}")
            lat = math.asin(max(-1.0, min(1.0, s)))
        if abs(lat) > HALF_PI + _IMAGE_EPS:
            raise OutOfImage(f"y = {y} lies beyond the poles")
        return max(-HALF_PI, min(HALF_PI, lat)), lon


@dataclass(frozen=True)
class EquidistantConic:
    """Delisle's conic: ``x = rho sin(n lon)``, ``y = rho1 - rho cos(n lon)``
    with ``rho = rho1 + phi1 - lat``. Build ``params`` with
    :func:`foliamap.delisle.build_conic`."""

    params: "ConicParams"

    @property
    def apex(self) -> PlanePoint:
        return PlanePoint(0.0, self.params.rho1)

    def _rho(self, lat):
        return self.params.rho1 + self.params.phi1 - lat

    def domain_error(self, lat, lon):
        if self._rho(lat) <= 0.0:
            return "latitude must be below the apex latitude"
        return None

    def xy(self, lat, lon):
        n = self.params.n
        rho = self._rho(lat)
        return rho * math.sin(n * lon), self.params.rho1 - rho * math.cos(n * lon)

    def latlon(self, x, y):
        p = self.params
        dy = p.rho1 - y
        rho = math.hypot(x, dy)
        lon = math.atan2(x, dy) / p.n if rho > 0 else 0.0
        if abs(lon) > math.pi + _IMAGE_EPS:
            raise OutOfImage(f"plane angle about the apex exceeds n*pi (lon {lon})")
        lat = p.phi1 + p.rho1 - rho
        if abs(lat) > HALF_PI + _IMAGE_EPS:
            raise OutOfImage(f"distance from the apex maps to latitude {lat} beyond a pole")
        return max(-HALF_PI, min(HALF_PI, lat)), lon


ProjectionSpec = Union[Stereographic, Gnomonic, Cylindrical, EquidistantConic]


def in_domain(spec: ProjectionSpec, p: GeoPoint) -> bool:
    return spec.domain_error(p.lat, p.lon) is None


def forward(spec: ProjectionSpec, p: GeoPoint) -> PlanePoint:
    err = spec.domain_error(p.lat, p.lon)
    if err is not None:
        raise OutOfDomain(f"{type(spec).__name__}: {err}")
    return PlanePoint(*spec.xy(p.lat, p.lon))


def inverse(spec: ProjectionSpec, q: PlanePoint) -> GeoPoint:
    lat, lon = spec.latlon(q.x, q.y)
    return GeoPoint(lat, lon)
