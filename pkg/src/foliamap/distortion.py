"""Local metric analysis of projections by finite differences.

At a point the projection is differentiated along the meridian and along
the parallel. The two difference vectors give the meridian scale ``h``, the
parallel scale ``k`` (per unit of true arc length on the sphere, hence the
division by ``cos(lat)``), the angle ``theta`` between the images of the
two foliations, Tissot's maximum angular distortion ``omega`` and the areal
scale ``s = h k sin(theta)``.

A map would be *perfect* at a point if ``h = k = 1`` and ``theta = pi/2``.
:func:`perfect_defect` reports the worst violation of those three
conditions over a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyGrid, NearPole, OutOfDomain
from .projections import ProjectionSpec
from .sphere import GeoPoint, Region, _geo, _vec

__all__ = [
    "DEFAULT_STEP",
    "MetricSample",
    "GridSummary",
    "GridReport",
    "DefectReport",
    "ClassFlags",
    "local_metric",
    "distortion_grid",
    "perfect_defect",
    "classify",
    "linear_scale",
    "scale_ratio",
]

DEFAULT_STEP = 1e-5
_POLE_COS = 1e-6


@dataclass(frozen=True)
class MetricSample:
    at: GeoPoint
    h: float
    k: float
    theta: float
    omega: float
    s: float

    def residuals(self) -> tuple[float, float, float]:
        """``(|h-1|, |k-1|, |cos theta|)``, the three perfect-map residuals."""
        return abs(self.h - 1.0), abs(self.k - 1.0), abs(math.cos(self.theta))


def _xy(spec: ProjectionSpec, lat: float, lon: float) -> np.ndarray:
    err = spec.domain_error(lat, lon)
    if err is not None:
        raise OutOfDomain(f"finite-difference stencil leaves the domain: {err}")
    return np.array(spec.xy(lat, lon))


def local_metric(spec: ProjectionSpec, p: GeoPoint, step: float = DEFAULT_STEP) -> MetricSample:
    if not 0.0 < step <= 1e-3:
        raise ValueError("step must lie in (0, 1e-3]")
    coslat = math.cos(p.lat)
    if coslat < _POLE_COS or abs(p.lat) + step > 0.5 * math.pi:
        raise NearPole("both foliations are singular at the poles")
    lat, lon = p.lat, p.lon
    d_lat = (_xy(spec, lat + step, lon) - _xy(spec, lat - step, lon)) / (2.0 * step)
    d_lon = (_xy(spec, lat, lon + step) - _xy(spec, lat, lon - step)) / (2.0 * step * coslat)

    h = math.hypot(*d_lat)
    k = math.hypot(*d_lon)
    if h == 0.0 or k == 0.0:
        raise OutOfDomain("projection is singular at this point")
    cross = float(d_lat[0] * d_lon[1] - d_lat[1] * d_lon[0])
    dot = float(d_lat @ d_lon)
    theta = math.atan2(abs(cross), dot)
    area = abs(cross)

    # singular values s1 >= s2 of the local map: (s1 -+ s2)^2 = h^2 + k^2 -+ 2 |det|.
    # (s1 - s2)^2 is rewritten to avoid cancellation when the map is nearly conformal.
    sin_t = area / (h * k)
    one_minus_sin = (dot / (h * k)) ** 2 / (1.0 + sin_t)
    diff = math.sqrt(max((h - k) ** 2 + 2.0 * h * k * one_minus_sin, 0.0))
    total = math.sqrt(h * h + k * k + 2.0 * area)
    omega = 2.0 * math.asin(min(1.0, diff / total))
    return MetricSample(p, h, k, theta, omega, area)


@dataclass(frozen=True)
class Extremum:
    value: float
    at: GeoPoint


@dataclass(frozen=True)
class GridSummary:
    h: tuple[Extremum, Extremum]
    k: tuple[Extremum, Extremum]
    omega: tuple[Extremum, Extremum]
    s: tuple[Extremum, Extremum]

    def as_dict(self) -> dict:
        out = {}
        for name in ("h", "k", "omega", "s"):
            lo, hi = getattr(self, name)
            out[name] = {
                "min": lo.value,
                "min_at": list(lo.at.to_degrees()),
                "max": hi.value,
                "max_at": list(hi.at.to_degrees()),
            }
        return out


@dataclass(frozen=True)
class GridReport:
    samples: list[MetricSample]
    skipped: int
    summary: GridSummary = field(repr=False)


def grid_points(region: Region, res: tuple[int, int]) -> list[GeoPoint]:
    """Row-major grid: latitude rows from south to north, longitudes west to east."""
    nlat, nlon = res
    if nlat < 2 or nlon < 2:
        raise ValueError("grid resolution must be at least 2x2")
    lats = np.linspace(region.lat_min, region.lat_max, nlat)
    lons = np.linspace(region.lon_min, region.lon_max, nlon)
    return [GeoPoint(float(a), float(b)) for a in lats for b in lons]


def _extrema(samples: list[MetricSample], attr: str) -> tuple[Extremum, Extremum]:
    lo = hi = samples[0]
    for m in samples[1:]:
        v = getattr(m, attr)
        if v < getattr(lo, attr):
            lo = m
        if v > getattr(hi, attr):
            hi = m
    return Extremum(getattr(lo, attr), lo.at), Extremum(getattr(hi, attr), hi.at)


def distortion_grid(
    spec: ProjectionSpec,
    region: Region,
    res: tuple[int, int],
    step: float = DEFAULT_STEP,
) -> GridReport:
    """Sample :func:`local_metric` over a lat/lon grid.

    Points where the metric cannot be evaluated (outside the domain or at a
    pole) are skipped and counted. Ties in the summary go to the first
    sample in row-major order.
    """
    samples = []
    skipped = 0
    for p in grid_points(region, res):
        try:
            samples.append(local_metric(spec, p, step))
        except (OutOfDomain, NearPole):
            skipped += 1
    if not samples:
        raise EmptyGrid("no grid point lies in the projection's domain")
    summary = GridSummary(*(_extrema(samples, a) for a in ("h", "k", "omega", "s")))
    return GridReport(samples, skipped, summary)


@dataclass(frozen=True)
class DefectReport:
    defect: float
    argmax: GeoPoint
    residuals: tuple[float, float, float]
    evaluated: int
    skipped: int

    def as_dict(self) -> dict:
        lat, lon = self.argmax.to_degrees()
        dh, dk, dc = self.residuals
        return {
            "defect": self.defect,
            "argmax": {"lat_deg": lat, "lon_deg": lon},
            "residuals": {"meridian_scale": dh, "parallel_scale": dk, "cos_theta": dc},
            "evaluated": self.evaluated,
            "skipped": self.skipped,
        }


def perfect_defect(
    spec: ProjectionSpec,
    region: Region,
    res: tuple[int, int],
    step: float = DEFAULT_STEP,
) -> DefectReport:
    grid = distortion_grid(spec, region, res, step)
    best = None
    best_val = -1.0
    for m in grid.samples:
        v = max(m.residuals())
        if v > best_val:
            best, best_val = m, v
    return DefectReport(best_val, best.at, best.residuals(), len(grid.samples), grid.skipped)


@dataclass(frozen=True)
class ClassFlags:
    conformal: bool
    equal_area: bool
    meridian_equidistant: bool
    max_omega: float
    max_areal_error: float
    max_meridian_error: float


def classify(
    spec: ProjectionSpec,
    region: Region,
    res: tuple[int, int],
    tol: float,
    step: float = DEFAULT_STEP,
) -> ClassFlags:
    """Which of the three classic requirements (conformal, equal-area,
    equidistant along meridians) does ``spec`` meet on ``region``?"""
    grid = distortion_grid(spec, region, res, step)
    w = max(m.omega for m in grid.samples)
    a = max(abs(m.s - 1.0) for m in grid.samples)
    e = max(abs(m.h - 1.0) for m in grid.samples)
    return ClassFlags(w < tol, a < tol, e < tol, w, a, e)


def _project_vec(spec: ProjectionSpec, v: np.ndarray) -> np.ndarray:
    q = _geo(v)
    return _xy(spec, q.lat, q.lon)


def linear_scale(spec: ProjectionSpec, p: GeoPoint, toward: GeoPoint, step: float = 1e-3) -> float:
    """Length magnification at ``p`` in the direction of the great circle to ``toward``.

    Works at the poles, where :func:`local_metric` does not. Central
    differences at ``step`` and ``step/2`` are combined by Richardson
    extrapolation, leaving an O(step^4) error.
    """
    u, w = _vec(p), _vec(toward)
    axis = np.cross(u, w)
    norm = float(np.linalg.norm(axis))
    if norm < 1e-15:
        raise ValueError("direction is undefined for equal or antipodal points")
    t = np.cross(axis / norm, u)

    def central(s):
        a = _project_vec(spec, math.cos(s) * u + math.sin(s) * t)
        b = _project_vec(spec, math.cos(s) * u - math.sin(s) * t)
        return float(np.hypot(*(a - b))) / (2.0 * s)

    return (4.0 * central(step / 2.0) - central(step)) / 3.0


def scale_ratio(spec: ProjectionSpec, center: GeoPoint, p: GeoPoint, step: float = 1e-3) -> float:
    """Radial linear scale at ``p`` divided by the scale at ``center``.

    For a conformal projection the scale is the same in every direction, so
    this is the factor by which small shapes near ``p`` are enlarged
    relative to shapes near ``center``.
    """
    return linear_scale(spec, p, center, step) / linear_scale(spec, center, p, step)
