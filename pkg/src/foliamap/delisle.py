"""Delisle's equidistant conic projection.

The map is fixed by four requirements: meridians are straight lines,
distances along meridians are true, parallels cross meridians at right
angles, and at two chosen *standard parallels* the ratio of a degree of
longitude to a degree of latitude is the true one. With distances along the
meridians true, parallels are circles about a common apex whose radii
decrease linearly with latitude, ``rho(lat) = rho1 + phi1 - lat``. The
true ratio at ``phi1`` and ``phi2`` then pins the cone constant to

    n = (cos phi1 - cos phi2) / (phi2 - phi1),    rho1 = cos(phi1) / n.

Everywhere else the parallel scale ``k = n rho / cos(lat)`` differs from 1.
Delisle's rule places the standard parallels a quarter of the way in from
each edge of the latitude window; :func:`optimize_standard_parallels`
searches for the pair that truly minimises ``max |k - 1|`` and reports how
the rule compares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadParallels, BadWindow, BeyondApex, DegenerateArc
from .fitting import chord_residuals, fit_circle, fit_line
from .projections import EquidistantConic, PlanePoint, ProjectionSpec, forward
from .sphere import HALF_PI, GeoPoint, Region, geodesic_point, sample_meridian

__all__ = [
    "ConicParams",
    "Deviation",
    "OptimizerResult",
    "ArcFit",
    "midpoint_standard_parallels",
    "build_conic",
    "conic_projection",
    "parallel_scale",
    "max_deviation",
    "optimize_standard_parallels",
    "apex_latitude",
    "parallel_angular_span",
    "longitude_per_semicircle",
    "fit_projected_geodesic",
    "geodesic_flatness",
    "check_properties",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _cone_constant(phi1, phi2):
    # (cos a - cos b) / (b - a) written without cancellation for close parallels
    half = 0.5 * (phi2 - phi1)
    sinc = np.where(half == 0.0, 1.0, np.sin(half) / np.where(half == 0.0, 1.0, half))
    return np.sin(0.5 * (phi1 + phi2)) * sinc


@dataclass(frozen=True)
class ConicParams:
    phi1: float
    phi2: float
    n: float
    rho1: float

    @property
    def apex_latitude(self) -> float:
        return self.phi1 + self.rho1

    def rho(self, phi: float) -> float:
        return self.rho1 + self.phi1 - phi


def midpoint_standard_parallels(phiS: float, phiN: float) -> tuple[float, float]:
    """Standard parallels a quarter of the window in from each edge.

    Each is halfway between an edge of the window and its central parallel.
    """
    if not (-HALF_PI < phiS < phiN < HALF_PI):
        raise BadWindow("need -pi/2 < phiS < phiN < pi/2")
    return (3.0 * phiS + phiN) / 4.0, (phiS + 3.0 * phiN) / 4.0


def build_conic(phi1: float, phi2: float) -> ConicParams:
    if not 0.0 < phi1:
        raise BadParallels("phi1 must be > 0 (northern secant conic)")
    if not phi1 < phi2:
        raise BadParallels("standard parallels must satisfy phi1 < phi2")
    if not phi2 < HALF_PI:
        raise BadParallels("phi2 must be < pi/2")
    n = float(_cone_constant(phi1, phi2))
    return ConicParams(phi1, phi2, n, math.cos(phi1) / n)


def conic_projection(phi1: float, phi2: float) -> EquidistantConic:
    return EquidistantConic(build_conic(phi1, phi2))


def parallel_scale(params: ConicParams, phi: float) -> float:
    rho = params.rho(phi)
    if rho <= 0.0:
        raise BeyondApex(f"latitude {phi} is at or beyond the apex ({params.apex_latitude})")
    c = math.cos(phi)
    if c <= 0.0:
        return math.inf
    return params.n * rho / c


def _scale_profile(phi1, phi2, phi):
    """Parallel scale for standard parallels (phi1, phi2), broadcasting.

    Written as ``(cos phi1 + n (phi1 - phi)) / cos phi`` so it stays finite
    when n -> 0 (windows symmetric about the equator)."""
    n = _cone_constant(phi1, phi2)
    return (np.cos(phi1) + n * (phi1 - phi)) / np.cos(phi)


def _max_abs_deviation(phi1, phi2, phiS, phiN, samples=257, iters=48):
    """Vectorised ``max |k - 1|`` over [phiS, phiN] for arrays of (phi1, phi2).

    Dense sampling locates the worst sample, then golden-section search on
    the neighbouring bracket refines it. Returns (value, argmax_phi).
    """
    phi1 = np.atleast_1d(np.asarray(phi1, dtype=float))
    phi2 = np.atleast_1d(np.asarray(phi2, dtype=float))
    grid = np.linspace(phiS, phiN, samples)
    dev = np.abs(_scale_profile(phi1[:, None], phi2[:, None], grid[None, :]) - 1.0)
    idx = np.argmax(dev, axis=1)
    best = dev[np.arange(len(idx)), idx]
    best_phi = grid[idx]

    lo = grid[np.maximum(idx - 1, 0)]
    hi = grid[np.minimum(idx + 1, samples - 1)]

    def f(x):
        return np.abs(_scale_profile(phi1, phi2, x) - 1.0)

    a, b = lo.copy(), hi.copy()
    for _ in range(iters):
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        left = f(c) > f(d)  # maximum lies in [a, d]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    mid = 0.5 * (a + b)
    fm = f(mid)
    better = fm > best
    return np.where(better, fm, best), np.where(better, mid, best_phi)


@dataclass(frozen=True)
class Deviation:
    value: float
    argmax_phi: float


def max_deviation(params: ConicParams, phiS: float, phiN: float, samples: int = 4097) -> Deviation:
    """Largest ``|k - 1|`` over the latitude window [phiS, phiN]."""
    if not phiS <= phiN:
        raise BadWindow("need phiS <= phiN")
    if phiS <= -HALF_PI or phiN >= min(HALF_PI, params.apex_latitude):
        raise BadWindow("window must stay inside the open latitude range below the apex")
    if phiS == phiN:
        return Deviation(abs(parallel_scale(params, phiS) - 1.0), phiS)
    v, at = _max_abs_deviation(params.phi1, params.phi2, phiS, phiN, samples=samples)
    return Deviation(float(v[0]), float(at[0]))


@dataclass(frozen=True)
class OptimizerResult:
    phi1_opt: float
    phi2_opt: float
    minimax_deviation: float
    midpoint_phi1: float
    midpoint_phi2: float
    midpoint_deviation: float
    improvement_ratio: float

    def as_dict(self) -> dict:
        return {
            "midpoint": {
                "phi1": math.degrees(self.midpoint_phi1),
                "phi2": math.degrees(self.midpoint_phi2),
                "max_deviation": self.midpoint_deviation,
            },
            "optimizer": {
                "phi1": math.degrees(self.phi1_opt),
                "phi2": math.degrees(self.phi2_opt),
                "minimax_deviation": self.minimax_deviation,
            },
            "improvement_ratio": self.improvement_ratio,
        }


def _objective(phiS, phiN):
    def f(p1, p2):
        v, _ = _max_abs_deviation(p1, p2, phiS, phiN)
        return float(v[0])

    return f


def _golden_min(f, a, b, tol):
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimize_standard_parallels(
    phiS: float, phiN: float, grid: int = 200, tol: float = 1e-8, max_sweeps: int = 60
) -> OptimizerResult:
    """Minimise ``max |k - 1|`` over the window by choice of standard parallels.

    A ``grid x grid`` sweep over phiS < phi1 < phi2 < phiN picks a start
    (first minimum in row-major order wins ties); coordinate-wise
    golden-section search then refines it. The midpoint-rule pair is scored
    with the same objective.
    """
    m1, m2 = midpoint_standard_parallels(phiS, phiN)
    if grid < 2:
        raise ValueError("grid must be >= 2")
    nodes = np.linspace(phiS, phiN, grid + 2)[1:-1]
    i, j = np.triu_indices(grid, k=1)
    p1, p2 = nodes[i], nodes[j]
    values = np.empty(len(p1))
    chunk = 2048
    for start in range(0, len(p1), chunk):
        sl = slice(start, start + chunk)
        values[sl], _ = _max_abs_deviation(p1[sl], p2[sl], phiS, phiN)
    best = int(np.argmin(values))
    x1, x2, fx = float(p1[best]), float(p2[best]), float(values[best])

    f = _objective(phiS, phiN)
    spacing = float(nodes[1] - nodes[0]) if grid > 1 else (phiN - phiS) / 2
    for _ in range(max_sweeps):
        old = (x1, x2)
        a1, b1 = max(phiS, x1 - spacing), min(x2, x1 + spacing)
        y1, fy = _golden_min(lambda t: f(t, x2), a1, b1, tol)
        if fy < fx:
            x1, fx = y1, fy
        a2, b2 = max(x1, x2 - spacing), min(phiN, x2 + spacing)
        y2, fy = _golden_min(lambda t: f(x1, t), a2, b2, tol)
        if fy < fx:
            x2, fx = y2, fy
        if abs(x1 - old[0]) < tol and abs(x2 - old[1]) < tol:
            break

    mid_dev = f(m1, m2)
    if mid_dev < fx:
        x1, x2, fx = m1, m2, mid_dev
    ratio = mid_dev / fx if fx > 0 else math.inf
    return OptimizerResult(x1, x2, fx, m1, m2, mid_dev, ratio)


def apex_latitude(params: ConicParams) -> float:
    """Latitude coordinate at which ``rho`` would vanish: where the meridians meet."""
    return params.apex_latitude


def parallel_angular_span(params: ConicParams, dlon: float) -> float:
    """Plane angle at the apex subtended by ``dlon`` of longitude."""
    return params.n * dlon


def longitude_per_semicircle(params: ConicParams) -> float:
    """Longitude carried by a half-turn (pi of plane angle) about the apex."""
    return math.pi / params.n


@dataclass(frozen=True)
class ArcFit:
    chord: float
    max_line_residual: float
    circle_center: Optional[PlanePoint]
    circle_radius: float
    circle_rms_residual: float

    @property
    def sagitta_ratio(self) -> float:
        return self.max_line_residual / self.chord

    def as_dict(self) -> dict:
        straight = self.circle_center is None
        return {
            "chord": self.chord,
            "sagitta": self.max_line_residual,
            "sagitta_over_chord": self.sagitta_ratio,
            "straight": straight,
            "circle_center": None if straight else [self.circle_center.x, self.circle_center.y],
            "circle_radius": None if straight else self.circle_radius,
            "circle_rms_residual": self.circle_rms_residual,
        }


def sample_geodesic(a: GeoPoint, b: GeoPoint, nsamples: int) -> list[GeoPoint]:
    return [geodesic_point(a, b, float(t)) for t in np.linspace(0.0, 1.0, nsamples)]


def fit_projected_geodesic(spec: ProjectionSpec, a: GeoPoint, b: GeoPoint, nsamples: int = 1000) -> ArcFit:
    """Project the minor great-circle arc a -> b and measure its curvature.

    The sagitta is the largest distance of the image from the straight
    chord between the projected endpoints. When the image is straight to
    rounding (sagitta below 1e-12 of the chord) no circle is fitted and the
    radius is reported as infinite.
    """
    if nsamples < 16:
        raise ValueError("nsamples must be >= 16")
    if a == b:
        raise DegenerateArc("endpoints coincide")
    pts = np.array([[q.x, q.y] for q in (forward(spec, p) for p in sample_geodesic(a, b, nsamples))])
    chord, res = chord_residuals(pts)
    sagitta = float(res.max())
    if sagitta <= 1e-12 * chord:
        return ArcFit(chord, sagitta, None, math.inf, float(np.sqrt(np.mean(res**2))))
    circ = fit_circle(pts)
    return ArcFit(chord, sagitta, PlanePoint(*map(float, circ.center)), circ.radius, circ.rms_residual)


def geodesic_flatness(params: ConicParams, a: GeoPoint, b: GeoPoint, nsamples: int = 1000) -> ArcFit:
    return fit_projected_geodesic(EquidistantConic(params), a, b, nsamples)


def check_properties(params: ConicParams, region: Region, samples: int = 256) -> dict:
    """Residuals of the four defining properties over ``region``.

    ``meridian_line_residual``: worst line-fit residual of a projected
    meridian; ``meridian_scale_error``: worst ``|h - 1|``;
    ``graticule_angle_error``: worst ``|theta - pi/2|``;
    ``standard_parallel_scale_error``: worst ``|k - 1|`` on phi1 and phi2.
    """
    from .distortion import distortion_grid  # distortion imports projections only

    spec = EquidistantConic(params)
    line_res = 0.0
    for lon in np.linspace(region.lon_min, region.lon_max, 7):
        pts = [forward(spec, p) for p in sample_meridian(float(lon), (region.lat_min, region.lat_max), samples)]
        line_res = max(line_res, fit_line([[q.x, q.y] for q in pts]).max_residual)
    grid = distortion_grid(spec, region, (9, 9))
    return {
        "meridian_line_residual": line_res,
        "meridian_scale_error": max(abs(m.h - 1.0) for m in grid.samples),
        "graticule_angle_error": max(abs(m.theta - HALF_PI) for m in grid.samples),
        "standard_parallel_scale_error": max(
            abs(parallel_scale(params, params.phi1) - 1.0),
            abs(parallel_scale(params, params.phi2) - 1.0),
        ),
    }
