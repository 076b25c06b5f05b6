"""Line and circle fits for projected curves.

Used to check that graticule images are straight or circular and to
measure how far a projected geodesic strays from its chord.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LineFit:
    point: np.ndarray  # a point on the line (the centroid)
    direction: np.ndarray  # unit direction
    max_residual: float
    rms_residual: float

    def distance_to(self, q) -> float:
        d = np.asarray(q, dtype=float) - self.point
        return float(abs(d[0] * self.direction[1] - d[1] * self.direction[0]))


@dataclass(frozen=True)
class CircleFit:
    center: np.ndarray
    radius: float
    max_residual: float
    rms_residual: float


def _as_xy(points) -> np.ndarray:
    xy = np.asarray(points, dtype=float)
    if xy.ndim != 2 or xy.shape[1] != 2 or len(xy) < 2:
        raise ValueError("expected an (N, 2) array with N >= 2")
    return xy


def fit_line(points) -> LineFit:
    """Orthogonal (total) least-squares line through ``points``."""
    xy = _as_xy(points)
    centroid = xy.mean(axis=0)
    _, _, vt = np.linalg.svd(xy - centroid, full_matrices=False)
    direction = vt[0]
    d = xy - centroid
    res = np.abs(d[:, 0] * direction[1] - d[:, 1] * direction[0])
    return LineFit(centroid, direction, float(res.max()), float(np.sqrt(np.mean(res**2))))


def chord_residuals(points) -> tuple[float, np.ndarray]:
    """Chord length between the first and last point, and the perpendicular
    distance of every point from that chord."""
    xy = _as_xy(points)
    a, b = xy[0], xy[-1]
    chord = b - a
    length = float(np.hypot(*chord))
    if length == 0.0:
        raise ValueError("chord has zero length")
    d = xy - a
    return length, np.abs(d[:, 0] * chord[1] - d[:, 1] * chord[0]) / length


def fit_circle(points, refine: bool = True) -> CircleFit:
    """Least-squares circle.

    The algebraic (Kasa) solution is computed on centred, rescaled data, then
    polished with one Gauss-Newton step on the geometric residuals
    ``|p - c| - r``. The algebraic seed keeps nearly straight arcs, whose
    radius is huge, from sending the geometric fit astray.
    """
    xy = _as_xy(points)
    if len(xy) < 3:
        raise ValueError("need at least 3 points for a circle")
    shift = xy.mean(axis=0)
    scale = float(np.max(np.abs(xy - shift))) or 1.0
    u = (xy - shift) / scale

    # x^2 + y^2 + D x + E y + F = 0
    a = np.column_stack([u[:, 0], u[:, 1], np.ones(len(u))])
    b = -(u[:, 0] ** 2 + u[:, 1] ** 2)
    (dd, ee, ff), *_ = np.linalg.lstsq(a, b, rcond=None)
    c = np.array([-dd / 2.0, -ee / 2.0])
    r = float(np.sqrt(max(c @ c - ff, 0.0)))

    if refine:
        diff = u - c
        dist = np.hypot(diff[:, 0], diff[:, 1])
        if np.all(dist > 0):
            res = dist - r
            jac = np.column_stack([-diff[:, 0] / dist, -diff[:, 1] / dist, -np.ones(len(u))])
            step, *_ = np.linalg.lstsq(jac, -res, rcond=None)
            c_new = c + step[:2]
            r_new = r + step[2]
            dn = np.hypot(*(u - c_new).T)
            if r_new > 0 and np.sum((dn - r_new) ** 2) <= np.sum(res**2):
                c, r = c_new, float(r_new)

    center = c * scale + shift
    radius = r * scale
    res = np.abs(np.hypot(*(xy - center).T) - radius)
    return CircleFit(center, radius, float(res.max()), float(np.sqrt(np.mean(res**2))))
