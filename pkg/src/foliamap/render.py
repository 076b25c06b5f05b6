"""Graticules, geodesic traces and window outlines as SVG or CSV.

Curves are sampled uniformly on the sphere and projected; samples outside
the projection's domain are dropped and the curve is split there, so a
polyline never contains a non-finite coordinate.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyPathSet
from .projections import PlanePoint, ProjectionSpec, forward, in_domain
from .sphere import GeoPoint, Region, geodesic_point

__all__ = [
    "GraticuleSpec",
    "Polyline",
    "PathSet",
    "SvgStyle",
    "graticule_paths",
    "geodesic_paths",
    "outline_paths",
    "project_curve",
    "emit_svg",
    "emit_csv",
]


@dataclass(frozen=True)
class GraticuleSpec:
    region: Region
    parallel_step: float
    meridian_step: float
    samples_per_curve: int = 256

    def __post_init__(self):
        if self.parallel_step <= 0 or self.meridian_step <= 0:
            raise ValueError("graticule steps must be positive")
        if self.samples_per_curve < 2:
            raise ValueError("samples_per_curve must be >= 2")


@dataclass(frozen=True)
class Polyline:
    label: str
    segment: int
    points: tuple[PlanePoint, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a polyline needs at least 2 points")

    @property
    def kind(self) -> str:
        return self.label.split(":", 1)[0]

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points])


@dataclass(frozen=True)
class PathSet:
    polylines: tuple[Polyline, ...] = ()

    def __len__(self):
        return len(self.polylines)

    def __add__(self, other: "PathSet") -> "PathSet":
        return PathSet(self.polylines + other.polylines)

    def with_label(self, prefix: str) -> list[Polyline]:
        return [p for p in self.polylines if p.label.startswith(prefix)]


def _fmt_label(kind: str, angle: float) -> str:
    return f"{kind}:{round(math.degrees(angle), 9):g}"


def project_curve(spec: ProjectionSpec, label: str, points: list[GeoPoint]) -> list[Polyline]:
    """Project ``points`` in order, splitting wherever a sample is unmappable."""
    runs: list[list[PlanePoint]] = [[]]
    for p in points:
        if in_domain(spec, p):
            runs[-1].append(forward(spec, p))
        elif runs[-1]:
            runs.append([])
    runs = [r for r in runs if len(r) >= 2]
    return [Polyline(label, i, tuple(r)) for i, r in enumerate(runs)]


def _steps(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def graticule_paths(spec: ProjectionSpec, g: GraticuleSpec) -> PathSet:
    """Images of the meridians and parallels of ``g.region``.

    Meridians come first (west to east), then parallels (south to north);
    lines start at the region's lower corner and repeat every step.
    """
    r = g.region
    n = g.samples_per_curve
    out: list[Polyline] = []
    lats = np.linspace(r.lat_min, r.lat_max, n)
    for lon in _steps(r.lon_min, r.lon_max, g.meridian_step):
        pts = [GeoPoint(float(lat), float(lon)) for lat in lats]
        out += project_curve(spec, _fmt_label("meridian", lon), pts)
    lons = np.linspace(r.lon_min, r.lon_max, n)
    for lat in _steps(r.lat_min, r.lat_max, g.parallel_step):
        if abs(lat) >= 0.5 * math.pi:
            continue  # a pole is a point, not a curve
        pts = [GeoPoint(float(lat), float(lon)) for lon in lons]
        out += project_curve(spec, _fmt_label("parallel", lat), pts)
    if not out:
        raise EmptyPathSet("no graticule curve meets the projection's domain")
    return PathSet(tuple(out))


def geodesic_paths(spec: ProjectionSpec, a: GeoPoint, b: GeoPoint, n: int = 256) -> PathSet:
    pts = [geodesic_point(a, b, float(t)) for t in np.linspace(0.0, 1.0, n)]
    return PathSet(tuple(project_curve(spec, "geodesic", pts)))


def outline_paths(spec: ProjectionSpec, region: Region, n: int = 256) -> PathSet:
    """Boundary of the lat/lon window, traced counter-clockwise from the SW corner."""
    r = region
    lats = np.linspace(r.lat_min, r.lat_max, n)
    lons = np.linspace(r.lon_min, r.lon_max, n)
    ring = (
        [(r.lat_min, lon) for lon in lons]
        + [(lat, r.lon_max) for lat in lats[1:]]
        + [(r.lat_max, lon) for lon in lons[-2::-1]]
        + [(lat, r.lon_min) for lat in lats[-2::-1]]
    )
    pts = [GeoPoint(float(a), float(b)) for a, b in ring]
    return PathSet(tuple(project_curve(spec, "outline", pts)))


@dataclass(frozen=True)
class SvgStyle:
    width_px: int = 800
    stroke: dict = field(
        default_factory=lambda: {
            "meridian": ("#1f4e79", 1.0),
            "parallel": ("#7a2e2e", 1.0),
            "geodesic": ("#2e7d32", 1.5),
            "outline": ("#000000", 1.5),
        }
    )
    labels: bool = False
    background: str | None = "#ffffff"


def _bbox(paths: PathSet):
    xy = np.vstack([p.as_array() for p in paths.polylines])
    return xy[:, 0].min(), xy[:, 0].max(), xy[:, 1].min(), xy[:, 1].max()


def _num(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def emit_svg(paths: PathSet, style: SvgStyle | None = None) -> str:
    """Render to an SVG 1.1 document, north up.

    The viewBox is the bounding box in plane units (y negated) widened by
    2% on every side; stroke widths are given in pixels and converted.
    """
    if not paths.polylines:
        raise EmptyPathSet("nothing to draw")
    style = style or SvgStyle()
    x0, x1, y0, y1 = _bbox(paths)
    w, h = x1 - x0, y1 - y0
    size = max(w, h) or 1.0
    w, h = (w or size * 1e-3), (h or size * 1e-3)
    mx, my = 0.02 * w, 0.02 * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    width_px = style.width_px
    height_px = max(1, int(round(width_px * vb[3] / vb[2])))
    px = vb[2] / width_px  # plane units per pixel

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width_px}" height="{height_px}" '
        f'viewBox="{_num(vb[0])} {_num(vb[1])} {_num(vb[2])} {_num(vb[3])}">',
    ]
    if style.background:
        out.append(
            f'<rect x="{_num(vb[0])}" y="{_num(vb[1])}" width="{_num(vb[2])}" '
            f'height="{_num(vb[3])}" fill="{style.background}"/>'
        )
    for line in paths.polylines:
        color, width = style.stroke.get(line.kind, ("#444444", 1.0))
        d = " ".join(
            f"{'M' if i == 0 else 'L'}{_num(p.x)},{_num(-p.y)}" for i, p in enumerate(line.points)
        )
        out.append(
            f'<path class="{line.kind}" d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{_num(width * px)}"/>'
        )
        if style.labels:
            p = line.points[0]
            out.append(
                f'<text x="{_num(p.x)}" y="{_num(-p.y)}" font-size="{_num(10 * px)}" '
                f'fill="{color}">{line.label.split(":", 1)[-1]}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_csv(paths: PathSet) -> str:
    """One row per vertex: label, segment_index, point_index, x, y (17 significant digits)."""
    if not paths.polylines:
        raise EmptyPathSet("nothing to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "segment_index", "point_index", "x", "y"])
    for line in paths.polylines:
        for i, p in enumerate(line.points):
            w.writerow([line.label, line.segment, i, f"{p.x:.17g}", f"{p.y:.17g}"])
    return buf.getvalue()
