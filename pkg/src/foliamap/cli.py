"""Command-line front end.

Angles are degrees on the command line and in spec files; everything is
converted to radians once, on parse. Exit status is 0 on success, 1 when a
computation or validation fails (the message names the violated
condition) and 2 for usage errors.

Projection spec files are JSON objects with a ``type`` tag::

    {"type": "stereographic", "pole": "north"}
    {"type": "gnomonic", "tangent_lat": -90, "tangent_lon": 0}
    {"type": "cylindrical", "profile": "conformal", "ref_lat": 0}
    {"type": "delisle", "phi1": 47.5, "phi2": 62.5}
    {"type": "delisle", "south": 40, "north": 70}   # midpoint rule
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import delisle, distortion, render
from .errors import FoliamapError, SpecParseError
from .projections import (
    Cylindrical,
    EquidistantConic,
    Gnomonic,
    PlanePoint,
    Pole,
    Profile,
    ProjectionSpec,
    Stereographic,
    forward,
    inverse,
)
from .sphere import GeoPoint, Region

__all__ = ["parse_spec", "spec_to_dict", "run", "main"]

_FIELDS = {
    "stereographic": {"pole"},
    "gnomonic": {"tangent_lat", "tangent_lon"},
    "cylindrical": {"profile", "ref_lat"},
    "delisle": {"phi1", "phi2", "south", "north"},
}


def _angle(obj: dict, key: str, lo: float, hi: float, default=None) -> float:
    if key not in obj:
        if default is None:
            raise SpecParseError(f"missing field '{key}'")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SpecParseError(f"field '{key}' must be a finite number of degrees")
    if not lo <= v <= hi:
        raise SpecParseError(f"field '{key}' = {v} outside [{lo}, {hi}] degrees")
    return float(v)


def parse_spec(text: str) -> ProjectionSpec:
    """Parse and validate a JSON projection spec."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"malformed JSON: {e}") from None
    if not isinstance(obj, dict):
        raise SpecParseError("spec must be a JSON object")
    kind = obj.get("type")
    if kind not in _FIELDS:
        raise SpecParseError(f"field 'type' must be one of {sorted(_FIELDS)}, got {kind!r}")
    extra = set(obj) - _FIELDS[kind] - {"type"}
    if extra:
        raise SpecParseError(f"unknown field(s) for {kind}: {sorted(extra)}")

    if kind == "stereographic":
        pole = obj.get("pole", "north")
        if pole not in ("north", "south"):
            raise SpecParseError("field 'pole' must be 'north' or 'south'")
        return Stereographic(Pole(pole))
    if kind == "gnomonic":
        lat = _angle(obj, "tangent_lat", -90, 90)
        lon = _angle(obj, "tangent_lon", -360, 360, default=0.0)
        return Gnomonic(GeoPoint.from_degrees(lat, lon))
    if kind == "cylindrical":
        profile = obj.get("profile", "equirectangular")
        if profile not in {p.value for p in Profile}:
            raise SpecParseError(f"field 'profile' must be one of {[p.value for p in Profile]}")
        ref = _angle(obj, "ref_lat", -90, 90, default=0.0)
        if abs(ref) >= 90:
            raise SpecParseError("field 'ref_lat' must satisfy |ref_lat| < 90")
        return Cylindrical(Profile(profile), math.radians(ref))

    # delisle
    if "phi1" in obj or "phi2" in obj:
        if "south" in obj or "north" in obj:
            raise SpecParseError("give either phi1/phi2 or south/north, not both")
        p1 = _angle(obj, "phi1", -90, 90)
        p2 = _angle(obj, "phi2", -90, 90)
    else:
        s = _angle(obj, "south", -90, 90)
        n = _angle(obj, "north", -90, 90)
        if not s < n:
            raise SpecParseError("window ordering constraint violated: need south < north")
        p1, p2 = (math.degrees(v) for v in delisle.midpoint_standard_parallels(math.radians(s), math.radians(n)))
    if not p1 < p2:
        raise SpecParseError("standard parallel ordering constraint violated: need phi1 < phi2")
    if not 0 < p1 or not p2 < 90:
        raise SpecParseError("standard parallels must satisfy 0 < phi1 < phi2 < 90")
    return EquidistantConic(delisle.build_conic(math.radians(p1), math.radians(p2)))


def spec_to_dict(spec: ProjectionSpec) -> dict:
    """Canonical JSON encoding, the inverse of :func:`parse_spec`."""
    if isinstance(spec, Stereographic):
        return {"type": "stereographic", "pole": spec.projection_pole.value}
    if isinstance(spec, Gnomonic):
        lat, lon = spec.tangent_point.to_degrees()
        return {"type": "gnomonic", "tangent_lat": lat, "tangent_lon": lon}
    if isinstance(spec, Cylindrical):
        return {"type": "cylindrical", "profile": spec.profile.value, "ref_lat": math.degrees(spec.ref_lat)}
    p = spec.params
    return {"type": "delisle", "phi1": math.degrees(p.phi1), "phi2": math.degrees(p.phi2)}


# -- argument helpers ---------------------------------------------------------


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated numbers") from None
    if len(vals) != count or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"{what} must be {count} comma-separated numbers")
    return vals


def _region_arg(text: str) -> Region:
    vals = _floats(text, 4, "region (lat_min,lat_max,lon_min,lon_max)")
    try:
        return Region.from_degrees(*vals)
    except FoliamapError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _point_arg(text: str) -> GeoPoint:
    lat, lon = _floats(text, 2, "point (lat,lon)")
    try:
        return GeoPoint.from_degrees(lat, lon)
    except FoliamapError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _res_arg(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError("resolution must look like 50x50") from None
    if a < 2 or b < 2:
        raise argparse.ArgumentTypeError("resolution must be at least 2x2")
    return a, b


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


# flags whose values may start with '-' (negative coordinates)
_VALUE_FLAGS = {"--region", "--point", "--from", "--to", "--south", "--north"}


def _join_negative_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        negative = nxt is not None and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == ".")
        if tok in _VALUE_FLAGS and negative:
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foliamap", description="Map projections and their distortion.")
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_arg(p):
        p.add_argument("--spec", required=True, type=Path, help="JSON projection spec file")

    p = sub.add_parser("project", help="project points (or invert plane points)")
    spec_arg(p)
    p.add_argument("--point", action="append", default=[], help="LAT,LON in degrees (or X,Y with --inverse)")
    p.add_argument("--input", type=Path, help="CSV with lat_deg,lon_deg (or x,y with --inverse)")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--csv", type=Path)
    p.add_argument("--json", type=Path)

    p = sub.add_parser("graticule", help="draw meridians and parallels")
    spec_arg(p)
    p.add_argument("--region", required=True, type=_region_arg, help="LATMIN,LATMAX,LONMIN,LONMAX")
    p.add_argument("--step", type=_positive, default=10.0, help="degrees between lines")
    p.add_argument("--parallel-step", type=_positive)
    p.add_argument("--meridian-step", type=_positive)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--outline", action="store_true", help="also trace the region boundary")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--svg", type=Path)
    p.add_argument("--csv", type=Path)

    for name, helptext in (("distortion", "local metric over a grid"), ("defect", "perfect-map defect over a grid")):
        p = sub.add_parser(name, help=helptext)
        spec_arg(p)
        p.add_argument("--region", required=True, type=_region_arg)
        p.add_argument("--res", type=_res_arg, default=(50, 50), help="NLATxNLON")
        p.add_argument("--step", type=float, default=distortion.DEFAULT_STEP, help="finite-difference step (rad)")
        p.add_argument("--json", type=Path)
        if name == "distortion":
            p.add_argument("--csv", type=Path)
            p.add_argument("--tol", type=float, default=1e-5, help="classification tolerance")

    p = sub.add_parser("optimize", help="choose standard parallels for a latitude window")
    p.add_argument("--south", type=float, required=True)
    p.add_argument("--north", type=float, required=True)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--json", type=Path)

    p = sub.add_parser("geodesic", help="project a great-circle arc and measure its curvature")
    spec_arg(p)
    p.add_argument("--from", dest="start", required=True, type=_point_arg)
    p.add_argument("--to", dest="end", required=True, type=_point_arg)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--region", type=_region_arg, help="graticule drawn behind the arc in the SVG")
    p.add_argument("--step", type=_positive, default=10.0)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--json", type=Path)
    p.add_argument("--svg", type=Path)
    p.add_argument("--csv", type=Path)
    return parser


# -- output -------------------------------------------------------------------


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8", newline="")


def _load_spec(path: Path) -> ProjectionSpec:
    return parse_spec(path.read_text(encoding="utf-8"))


def _cmd_project(args) -> None:
    spec = _load_spec(args.spec)
    pairs = [_floats(t, 2, "point") for t in args.point]
    if args.input:
        with args.input.open(newline="") as fh:
            cols = ("x", "y") if args.inverse else ("lat_deg", "lon_deg")
            for row in csv.DictReader(fh):
                pairs.append([float(row[cols[0]]), float(row[cols[1]])])
    if not pairs:
        raise FoliamapError("no points given (use --point or --input)")
    rows = []
    for a, b in pairs:
        if args.inverse:
            g = inverse(spec, PlanePoint(a, b))
            lat, lon = g.to_degrees()
            rows.append({"x": a, "y": b, "lat_deg": lat, "lon_deg": lon})
        else:
            q = forward(spec, GeoPoint.from_degrees(a, b))
            rows.append({"lat_deg": a, "lon_deg": b, "x": q.x, "y": q.y})
    if args.json or not args.csv:
        _write(args.json, _dump_json({"spec": spec_to_dict(spec), "points": rows}))
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(rows[0]))
        for r in rows:
            w.writerow([f"{v:.17g}" for v in r.values()])
        _write(args.csv, buf.getvalue())


def _cmd_graticule(args) -> None:
    spec = _load_spec(args.spec)
    g = render.GraticuleSpec(
        args.region,
        math.radians(args.parallel_step or args.step),
        math.radians(args.meridian_step or args.step),
        args.samples,
    )
    paths = render.graticule_paths(spec, g)
    if args.outline:
        paths = paths + render.outline_paths(spec, args.region, args.samples)
    if args.svg:
        _write(args.svg, render.emit_svg(paths, render.SvgStyle(width_px=args.width, labels=args.labels)))
    if args.csv or not args.svg:
        _write(args.csv, render.emit_csv(paths))


def _cmd_distortion(args) -> None:
    spec = _load_spec(args.spec)
    grid = distortion.distortion_grid(spec, args.region, args.res, args.step)
    flags = distortion.classify(spec, args.region, args.res, args.tol, args.step)
    summary = {
        "spec": spec_to_dict(spec),
        "evaluated": len(grid.samples),
        "skipped": grid.skipped,
        "summary": grid.summary.as_dict(),
        "classification": {
            "tolerance": args.tol,
            "conformal": flags.conformal,
            "equal_area": flags.equal_area,
            "meridian_equidistant": flags.meridian_equidistant,
        },
    }
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lat_deg", "lon_deg", "h", "k", "theta_deg", "omega_deg", "areal_scale"])
        for m in grid.samples:
            lat, lon = m.at.to_degrees()
            vals = (lat, lon, m.h, m.k, math.degrees(m.theta), math.degrees(m.omega), m.s)
            w.writerow([f"{v:.17g}" for v in vals])
        _write(args.csv, buf.getvalue())
    if args.json or not args.csv:
        _write(args.json, _dump_json(summary))


def _cmd_defect(args) -> None:
    spec = _load_spec(args.spec)
    rep = distortion.perfect_defect(spec, args.region, args.res, args.step)
    _write(args.json, _dump_json({"spec": spec_to_dict(spec), **rep.as_dict()}))


def _cmd_optimize(args) -> None:
    res = delisle.optimize_standard_parallels(math.radians(args.south), math.radians(args.north), grid=args.grid)
    params = delisle.build_conic(res.midpoint_phi1, res.midpoint_phi2) if res.midpoint_phi1 > 0 else None
    out = {"window": {"south": args.south, "north": args.north}, **res.as_dict()}
    # the rule is linear, so applying it in degrees avoids a radian round trip
    out["midpoint"]["phi1"] = (3.0 * args.south + args.north) / 4.0
    out["midpoint"]["phi2"] = (args.south + 3.0 * args.north) / 4.0
    if params is not None:
        out["midpoint"].update(
            {
                "n": params.n,
                "rho1": params.rho1,
                "apex_latitude": math.degrees(delisle.apex_latitude(params)),
                "longitude_per_semicircle": math.degrees(delisle.longitude_per_semicircle(params)),
            }
        )
    _write(args.json, _dump_json(out))


def _cmd_geodesic(args) -> None:
    spec = _load_spec(args.spec)
    fit = delisle.fit_projected_geodesic(spec, args.start, args.end, args.samples)
    out = {
        "spec": spec_to_dict(spec),
        "from": list(args.start.to_degrees()),
        "to": list(args.end.to_degrees()),
        "samples": args.samples,
        **fit.as_dict(),
    }
    if args.json or not (args.svg or args.csv):
        _write(args.json, _dump_json(out))
    if args.svg or args.csv:
        paths = render.geodesic_paths(spec, args.start, args.end, args.samples)
        if args.region is not None:
            step = math.radians(args.step)
            paths = render.graticule_paths(spec, render.GraticuleSpec(args.region, step, step)) + paths
        if args.svg:
            _write(args.svg, render.emit_svg(paths, render.SvgStyle(width_px=args.width)))
        if args.csv:
            _write(args.csv, render.emit_csv(paths))


_COMMANDS = {
    "project": _cmd_project,
    "graticule": _cmd_graticule,
    "distortion": _cmd_distortion,
    "defect": _cmd_defect,
    "optimize": _cmd_optimize,
    "geodesic": _cmd_geodesic,
}


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        _COMMANDS[args.command](args)
    except (ValueError, KeyError) as e:  # FoliamapError is a ValueError
        print(f"foliamap {args.command}: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"foliamap {args.command}: error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
