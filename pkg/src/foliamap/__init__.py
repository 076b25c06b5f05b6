"""Map projections of the sphere, judged by what they do to meridians and parallels."""

from .delisle import (
    ConicParams,
    build_conic,
    conic_projection,
    midpoint_standard_parallels,
    optimize_standard_parallels,
)
from .distortion import local_metric, perfect_defect
from .projections import (
    Cylindrical,
    EquidistantConic,
    Gnomonic,
    PlanePoint,
    Pole,
    Profile,
    Stereographic,
    forward,
    in_domain,
    inverse,
)
from .sphere import GeoPoint, Region

__version__ = "0.1.0"
