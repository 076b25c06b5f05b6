"""Exception types raised by foliamap.

Every error derives from :class:`FoliamapError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one thing.
"""


class FoliamapError(ValueError):
    pass


class NonUnitVector(FoliamapError):
    pass


class DegenerateArc(FoliamapError):
    pass


class DegenerateTriangle(FoliamapError):
    pass


class BadSampleCount(FoliamapError):
    pass


class PoleParallel(FoliamapError):
    pass


class BadRegion(FoliamapError):
    pass


class OutOfDomain(FoliamapError):
    pass


class OutOfImage(FoliamapError):
    pass


class NearPole(FoliamapError):
    pass


class EmptyGrid(FoliamapError):
    pass


class BadWindow(FoliamapError):
    pass


class BadParallels(FoliamapError):
    pass


class BeyondApex(FoliamapError):
    pass


class EmptyPathSet(FoliamapError):
    pass


class SpecParseError(FoliamapError):
    pass
