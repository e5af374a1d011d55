"""Exception types shared across the package."""


class EqmapError(Exception):
    """Base class for domain errors raised by this package."""


class NoOneCutSolutionError(EqmapError):
    """Endpoint continuation exhausted its budget without reaching the target."""


class DegeneratePotentialError(EqmapError):
    """The endpoint system is singular at the continuation base point."""


class DegeneratePointError(EqmapError):
    """A formula prefactor vanished at the evaluation point."""


class OutsideOneCutError(EqmapError):
    """A log argument that must be positive in the one-cut regime was not."""


class SingularJetError(EqmapError):
    """Jet division, log or sqrt applied to an inadmissible constant term."""


class ContourGeometryError(EqmapError):
    """Evaluation point placed on the wrong side of a quadrature contour."""


class CensusSizeError(EqmapError):
    """Half-edge count exceeds the brute-force enumeration bound."""
