"""Exception types raised by the geometry routines."""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeometryError, ValueError):
    """Arguments outside the documented parameter domain."""


class DegenerateMetric(GeometryError):
    """Metric determinant below the inversion threshold."""

    def __init__(self, det, message=None):
        self.det = det
        super().__init__(message or f"degenerate metric, det = {det!r}")


class SingularPoint(GeometryError):
    """Quantity requested at a point of the singular set (focal circle or axis)."""

    def __init__(self, point, region, message=None):
        self.point = point
        self.region = region
        super().__init__(message or f"{point} lies in singular region {region.name}")


class NoConvergence(GeometryError):
    """Inverse coordinate map failed to reach its residual target."""


class SingularApproach(GeometryError):
    """Integration ran into the neighbourhood of the focal circle."""


class StepFailure(GeometryError):
    """Adaptive step size underflowed."""


class FocalHit(GeometryError):
    """Straight line grazes or hits the focal circle."""
