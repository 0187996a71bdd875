"""Numerical geometry of the two-sheeted oblate-spheroidal wormhole 3-space."""

__version__ = "0.1.0"

from .atlas import (
    ChartPoint,
    Region,
    Sheet,
    SheetPoint,
    classify,
    from_cartesian,
    jacobian,
    to_cartesian,
)
from .curvature import (
    ConePointProbe,
    CurvatureReport,
    christoffels_at,
    circle_probe,
    curvature_report,
    gauss_bonnet_deficit,
    gauss_curvature_meridian,
    loop_deficit,
    riemann_at,
)
from .errors import (
    DegenerateMetric,
    DomainError,
    FocalHit,
    NoConvergence,
    SingularApproach,
    SingularPoint,
    StepFailure,
)
from .geodesics import (
    CurveTrace,
    GeodesicState,
    conserved_quantities,
    geodesic_rhs,
    integrate_geodesic,
    launch_from_cartesian,
    straight_line_oracle,
)
from .loops import circle_loop, square_loop
from .metric import (
    HyperboloidMetric,
    MeridianMetric,
    WormholeMetric,
    hyperboloid_limit_residual,
    hyperboloid_metric_at,
    metric_at,
    metric_det,
)
from .tensors import Christoffel3, Mat3Sym, Riemann3, fd_derivative, mat3_inverse
from .transport import TransportFrame, parallel_transport
