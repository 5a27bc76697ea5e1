"""Classical and generalized centers of n-simplices.

Centers are computed in barycentric coordinates from edge lengths alone:
classical centers, generalized Apollonian spheres with their isodynamic
points, isogonic points (equiareal antipedal simplices) found by a
pedal-displacement fixed-point search, and the Fermat-Torricelli point via
two Weiszfeld-type iterations.
"""

from .apollonian import (
    ApollonianSphere,
    IsodynamicResult,
    YiuVerdict,
    apollonian_sphere,
    collinear_cross_ratio,
    isodynamic_points,
    membership_residual,
    restrict_to_facet,
    sphere_family,
    yiu_triangle_test,
)
from .barycentric import (
    BarycentricPoint,
    EdgeLengthTable,
    Hyperplane,
    SimplexModel,
    Sphere,
    barycentric_square,
    bary_to_cart,
    cart_to_bary,
    cayley_menger_det,
    circumcenter_cart,
    circumsphere,
    classical_centers,
    embed_from_edge_lengths,
    facet_volumes,
    facet_volumes_of_points,
    sigma_polar_plane,
    simplex_volume,
    squared_distance,
    squared_volume_from_distances,
    volume_from_distances,
)
from .errors import (
    AtInfinity,
    AtVertex,
    AxisUndefined,
    CenterAtVertex,
    Degenerate,
    DegeneratePedalEncountered,
    MaxIterationsExceeded,
    NotATriangle,
    NotEmbeddable,
    OnSideplane,
    ParallelLine,
    PointAtInfinity,
    SimplexError,
    UnboundedAntipedal,
    ZeroCoordinate,
)
from .fermat import (
    IterationTrace,
    fermat_point,
    total_distance,
    weiszfeld_step_q,
    weiszfeld_step_r,
    z_correspondent,
)
from .isogonic import (
    IsogonicCatalog,
    SearchTrace,
    default_seeds,
    enumerate_isogonic,
    is_isogonic,
    isogonal_conjugate,
    pedal_equiareal_iteration,
    triad_angle_check,
)
from .pedal import (
    PedalResult,
    antipedal_simplex,
    equiareal_deviation,
    inversive_image,
    pedal_simplex,
    polar_simplex,
)

__version__ = "0.1.0"

__all__ = [
    "ApollonianSphere", "IsodynamicResult", "YiuVerdict", "apollonian_sphere",
    "collinear_cross_ratio", "isodynamic_points", "membership_residual",
    "restrict_to_facet", "sphere_family", "yiu_triangle_test",
    "BarycentricPoint", "EdgeLengthTable", "Hyperplane", "SimplexModel", "Sphere",
    "barycentric_square", "bary_to_cart", "cart_to_bary", "cayley_menger_det",
    "circumcenter_cart", "circumsphere", "classical_centers",
    "embed_from_edge_lengths", "facet_volumes", "facet_volumes_of_points",
    "sigma_polar_plane", "simplex_volume", "squared_distance",
    "squared_volume_from_distances", "volume_from_distances",
    "AtInfinity", "AtVertex", "AxisUndefined", "CenterAtVertex", "Degenerate",
    "DegeneratePedalEncountered", "MaxIterationsExceeded", "NotATriangle",
    "NotEmbeddable", "OnSideplane", "ParallelLine", "PointAtInfinity",
    "SimplexError", "UnboundedAntipedal", "ZeroCoordinate",
    "IterationTrace", "fermat_point", "total_distance", "weiszfeld_step_q",
    "weiszfeld_step_r", "z_correspondent",
    "IsogonicCatalog", "SearchTrace", "default_seeds", "enumerate_isogonic",
    "is_isogonic", "isogonal_conjugate", "pedal_equiareal_iteration",
    "triad_angle_check",
    "PedalResult", "antipedal_simplex", "equiareal_deviation", "inversive_image",
    "pedal_simplex", "polar_simplex",
    "__version__",
]
