"""Positive-fraction intersection of two-point hulls and weak epsilon-nets.

For a finite point set X and a symmetric hull S(x, y) of each pair, the
library finds and certifies points covered by a positive fraction of all
hulls (balls, lenses, ellipsoids, boxes), demonstrates that segments admit
no such point, and builds weak epsilon-nets for "thin hulls" with exact
clique-based certification at desk scale.
"""

from .geometry import (
    GENERATOR_KINDS,
    as_point,
    as_point_set,
    diameter,
    distance_matrix,
    euclidean_distance,
    generate_points,
    subset_diameter,
    validate_distance_matrix,
)
from .shapes import (
    BALL,
    BOX,
    SEGMENT,
    PairShape,
    TEstimate,
    cover_matrix,
    ellipsoid,
    estimate_t,
    format_shape,
    is_t_shape,
    lens,
    member,
    member_points,
    parse_shape,
)
from .depth import (
    CenterpointCertificate,
    DepthReport,
    TukeyDepth,
    centerpoint,
    colorful_ball_depth,
    pair_depth,
    radon_point,
    tukey_depth,
)
from .selection import (
    BoxCoverageScan,
    BoxSplit,
    DiameterSelection,
    SegmentDepthScan,
    box_deep_point,
    box_max_fraction,
    box_pair_depth_many,
    box_split,
    capture_radii,
    capture_radius,
    diameter_selection,
    segment_max_depth,
    tshape_deep_point,
)
from .nets import (
    NetResult,
    UncoveredGraph,
    lens_net,
    max_clique,
    subset_threshold,
    uncovered_graph,
    weak_net,
)
from .io import read_point_csv, write_point_csv

__version__ = "0.1.0"

__all__ = [
    "GENERATOR_KINDS",
    "as_point",
    "as_point_set",
    "diameter",
    "distance_matrix",
    "euclidean_distance",
    "generate_points",
    "subset_diameter",
    "validate_distance_matrix",
    "BALL",
    "BOX",
    "SEGMENT",
    "PairShape",
    "TEstimate",
    "cover_matrix",
    "ellipsoid",
    "estimate_t",
    "format_shape",
    "is_t_shape",
    "lens",
    "member",
    "member_points",
    "parse_shape",
    "CenterpointCertificate",
    "DepthReport",
    "TukeyDepth",
    "centerpoint",
    "colorful_ball_depth",
    "pair_depth",
    "radon_point",
    "tukey_depth",
    "BoxCoverageScan",
    "BoxSplit",
    "DiameterSelection",
    "SegmentDepthScan",
    "box_deep_point",
    "box_max_fraction",
    "box_pair_depth_many",
    "box_split",
    "capture_radii",
    "capture_radius",
    "diameter_selection",
    "segment_max_depth",
    "tshape_deep_point",
    "NetResult",
    "UncoveredGraph",
    "lens_net",
    "max_clique",
    "subset_threshold",
    "uncovered_graph",
    "weak_net",
    "read_point_csv",
    "write_point_csv",
]
