"""Eight-vertex polygon pre-filter for exact 2D convex hulls."""

from ._backend import active_name as backend
from .compaction import (
    CompactionStrategy,
    OffsetVector,
    SegmentedOffsets,
    compact,
    compact_copy_if,
    compact_flagged,
    compact_scan_scatter,
    compact_sequential,
    exclusive_scan,
    segmented_scan,
)
from .datagen import (
    Distribution,
    DistributionSpec,
    gen_circle,
    gen_displaced_circle,
    gen_normal,
    generate,
)
from .errors import (
    CorrectnessFailure,
    DegeneratePolygon,
    EmptySet,
    FormatError,
    HullFilterError,
    InvalidSegmentSize,
    InvalidSpec,
    NonFiniteCoordinate,
    PrecisionMismatch,
    ResourceError,
)
from .filter import (
    FlagVector,
    OctagonFilter,
    SupportPoints,
    build_octagon,
    candidate_flags,
    find_corner_points,
    find_extreme_points,
    find_support_points,
    flag_candidates,
    point_strictly_inside,
)
from .geometry import (
    BoundingBox,
    Orientation,
    Point2,
    PointSet,
    Precision,
    bounding_box,
    manhattan_distance,
    orientation,
    orientation_signs,
)
from .hull import FilterStats, Hull, filtered_hull, gift_wrapping, hull_equal, monotone_chain
from .io import read_points, write_points

__version__ = "0.1.0"
