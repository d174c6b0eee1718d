"""Exact desk-scale computations for densities, ideal limits and sparse sets."""

from .certificate import SparsenessCertificate, Verdict, dumps, loads, verify_certificate
from .classical import (
    Bounds,
    GapSet,
    GapUnion,
    complement_density_bounds,
    density,
    density_point_set,
    gap_density_bounds,
    one_sided_densities,
    window_ratio,
)
from .idensity import (
    IDensityEnclosure,
    PointDensity,
    RatioSequence,
    Rule,
    WindowFamily,
    classify_point_i_density,
    density_point_status,
    i_density_enclosure,
    ratio_sequence,
    validate_window_family,
)
from .indexsets import (
    AP,
    EMPTY,
    NATURALS,
    Finite,
    Ideal,
    IndexSet,
    Squares,
    asymptotic_density,
    filter_member,
    ideal_member,
    union_density_incl_excl,
)
from .sequences import (
    IncompatibleOverride,
    StepSequence,
    i_converges,
    i_liminf,
    i_limsup,
    seq_add,
    seq_dominates,
    seq_negate,
    seq_scale,
)
from .sets import (
    Interval,
    IntervalSet,
    PointClass,
    adjacency,
    complement_within,
    contains_point,
    difference,
    intersect,
    measure,
    normalize,
    symdiff,
    union,
)
from .sparse import (
    DepthError,
    Witness,
    i_sparse_falsify,
    reflect_left,
    sparse_certify_right,
    sparse_check,
    sparse_check_interval_set,
    sparse_interior,
)

__version__ = "0.1.0"
