"""Exact combinatorics of parabolics with a fixed Levi factor: twists,
nef-cone chambers, flop walks and Richardson orbits."""

from .cones import (
    ChamberComplex,
    PolyhedralCone,
    build_chamber_complex,
    locate,
    movable_union,
    nef_cone,
)
from .diagrams import (
    FlopLabel,
    MarkedDiagram,
    SingleMarkedClass,
    TwistKind,
    classify,
    flop_label,
    single_marked_subdiagram,
)
from .errors import ConfigurationError, InvariantViolation
from .flopwalk import TwistRecord, WalkTrace, central_fiber_summary, movable_walk_property, walk
from .normalizer import CosetRep, fundamental_domain_check, quotient_reps, verify_count
from .orbits import (
    FlagType,
    JordanType,
    codim2_neighbor,
    collapse,
    flag_type_of,
    orbit_dimension,
    richardson_jordan_type,
)
from .parabolics import (
    Parabolic,
    apply_weyl,
    conjugacy_classes,
    enumerate_S,
    marked_diagram_of,
    opposite,
    parabolic_for_diagram,
    standard_parabolic,
    twist,
)
from .rootsys import (
    CharacterVector,
    RootSystem,
    WeylElement,
    apply,
    build_root_system,
    minus_w0_vertex_permutation,
    pairing,
    weyl_to_standard,
)

__version__ = "0.1.0"
