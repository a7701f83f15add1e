"""Exact tools for packings and tilings of R^d by translates of the unit cube [0,1)^d."""

from .chessboard import Decomposition, chessboard_decompose, translation_classes
from .errors import (
    AlreadyMember,
    CubeTileError,
    HypothesisViolated,
    Inconsistent,
    NotCovered,
    NotMember,
    NotTiling,
    OddPeriod,
    ParseError,
    SearchExhausted,
    UsageError,
)
from .generators import (
    brute_force_covered,
    lattice_tiling,
    random_torus_tiling,
    shifted_column_tiling,
)
from .geometry import (
    Box,
    BoxSet,
    FaceSet,
    box_intersect,
    boxset_subtract,
    boxset_volume,
    erode_by_unit_cube,
    overlap_volume,
)
from .packing import (
    CubeSystem,
    load_instance,
    neighbors,
    save_instance,
    unfold,
    validate_packing,
    validate_torus_tiling,
)
from .rigidity import (
    find_covered_outsiders,
    index_diagnostics,
    is_covered,
    pairing_check,
    parity_certificate,
    twin_witness,
    volume_identity,
)
from .theorems import (
    basis_vector_certificate,
    coset_census,
    orthant_witness,
    subgroup_check,
)

__version__ = "0.1.0"
