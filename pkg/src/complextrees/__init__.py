"""Complex trees, the fern family ``T_A(z)`` and its unstable set.

Submodules:

``address``    addresses and the tip map phi
``tree``       node sets and tip-to-tip coincidences
``family``     the parametric alphabet ``{z, c2(z), c3(z)}``
``unstable``   relation solving and parameter scans
``dimension``  similarity and path dimensions
``geodesic``   the C/D path system and its stacked surface
``render``     SVG, PPM and OBJ output
"""

__version__ = "0.1.0"

from .address import (
    Address,
    Alphabet,
    apply_map,
    eval_node,
    eval_tip,
    format_address,
    parse_address,
    prefix_product,
    shift,
)
from .dimension import DimensionResult, path_dimension, similarity_dimension
from .errors import (
    AddressParseError,
    BudgetExceededError,
    ComplexTreeError,
    DomainError,
    LetterRangeError,
    SingularityError,
    SingularParameterError,
)
from .family import FamilySample, family_alphabet, in_M2, in_region_R
from .geodesic import PathSystem, SurfaceMesh, build_surface, path_length, refine_paths
from .tree import (
    CoincidenceReport,
    Relation,
    TreeLevelSet,
    build_nodes,
    detect_coincidences,
    tipset_hull_radius,
    verify_relation,
)
from .unstable import (
    Classification,
    RelationRootResult,
    ScanGrid,
    classify_point,
    enumerate_relations,
    relation_residual,
    scan_unstable,
    solve_relation,
)
