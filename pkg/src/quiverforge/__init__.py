"""Exact combinatorics of quivers with relations: cyclically oriented quivers,
standard relations, admissible cuts, relation extensions and quadratic forms."""

from .algebra import (
    Presentation,
    Relation,
    check_R1_R2,
    cyclic_arrows,
    presentation_from_json,
    presentation_to_json,
    standard_relations,
)
from .cuts import (
    AdmissibleCut,
    cut_containing,
    enumerate_admissible_cuts,
    quotient_by_cut,
    verify_cut_quotient,
)
from .decomposition import antiparallel_shortest_paths, decompose_at_arrow
from .errors import (
    InfiniteDimensionError,
    InvariantError,
    MalformedInputError,
    PreconditionError,
    QuiverForgeError,
)
from .extension import check_cut_theorem, relation_extension_quiver, split_extension_maps
from .forms import (
    cartan_matrix,
    classify_type,
    count_roots,
    coxeter_polynomial,
    euler_symmetrized,
    quasi_cartan_companions,
    quasi_cartan_flags,
)
from .homotopy import first_homology, homotopy_classes
from .mutation import mutate
from .normalize import normalize_coefficients
from .pathspace import path_space
from .quiver import (
    Arrow,
    Cycle,
    Quiver,
    enumerate_chordless_cycles,
    is_cyclically_oriented,
    make_cycle,
    make_G,
    quiver_isomorphic,
    validate_cluster_quiver,
)

__version__ = "0.1.0"
