"""Graph homomorphism complexes, closure-operator collapses, and checks."""

from .closure import (
    ClosureError,
    CollapseSequence,
    Matching,
    collapse_sequence_from_closure,
    disconnected_graph_fixture,
    morse_matching_from_closure,
    random_descending_closure,
    random_poset,
    verify_acyclic_matching,
)
from .folds import (
    FoldCollapsePlan,
    alpha_beta_maps,
    first_arg_collapse,
    phi_psi_maps,
    second_arg_collapse,
)
from .graphs import (
    FoldError,
    FoldWitness,
    Graph,
    GraphHom,
    GraphParseError,
    apply_fold,
    find_folds,
    format_graph,
    identity_hom,
    is_homomorphism,
    parse_graph,
)
from .hom import (
    HomComplex,
    ResourceLimitError,
    cell_dim,
    cell_vertex_sets,
    enumerate_hom_cells,
    induced_contravariant,
    induced_covariant,
)
from .homology import (
    BettiVector,
    CollapseReport,
    Verdict,
    betti,
    compare_collapse,
    execute_collapses,
    f_vector,
    gf2_rank,
    smith_invariant_factors,
)
from .posets import (
    ClosureReport,
    FacePoset,
    PosetMap,
    SimplicialComplex,
    face_poset,
    identity_map,
    image_subposet,
    order_complex,
    verify_closure_operator,
)

__version__ = "0.1.0"

__all__ = [
    "BettiVector",
    "ClosureError",
    "ClosureReport",
    "CollapseReport",
    "CollapseSequence",
    "FacePoset",
    "FoldCollapsePlan",
    "FoldError",
    "FoldWitness",
    "Graph",
    "GraphHom",
    "GraphParseError",
    "HomComplex",
    "Matching",
    "PosetMap",
    "ResourceLimitError",
    "SimplicialComplex",
    "Verdict",
    "alpha_beta_maps",
    "apply_fold",
    "betti",
    "cell_dim",
    "cell_vertex_sets",
    "collapse_sequence_from_closure",
    "compare_collapse",
    "disconnected_graph_fixture",
    "enumerate_hom_cells",
    "execute_collapses",
    "f_vector",
    "face_poset",
    "find_folds",
    "first_arg_collapse",
    "format_graph",
    "gf2_rank",
    "identity_hom",
    "identity_map",
    "image_subposet",
    "induced_contravariant",
    "induced_covariant",
    "is_homomorphism",
    "morse_matching_from_closure",
    "order_complex",
    "parse_graph",
    "phi_psi_maps",
    "random_descending_closure",
    "random_poset",
    "second_arg_collapse",
    "smith_invariant_factors",
    "verify_acyclic_matching",
    "verify_closure_operator",
]
