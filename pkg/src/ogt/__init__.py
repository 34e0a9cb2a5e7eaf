"""Compressibility of acyclic oriented graphs, computed by tournament census and homomorphism search."""

from .compressibility import (
    CompressibilityResult,
    build_universal_dk,
    tau,
    tau_family,
    tau_lower_witness,
    tau_tt,
)
from .domination import (
    DominationClassification,
    all_k_subsets_dominated,
    check_c53_forcing,
    check_disjoint_arc_dichotomy,
    classify_domination,
    domination_failure_bound,
    domination_graph,
    find_k_dominated_tournament,
    is_dominated,
)
from .enumeration import (
    Census,
    are_isomorphic,
    canonical_code,
    canonical_form,
    oriented_graphs,
    tournaments,
)
from .errors import (
    CacheError,
    CyclicGraphError,
    DominationError,
    GraphError,
    NotTournamentError,
    OGTError,
    SizeCapError,
)
from .extremal import (
    ExtremalResult,
    blowup_lower_bound,
    exact_ex_oriented,
    turan_density_term,
    verify_c3_count_bound,
)
from .formats import from_digraph6, from_hex, parse_graph_text, to_digraph6, to_hex
from .graphs import (
    OrientedGraph,
    Tournament,
    arrow_join,
    bipartite_oriented,
    blow_up,
    composition,
    directed_cycle,
    directed_path,
    empty_graph,
    flip_vertex,
    knn_orientation,
    longest_path_order,
    make_oriented,
    omega_ao,
    omega_ro,
    power_cycle,
    power_path,
    rotational_11,
    special_t,
    tilde_t7,
    transitive_tournament,
)
from .hom import Homomorphism, contains_copy, count_homs, embed_via_domination, hom_exists
from .layered import (
    LayerTyping,
    canonical_hom_to_q,
    layer_typing,
    q_gadget,
    reduce_and_map_q,
    subdivide,
)

__version__ = "0.1.0"
