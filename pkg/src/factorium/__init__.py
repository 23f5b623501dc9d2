"""Exact k-factor, perfect-matching and Tutte-certificate tools for small graphs."""

from .factor import (
    ExtremalCertificate,
    Factor,
    TutteCertificate,
    eta,
    find_extremal_certificate,
    find_k_factor,
    find_tutte_certificate,
    is_k_odd_component,
    verify_duality,
)
from .factorization import (
    Factorization,
    decompose_via_factor,
    k_disjoint_perfect_matchings,
    one_factorization,
)
from .graph import (
    Graph,
    GraphFormatError,
    OreReport,
    complement,
    components_after_removal,
    emit_graph6,
    ore_report,
    parse_graph6,
    vertex_connectivity,
)
from .matching import Matching, max_matching, perfect_matching, perfect_matching_with_forced_edge

__version__ = "0.1.0"
