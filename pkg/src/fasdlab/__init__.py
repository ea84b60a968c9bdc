"""Feedback arc set decomposition laboratory.

Exact oracles for fas / fas_w / fasd on small digraphs, constructive
decompositions of bounded-degree orgraphs into feedback arc sets, the extremal
gadget families behind the tightness results, and spectral lower-bound
machinery, all glued together by a certificate-emitting CLI.
"""

from .coloring import (
    ConflictClique,
    CountingBound,
    FasdCertificate,
    SearchOutcome,
    ShortCycleRefutation,
    fasd_exact,
    good_coloring_search,
    refute_by_conflict_clique,
    verify_counting_bound,
    verify_good_coloring,
)
from .delta3 import (
    DegreeClasses,
    FvsCertificate,
    SpecialColoringToolkit,
    degree_classes,
    fas_sixth,
    fvs_exact,
    good_g_coloring,
)
from .digraph import (
    INFINITE,
    BudgetError,
    CycleEnumeration,
    Digraph,
    Graph,
    GraphError,
    MultiDigraph,
    degrees,
    enumerate_cycles,
    eulerian_orient,
    girth,
    is_acyclic,
    max_degree,
    reduce_digons,
    strong_components,
)
from .ordering import (
    FasCertificate,
    backward_arc_ids,
    bas,
    fas_brute,
    fas_exact,
    fas_upper_heuristic,
    fas_weighted_exact,
)
from .spectral import (
    MixingCheck,
    OrientationBound,
    SpectralReport,
    lambda_extremes,
    mixing_check,
    orientation_fas_lower_bound,
    random_orientation_experiment,
)
from .triples import (
    OrderingTriple,
    decompose3,
    extend_along_antidirected,
    good_triple_transitive,
    good_vtriple_nonregular,
    insert_no_backward,
    verify_good_triple,
)

__all__ = [
    "INFINITE",
    "BudgetError",
    "ConflictClique",
    "CountingBound",
    "CycleEnumeration",
    "DegreeClasses",
    "Digraph",
    "FasCertificate",
    "FasdCertificate",
    "FvsCertificate",
    "Graph",
    "GraphError",
    "MixingCheck",
    "MultiDigraph",
    "OrderingTriple",
    "OrientationBound",
    "SearchOutcome",
    "ShortCycleRefutation",
    "SpecialColoringToolkit",
    "SpectralReport",
    "backward_arc_ids",
    "bas",
    "decompose3",
    "degree_classes",
    "degrees",
    "enumerate_cycles",
    "eulerian_orient",
    "extend_along_antidirected",
    "fas_brute",
    "fas_exact",
    "fas_sixth",
    "fas_upper_heuristic",
    "fas_weighted_exact",
    "fasd_exact",
    "fvs_exact",
    "girth",
    "good_coloring_search",
    "good_g_coloring",
    "good_triple_transitive",
    "good_vtriple_nonregular",
    "insert_no_backward",
    "is_acyclic",
    "lambda_extremes",
    "max_degree",
    "mixing_check",
    "orientation_fas_lower_bound",
    "random_orientation_experiment",
    "reduce_digons",
    "refute_by_conflict_clique",
    "strong_components",
    "verify_counting_bound",
    "verify_good_coloring",
    "verify_good_triple",
]

__version__ = "0.1.0"
