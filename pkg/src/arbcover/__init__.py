"""Minimum weight arc sets meeting every L-tight or minimum cost arborescence."""

from .arborescence import (
    Arborescence,
    TightStructure,
    find_l_tight,
    is_arborescence,
    is_l_tight,
    min_cost_arborescence,
    root_set,
    tight_structure,
)
from .blocker import (
    BlockerResult,
    DoubleCutCertificate,
    covering_tight_arborescences,
    f_value,
    l_cut,
    restricted_l_cut,
    solve_blocker,
)
from .errors import InvalidArgument, NoArborescence, ParseError, ResourceLimit
from .graph import Digraph, LaminarFamily, induced_subgraph, relocate_tail, weighted_indegree
from .mincut import (
    CutResult,
    CutStats,
    DoubleCut,
    anchor_node,
    build_double_cut_aux,
    min_double_cut,
    min_rooted_cut_avoiding,
    min_st_cut,
)

__all__ = [
    "Arborescence", "BlockerResult", "CutResult", "CutStats", "Digraph", "DoubleCut",
    "DoubleCutCertificate", "InvalidArgument", "LaminarFamily", "NoArborescence",
    "ParseError", "ResourceLimit", "TightStructure", "anchor_node", "build_double_cut_aux",
    "covering_tight_arborescences", "f_value", "find_l_tight", "induced_subgraph",
    "is_arborescence", "is_l_tight", "l_cut", "min_cost_arborescence", "min_double_cut",
    "min_rooted_cut_avoiding", "min_st_cut", "relocate_tail", "restricted_l_cut", "root_set",
    "solve_blocker", "tight_structure", "weighted_indegree",
]
