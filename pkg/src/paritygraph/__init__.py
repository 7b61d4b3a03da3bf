"""Parity compilation of graph problems onto hypergraph layouts."""

from __future__ import annotations

from .compiled import (
    CompiledHypergraph,
    CompiledSet,
    compile_hypergraph,
    compiled_set,
    default_basis,
    enumerate_bases,
    par_equal,
)
from .errors import InputError, InstanceTooLarge, ParityGraphError, ResourceGuardError, UnsupportedLayoutError
from .gf2 import (
    EdgeIndex,
    EdgeVector,
    Gf2Basis,
    classify_basis,
    constraint_space_basis,
    cycle_basis,
    dim_formula,
    enumerate_space,
    in_span,
    is_constraint,
)
from .hypergraph import CanonicalForm, Graph, Hypergraph, canonical_form, is_isomorphic, relabel, restrict
from .labeling import LoopLabeling, PreimageResult, SearchOptions, induced_graph, is_loop_labeling, preimage, search_labelings
from .rect import RectCompilation, RectLayout, cycle_edge_restriction, is_complete_bipartite, is_rect_layout, rect_compile

__all__ = [name for name in dir() if not name.startswith("_")]
