"""Compiled hypergraphs of constraint-space bases and the par mapping."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InputError, ResourceGuardError
from .gf2 import (
    EdgeIndex,
    Gf2Basis,
    constraint_space_basis,
    cycle_basis,
    is_constraint,
    popcount,
)
from .hypergraph import DEFAULT_VERTEX_CAP, CanonicalForm, Edge, Graph, Hypergraph, canonical_form, edge_key

DEFAULT_BASIS_CAP = 100_000
MAX_ENUMERATION_DIM = 12


@dataclass(frozen=True)
class CompiledHypergraph:
    """Compiled hypergraph: vertex ``i`` stands for ``source_edges[i - 1]``."""

    hypergraph: Hypergraph
    source_edges: tuple[Edge, ...]
    basis: Gf2Basis | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.source_edges)

    @property
    def vertices(self) -> frozenset[int]:
        return self.hypergraph.vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.hypergraph.edges

    def source_edge(self, v: int) -> Edge:
        return self.source_edges[v - 1]

    def to_json(self) -> dict:
        return {
            "num_vertices": self.num_vertices,
            "edges": [list(e) for e in self.hypergraph.sorted_edges()],
            "source_edges": [list(edge_key(e)) for e in self.source_edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> CompiledHypergraph:
        try:
            m = data["num_vertices"]
            edges = data["edges"]
            sources = tuple(frozenset(e) for e in data.get("source_edges", []))
        except (KeyError, TypeError) as exc:
            raise InputError("compiled hypergraph JSON needs 'num_vertices' and 'edges'") from exc
        if sources and len(sources) != m:
            raise InputError("source_edges length differs from num_vertices")
        h = Hypergraph(range(1, m + 1), edges)
        if h.vertices != frozenset(range(1, m + 1)):
            raise InputError("compiled vertices must be 1..num_vertices")
        return cls(h, sources)


def compile_hypergraph(h: Hypergraph, basis: Gf2Basis,
                       enumeration: Sequence[Sequence[int]] | None = None) -> CompiledHypergraph:
    """Compiled hypergraph of ``basis``.

    ``enumeration`` lists E_B in the order of compiled vertices 1..m; by
    default E_B is taken in ascending edge order.
    """
    for v in basis.vectors:
        if not v.bits:
            raise InputError("basis contains the zero vector")
        if not is_constraint(h, v):
            raise InputError(f"basis element {v.to_json()} is not a constraint of the hypergraph")
    support = basis.index.edges_of(basis.support())
    if enumeration is None:
        order = sorted(support, key=edge_key)
    else:
        order = [frozenset(e) for e in enumeration]
        if len(set(order)) != len(order) or set(order) != set(support):
            raise InputError("enumeration must list every edge of E_B exactly once")
    number = {e: i + 1 for i, e in enumerate(order)}
    edges = [frozenset(number[e] for e in v.edges()) for v in basis.vectors]
    hyper = Hypergraph(range(1, len(order) + 1), edges)
    return CompiledHypergraph(hyper, tuple(order), basis)


# ---------------------------------------------------------------------------
# basis enumeration


def iter_bases(space: Gf2Basis) -> Iterator[Gf2Basis]:
    """Every basis of span(space) exactly once, as an unordered set.

    Works on coefficient vectors: picks ``d`` increasing nonzero coefficient
    integers, each outside the span of the earlier picks.
    """
    d = space.dim
    rows = space.bits()
    full = 1 << d

    def expand(c: int) -> int:
        out = 0
        i = 0
        while c:
            if c & 1:
                out ^= rows[i]
            c >>= 1
            i += 1
        return out

    def rec(start: int, chosen: list[int], span: set[int]) -> Iterator[list[int]]:
        if len(chosen) == d:
            yield list(chosen)
            return
        for c in range(start, full):
            if c in span:
                continue
            chosen.append(c)
            yield from rec(c + 1, chosen, span | {s ^ c for s in span})
            chosen.pop()

    if d == 0:
        yield Gf2Basis((), space.index)
        return
    for coeffs in rec(1, [], {0}):
        yield Gf2Basis.from_bits([expand(c) for c in coeffs], space.index)


def count_bases(d: int) -> int:
    """Number of unordered bases of GF(2)^d."""
    ordered = 1
    for i in range(d):
        ordered *= 2**d - 2**i
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    return ordered // fact


def enumerate_bases(space: Gf2Basis, cap: int = DEFAULT_BASIS_CAP) -> tuple[list[Gf2Basis], bool]:
    """All bases of the span, truncated at ``cap``; returns (bases, exhaustive)."""
    if space.dim > MAX_ENUMERATION_DIM:
        raise ResourceGuardError(
            f"basis enumeration limited to dimension {MAX_ENUMERATION_DIM}, got {space.dim}"
        )
    out = []
    for b in iter_bases(space):
        if len(out) == cap:
            return out, False
        out.append(b)
    return out, True


# ---------------------------------------------------------------------------
# compiled sets and par equality


@dataclass(frozen=True)
class CompiledSet:
    forms: frozenset[CanonicalForm]
    exhaustive: bool
    bases_examined: int = 0

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, form: CanonicalForm) -> bool:
        return form in self.forms


def _forms_of(h: Hypergraph, bases: list[Gf2Basis], max_vertices: int) -> set[CanonicalForm]:
    return {canonical_form(compile_hypergraph(h, b).hypergraph, max_vertices) for b in bases}


def compiled_set(h: Hypergraph, cap: int = DEFAULT_BASIS_CAP, workers: int = 1,
                 max_vertices: int = DEFAULT_VERTEX_CAP) -> CompiledSet:
    """Isomorphism classes of compiled hypergraphs over all bases (up to ``cap`` bases)."""
    space = constraint_space_basis(h)
    bases = []
    exhaustive = True
    for b in iter_bases(space):
        if len(bases) == cap:
            exhaustive = False
            break
        bases.append(b)
    if workers > 1 and len(bases) > 64:
        chunks = [bases[i::workers] for i in range(workers)]
        forms: set[CanonicalForm] = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_forms_of, [h] * workers, chunks, [max_vertices] * workers):
                forms |= part
    else:
        forms = _forms_of(h, bases, max_vertices)
    return CompiledSet(frozenset(forms), exhaustive, len(bases))


def default_basis(h: Hypergraph) -> Gf2Basis:
    """Fundamental cycle basis for graphs, kernel basis otherwise."""
    if h.is_graph:
        return cycle_basis(h.as_graph())
    return constraint_space_basis(h)


def par_equal(g1: Graph, g2: Graph, cap: int = DEFAULT_BASIS_CAP) -> bool:
    """Whether the two graphs have the same set of compiled hypergraph classes.

    One isomorphic pair of compiled hypergraphs is enough for equality, so the
    fundamental basis of ``g1`` is compiled once and matched against the
    bases of ``g2``. Raises ResourceGuardError if the cap stops the search
    before a decision.
    """
    b1 = default_basis(g1)
    b2 = default_basis(g2)
    if b1.dim != b2.dim or popcount(b1.support()) != popcount(b2.support()):
        return False
    if b1.dim == 0:
        return True
    target = canonical_form(compile_hypergraph(g1, b1).hypergraph)
    if canonical_form(compile_hypergraph(g2, b2).hypergraph) == target:
        return True
    seen = 0
    for b in iter_bases(b2):
        if seen == cap:
            raise ResourceGuardError(f"par equality undecided after {cap} bases")
        seen += 1
        if canonical_form(compile_hypergraph(g2, b).hypergraph) == target:
            return True
    return False


def basis_for_edges(h: Hypergraph, cycles: Sequence[Sequence[Sequence[int]]]) -> Gf2Basis:
    """Basis over ``h``'s sorted edge index from explicit edge lists."""
    index = EdgeIndex.of(h)
    return Gf2Basis(tuple(index.vector(c) for c in cycles), index)
