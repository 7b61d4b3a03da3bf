"""Hypergraph and graph value types, JSON I/O and canonical forms.

Vertex ids are arbitrary non-negative integers. Edges are stored as a
frozenset of frozensets, so parallel edges cannot occur. Everything that
needs positional indexing builds its own dense index map.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InputError, InstanceTooLarge

Edge = frozenset[int]

DEFAULT_VERTEX_CAP = 64


def edge_key(edge: Iterable[int]) -> tuple[int, ...]:
    """Sort key for edges: the ascending tuple of their vertices."""
    return tuple(sorted(edge))


class Hypergraph:
    """Immutable hypergraph ``(V, E)`` with ``E`` a set of nonempty vertex sets."""

    __slots__ = ("_vertices", "_edges", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Iterable[int]] = ()):
        edge_set = set()
        for e in edges:
            fe = frozenset(e)
            if not fe:
                raise InputError("empty edge")
            edge_set.add(fe)
        verts = set(vertices)
        for e in edge_set:
            verts.update(e)
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"vertex ids must be non-negative integers, got {v!r}")
        self._vertices = frozenset(verts)
        self._edges = frozenset(edge_set)
        self._hash = None
        self._check()

    def _check(self) -> None:
        pass

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(edge_key(e) for e in self._edges)

    @property
    def is_graph(self) -> bool:
        return all(len(e) == 2 for e in self._edges)

    def as_graph(self) -> Graph:
        return Graph(self._vertices, self._edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self._edges if v in e)

    def incident(self) -> dict[int, list[Edge]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self._vertices}
        for e in self._edges:
            for v in e:
                inc[v].append(e)
        return inc

    def non_isolated(self) -> frozenset[int]:
        out: set[int] = set()
        for e in self._edges:
            out.update(e)
        return frozenset(out)

    def relabel(self, mapping: Mapping[int, int]) -> Hypergraph:
        """Image under a vertex bijection; the result has the same class."""
        if len(set(mapping[v] for v in self._vertices)) != len(self._vertices):
            raise InputError("relabeling is not injective")
        return type(self)(
            (mapping[v] for v in self._vertices),
            ({mapping[v] for v in e} for e in self._edges),
        )

    def to_json(self) -> dict:
        return {"vertices": self.sorted_vertices(), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> Hypergraph:
        try:
            vertices = data.get("vertices", [])
            edges = data["edges"]
        except (KeyError, AttributeError, TypeError) as exc:
            raise InputError("hypergraph JSON needs an 'edges' list") from exc
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise InputError("'vertices' and 'edges' must be lists")
        for e in edges:
            if not isinstance(e, list):
                raise InputError(f"edge must be a list, got {e!r}")
            if len(set(e)) != len(e):
                raise InputError(f"edge {e!r} repeats a vertex")
        return cls(vertices, edges)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._edges))
        return self._hash

    def __repr__(self) -> str:
        name = type(self).__name__
        return f"{name}(vertices={self.sorted_vertices()}, edges={self.sorted_edges()})"

    def __len__(self) -> int:
        return len(self._vertices)


class Graph(Hypergraph):
    """Hypergraph whose edges all have exactly two vertices."""

    __slots__ = ()

    def _check(self) -> None:
        for e in self._edges:
            if len(e) != 2:
                raise InputError(f"graph edge {sorted(e)} does not have two vertices")

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self._vertices}
        for e in self._edges:
            a, b = e
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def components(self) -> list[set[int]]:
        """Connected components, isolated vertices included, ordered by min vertex."""
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for s in sorted(self._vertices):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]]) -> Graph:
        return cls((), edges)


def relabel(h: Hypergraph, mapping: Mapping[int, int]) -> Hypergraph:
    return h.relabel(mapping)


def restrict(g: Hypergraph, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Restriction ``g|E'``: the given edges and exactly their endpoints."""
    chosen = {frozenset(e) for e in edges}
    unknown = chosen - g.edges
    if unknown:
        raise InputError(f"edges not in graph: {sorted(edge_key(e) for e in unknown)}")
    return type(g)((), chosen)


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant encoding of a hypergraph.

    ``labeling`` maps original vertex ids to canonical positions for the
    instance it was computed from; it is not part of equality.
    """

    num_vertices: int
    edges: tuple[tuple[int, ...], ...]
    labeling: Mapping[int, int] | None = field(default=None, compare=False, hash=False, repr=False)

    @property
    def key(self) -> bytes:
        return json.dumps([self.num_vertices, self.edges], separators=(",", ":")).encode()

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(range(self.num_vertices), self.edges)

    def to_graph(self) -> Graph:
        return Graph(range(self.num_vertices), self.edges)


class _Canonizer:
    """Individualization-refinement search with orbit pruning.

    Colors are always canonical ranks, so the cell chosen for branching and
    the certificate at every leaf are independent of the input labeling.
    """

    def __init__(self, n: int, edges: list[tuple[int, ...]]):
        self.n = n
        self.edges = edges
        self.inc: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(edges):
            for v in e:
                self.inc[v].append(i)
        self.best_cert: tuple | None = None
        self.best_perm: list[int] | None = None
        self.first_cert: tuple | None = None
        self.first_perm: list[int] | None = None
        self.automorphisms: list[list[int]] = []

    def refine(self, colors: list[int]) -> list[int]:
        ncolors = len(set(colors))
        while True:
            esig = [(len(e), tuple(sorted(colors[v] for v in e))) for e in self.edges]
            erank = {s: i for i, s in enumerate(sorted(set(esig)))}
            ecol = [erank[s] for s in esig]
            vsig = [(colors[v], tuple(sorted(ecol[i] for i in self.inc[v]))) for v in range(self.n)]
            vrank = {s: i for i, s in enumerate(sorted(set(vsig)))}
            colors = [vrank[s] for s in vsig]
            if len(vrank) == ncolors:
                return colors
            ncolors = len(vrank)

    @staticmethod
    def individualize(colors: list[int], v: int) -> list[int]:
        sig = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        return [rank[s] for s in sig]

    def certificate(self, perm: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in self.edges))

    def _record_automorphism(self, perm: list[int], other: list[int]) -> None:
        # vertex v sits where w sits in the other leaf: v -> w is an automorphism
        inv = [0] * self.n
        for w, p in enumerate(other):
            inv[p] = w
        auto = [inv[perm[v]] for v in range(self.n)]
        if any(auto[v] != v for v in range(self.n)):
            self.automorphisms.append(auto)

    def _orbit_roots(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.automorphisms:
            if all(a[p] == p for p in prefix):
                for v in range(self.n):
                    ra, rb = find(v), find(a[v])
                    if ra != rb:
                        parent[ra] = rb
        return [find(v) for v in range(self.n)]

    def search(self, colors: list[int], prefix: list[int]) -> None:
        colors = self.refine(colors)
        if len(set(colors)) == self.n:
            cert = self.certificate(colors)
            if self.first_cert is None:
                self.first_cert, self.first_perm = cert, colors
                self.best_cert, self.best_perm = cert, colors
                return
            if cert == self.first_cert:
                self._record_automorphism(colors, self.first_perm)
            if cert < self.best_cert:
                self.best_cert, self.best_perm = cert, colors
            elif cert == self.best_cert and self.best_perm is not self.first_perm:
                self._record_automorphism(colors, self.best_perm)
            return
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        explored_roots: set[int] = set()
        for v in cells[target]:
            if explored_roots:
                roots = self._orbit_roots(prefix)
                if roots[v] in {roots[u] for u in explored_roots}:
                    continue
            explored_roots.add(v)
            self.search(self.individualize(colors, v), prefix + [v])

    def run(self) -> tuple[tuple, list[int]]:
        self.search([0] * self.n, [])
        return self.best_cert, self.best_perm


def canonical_form(h: Hypergraph, max_vertices: int = DEFAULT_VERTEX_CAP) -> CanonicalForm:
    """Canonical form: equal for two hypergraphs iff they are isomorphic."""
    if len(h.vertices) > max_vertices:
        raise InstanceTooLarge(
            f"instance too large: {len(h.vertices)} vertices exceeds the cap of {max_vertices}"
        )
    order = h.sorted_vertices()
    dense = {v: i for i, v in enumerate(order)}
    edges = [tuple(dense[v] for v in e) for e in h.sorted_edges()]
    n = len(order)
    if n == 0:
        return CanonicalForm(0, (), {})
    cert, perm = _Canonizer(n, edges).run()
    labeling = {v: perm[dense[v]] for v in order}
    return CanonicalForm(n, cert, labeling)


def is_isomorphic(h1: Hypergraph, h2: Hypergraph, max_vertices: int = DEFAULT_VERTEX_CAP) -> bool:
    if len(h1.vertices) != len(h2.vertices) or len(h1.edges) != len(h2.edges):
        if max(len(h1.vertices), len(h2.vertices)) > max_vertices:
            raise InstanceTooLarge(f"instance too large: vertex cap {max_vertices}")
        return False
    if sorted(len(e) for e in h1.edges) != sorted(len(e) for e in h2.edges):
        return False
    return canonical_form(h1, max_vertices) == canonical_form(h2, max_vertices)


def isomorphism(h1: Hypergraph, h2: Hypergraph, max_vertices: int = DEFAULT_VERTEX_CAP) -> dict[int, int] | None:
    """An explicit vertex bijection h1 -> h2 preserving edges, or None."""
    f1 = canonical_form(h1, max_vertices)
    f2 = canonical_form(h2, max_vertices)
    if f1 != f2:
        return None
    inv2 = {p: v for v, p in f2.labeling.items()}
    return {v: inv2[p] for v, p in f1.labeling.items()}
