"""Loop labelings of compiled hypergraphs and preimage reconstruction.

A loop labeling sends every compiled vertex to a distinct pair of integers,
i.e. to an edge of the induced graph, such that every compiled edge lands
in the cycle space of that graph. Graphs whose cycle space is spanned by the
images of the compiled edges are exactly the members of the preimage of the
compiled hypergraph's class (restricted to their cycle edges).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .compiled import CompiledHypergraph
from .errors import InputError, ResourceGuardError, UnsupportedLayoutError
from .gf2 import EdgeIndex, is_constraint, rank, weakly_fundamental_order
from .hypergraph import CanonicalForm, Graph, Hypergraph, canonical_form, edge_key

Pair = tuple[int, int]


class LoopLabeling(Mapping[int, Pair]):
    """Immutable map from compiled vertices to unordered integer pairs."""

    __slots__ = ("_labels",)

    def __init__(self, labels: Mapping[int, Iterable[int]] | Iterable[tuple[int, Iterable[int]]]):
        items = labels.items() if isinstance(labels, Mapping) else labels
        out = {}
        for v, pair in items:
            a, b = sorted(pair)
            out[int(v)] = (a, b)
        self._labels = out

    def __getitem__(self, v: int) -> Pair:
        return self._labels[v]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._labels))

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LoopLabeling):
            return self._labels == other._labels
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._labels.items()))

    def __repr__(self) -> str:
        return f"LoopLabeling({dict(sorted(self._labels.items()))})"

    def image(self, edge: Iterable[int]) -> list[Pair]:
        return [self._labels[v] for v in edge]

    def shape_key(self) -> frozenset[frozenset[int]]:
        """Key equal for two labelings iff they differ by a renaming of the integers."""
        incident: dict[int, set[int]] = {}
        for v, (a, b) in self._labels.items():
            incident.setdefault(a, set()).add(v)
            incident.setdefault(b, set()).add(v)
        return frozenset(frozenset(s) for s in incident.values())

    def normalized(self) -> LoopLabeling:
        """Renamed so that integers 1, 2, ... follow the sorted incident-vertex lists."""
        incident: dict[int, list[int]] = {}
        for v, (a, b) in self._labels.items():
            incident.setdefault(a, []).append(v)
            incident.setdefault(b, []).append(v)
        order = sorted(incident, key=lambda x: sorted(incident[x]))
        rename = {x: i + 1 for i, x in enumerate(order)}
        return LoopLabeling({v: (rename[a], rename[b]) for v, (a, b) in self._labels.items()})

    def to_json(self) -> dict:
        return {"labels": {str(v): list(self._labels[v]) for v in sorted(self._labels)}}

    @classmethod
    def from_json(cls, data: Mapping) -> LoopLabeling:
        try:
            raw = data["labels"]
            return cls({int(v): tuple(p) for v, p in raw.items()})
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError('labeling JSON must look like {"labels": {"1": [i, j], ...}}') from exc


def _as_hypergraph(h: Hypergraph | CompiledHypergraph) -> Hypergraph:
    return h.hypergraph if isinstance(h, CompiledHypergraph) else h


def induced_graph(h: Hypergraph | CompiledHypergraph, labeling: Mapping[int, Iterable[int]]) -> Graph:
    """Graph whose edges are the labels of all vertices occurring in edges."""
    h = _as_hypergraph(h)
    pairs = set()
    for e in h.edges:
        for v in e:
            if v not in labeling:
                raise InputError(f"vertex {v} has no label")
            pairs.add(frozenset(labeling[v]))
    return Graph((), pairs)


def is_loop_labeling(h: Hypergraph | CompiledHypergraph, labeling: Mapping) -> bool:
    """Injective pair labels with every edge image in the induced cycle space."""
    h = _as_hypergraph(h)
    try:
        labels = {}
        for v in h.non_isolated():
            pair = tuple(labeling[v])
            if len(pair) != 2 or pair[0] == pair[1]:
                return False
            if any(not isinstance(x, int) or x < 0 for x in pair):
                return False
            labels[v] = frozenset(pair)
    except (KeyError, TypeError):
        return False
    if len(set(labels.values())) != len(labels):
        return False
    g = Graph((), labels.values())
    index = EdgeIndex.of(g)
    # for graphs the cycle space is the even-degree (constraint) space
    return all(is_constraint(g, index.vector(labels[v] for v in e)) for e in h.edges)


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchOptions:
    max_labels: int = 64  # cap on induced-graph vertices
    max_results: int = 100_000


@dataclass
class _State:
    labels: dict[int, Pair]
    adj: dict[int, set[int]]
    next_fresh: int

    def copy(self) -> _State:
        return _State(dict(self.labels), {k: set(v) for k, v in self.adj.items()}, self.next_fresh)

    def add_pair(self, v: int, a: int, b: int) -> None:
        self.labels[v] = (min(a, b), max(a, b))
        self.adj.setdefault(a, set()).add(b)
        self.adj.setdefault(b, set()).add(a)

    def has_pair(self, a: int, b: int) -> bool:
        return b in self.adj.get(a, ())

    def components(self) -> dict[int, int]:
        comp: dict[int, int] = {}
        for s in sorted(self.adj):
            if s in comp:
                continue
            comp[s] = s
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in comp:
                        comp[w] = s
                        stack.append(w)
        return comp

    def dim(self) -> int:
        edges = sum(len(ns) for ns in self.adj.values()) // 2
        return edges - len(self.adj) + len(set(self.components().values()))


def _path_endpoints(pairs: list[Pair]) -> tuple[int, int] | None:
    """Endpoints if the pairs form one simple path, else None."""
    deg: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for a, b in pairs:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    ends = [x for x, d in deg.items() if d == 1]
    if any(d > 2 for d in deg.values()) or len(ends) != 2:
        return None
    seen = {ends[0]}
    stack = [ends[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(deg):
        return None
    return min(ends), max(ends)


def search_order(h: Hypergraph) -> list[frozenset[int]]:
    """Edge order where each edge has a vertex outside all earlier edges.

    Prefers edges overlapping what is already placed, so most steps extend
    the induced graph by a single path. Falls back to the exact peeling
    order when the greedy pass gets stuck.
    """
    edges = sorted(h.edges, key=edge_key)
    covered: set[int] = set()
    remaining = list(edges)
    order: list[frozenset[int]] = []
    while remaining:
        cands = [e for e in remaining if e - covered]
        if not cands:
            break
        best = max(cands, key=lambda e: (len(e & covered) > 0, len(e & covered), -len(e - covered)))
        order.append(best)
        remaining.remove(best)
        covered |= best
    if not remaining:
        return order
    masks = []
    verts = sorted(h.non_isolated())
    pos = {v: i for i, v in enumerate(verts)}
    for e in edges:
        masks.append(sum(1 << pos[v] for v in e))
    peel = weakly_fundamental_order(masks)
    if peel is None:
        raise UnsupportedLayoutError(
            "compiled hypergraph has no edge order in which every edge has a new vertex"
        )
    return [edges[i] for i in peel]


def _check_no_nested_span(order: list[frozenset[int]]) -> None:
    """Every nonzero combination of earlier edges must leave edge k somewhere.

    Equivalently the earlier edges, projected onto the vertices outside edge
    k, stay linearly independent. Without this, labelings whose edge images
    are not simple cycles would have to be searched as well.
    """
    verts = sorted(set().union(*order)) if order else []
    pos = {v: i for i, v in enumerate(verts)}
    masks = [sum(1 << pos[v] for v in e) for e in order]
    for k in range(1, len(order)):
        outside = ~masks[k]
        projected = [m & outside for m in masks[:k]]
        if rank(projected) != k:
            raise UnsupportedLayoutError(
                f"edge {sorted(order[k])} contains a combination of earlier edges; "
                "simple-cycle search is not exhaustive for this layout"
            )


def _fresh_or_existing(slots: int, comp: dict[int, int], banned_comps: set[int],
                       fresh_start: int) -> Iterator[tuple[list[int], int]]:
    """Assignments of graph vertices to ``slots`` positions.

    Each position gets a fresh integer or an existing vertex; existing
    vertices must come from distinct components outside ``banned_comps``.
    Yields (vertices, next fresh integer).
    """
    by_comp: dict[int, list[int]] = {}
    for v, c in comp.items():
        if c not in banned_comps:
            by_comp.setdefault(c, []).append(v)
    for members in by_comp.values():
        members.sort()

    def rec(i: int, used: frozenset[int], fresh: int, acc: list[int]) -> Iterator[tuple[list[int], int]]:
        if i == slots:
            yield list(acc), fresh
            return
        acc.append(fresh)
        yield from rec(i + 1, used, fresh + 1, acc)
        acc.pop()
        for c, members in by_comp.items():
            if c in used:
                continue
            for v in members:
                acc.append(v)
                yield from rec(i + 1, used | {c}, fresh, acc)
                acc.pop()

    yield from rec(0, frozenset(), fresh_start, [])


def _extensions(state: _State, edge: frozenset[int]) -> Iterator[_State]:
    """All ways to label the new vertices of ``edge`` so that its image is a simple
    cycle and the induced cycle space grows by exactly one dimension."""
    shared = sorted(v for v in edge if v in state.labels)
    new = sorted(v for v in edge if v not in state.labels)
    t = len(new)
    comp = state.components()
    if shared:
        ends = _path_endpoints([state.labels[v] for v in shared])
        if ends is None:
            return
        a, b = ends
        # interior vertices: fresh, or one vertex from each of other components
        for perm in itertools.permutations(new):
            for inner, fresh in _fresh_or_existing(t - 1, comp, {comp[a]}, state.next_fresh):
                nodes = [a, *inner, b]
                pairs = [(nodes[i], nodes[i + 1]) for i in range(t)]
                if any(state.has_pair(x, y) for x, y in pairs):
                    continue
                nxt = state.copy()
                nxt.next_fresh = fresh
                for v, (x, y) in zip(perm, pairs):
                    nxt.add_pair(v, x, y)
                yield nxt
    else:
        first, rest = new[0], new[1:]
        for tail in itertools.permutations(rest):
            if len(tail) >= 2 and tail[0] > tail[-1]:
                continue  # reflection of another cyclic order
            perm = (first, *tail)
            for nodes, fresh in _fresh_or_existing(t, comp, set(), state.next_fresh):
                pairs = [(nodes[i], nodes[(i + 1) % t]) for i in range(t)]
                if any(state.has_pair(x, y) for x, y in pairs):
                    continue
                nxt = state.copy()
                nxt.next_fresh = fresh
                for v, (x, y) in zip(perm, pairs):
                    nxt.add_pair(v, x, y)
                yield nxt


def _prepare(p: Hypergraph | CompiledHypergraph, opts: SearchOptions) -> list[frozenset[int]]:
    h = _as_hypergraph(p)
    for e in h.edges:
        if len(e) < 3:
            raise InputError(f"compiled edge {sorted(e)} has fewer than 3 vertices; no cycle fits")
    if h.vertices != h.non_isolated():
        raise InputError("compiled hypergraph has vertices outside every edge")
    order = search_order(h)
    _check_no_nested_span(order)
    # an induced graph with dim = |E_p| has |V_p| - |E_p| + c vertices
    needed = len(h.vertices) - len(h.edges) + _num_hyper_components(h)
    if needed > opts.max_labels:
        raise ResourceGuardError(
            f"labelings need up to {needed} integers, above max_labels={opts.max_labels}"
        )
    return order


def _num_hyper_components(h: Hypergraph) -> int:
    parent = {v: v for v in h.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        vs = list(e)
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    return len({find(v) for v in h.vertices})


@dataclass
class SearchResult:
    labelings: list[LoopLabeling]
    exhaustive: bool
    examined: int = 0


def search_labelings_result(p: Hypergraph | CompiledHypergraph,
                            opts: SearchOptions = SearchOptions()) -> SearchResult:
    order = _prepare(p, opts)
    n = len(order)
    seen: set[frozenset[frozenset[int]]] = set()
    found: list[LoopLabeling] = []
    examined = 0
    exhaustive = True

    def rec(state: _State, k: int) -> bool:
        nonlocal examined
        if k == n:
            examined += 1
            lab = LoopLabeling(state.labels)
            key = lab.shape_key()
            if key not in seen:
                seen.add(key)
                found.append(lab.normalized())
            return len(found) < opts.max_results
        for nxt in _extensions(state, order[k]):
            if nxt.dim() != k + 1:
                continue
            if not rec(nxt, k + 1):
                return False
        return True

    if n:
        exhaustive = rec(_State({}, {}, 1), 0)
    found.sort(key=lambda lab: sorted(lab.items()))
    return SearchResult(found, exhaustive, examined)


def search_labelings(p: Hypergraph | CompiledHypergraph,
                     opts: SearchOptions = SearchOptions()) -> list[LoopLabeling]:
    """All loop labelings (up to renaming the integers) whose edge images are
    simple cycles and whose induced cycle space has dimension ``|E_p|``."""
    return search_labelings_result(p, opts).labelings


@dataclass(frozen=True)
class PreimageResult:
    forms: frozenset[CanonicalForm]
    graphs: tuple[Graph, ...] = field(compare=False)
    labelings_examined: int = 0
    exhaustive: bool = True

    def __len__(self) -> int:
        return len(self.forms)

    def to_json(self) -> dict:
        return {
            "graphs": [g.to_json() for g in self.graphs],
            "exhaustive": self.exhaustive,
            "labelings_examined": self.labelings_examined,
        }


def preimage(p: Hypergraph | CompiledHypergraph, opts: SearchOptions = SearchOptions()) -> PreimageResult:
    """Isomorphism classes of graphs (restricted to cycle edges) that compile to ``p``."""
    res = search_labelings_result(p, opts)
    reps: dict[CanonicalForm, Graph] = {}
    for lab in res.labelings:
        g = induced_graph(p, lab)
        form = canonical_form(g, max_vertices=max(opts.max_labels, len(g.vertices)))
        reps.setdefault(form, g)
    forms = sorted(reps, key=lambda f: f.key)
    return PreimageResult(frozenset(reps), tuple(reps[f] for f in forms), len(res.labelings), res.exhaustive)
