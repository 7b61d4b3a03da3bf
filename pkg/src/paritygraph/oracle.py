"""Brute-force reference implementations for small instances.

Everything here favours obviousness over speed; the test suite compares
the optimized modules against these on exhaustive corpora of small graphs.
"""

from __future__ import annotations

import itertools
import json
import os
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .compiled import CompiledHypergraph, compile_hypergraph, compiled_set, iter_bases
from .errors import ResourceGuardError
from .gf2 import EdgeIndex, EdgeVector, constraint_space_basis, dim_formula, enumerate_space, is_simple_cycle
from .hypergraph import CanonicalForm, Graph, Hypergraph, canonical_form, edge_key

MAX_BRUTE_EDGES = 24
MAX_CORPUS_VERTICES = 9


# ---------------------------------------------------------------------------
# corpus


def _cache_dir() -> Path:
    base = os.environ.get("PARITYGRAPH_CACHE")
    if base:
        return Path(base)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "paritygraph"


@dataclass
class GraphCorpus:
    """Non-isomorphic graphs with at most ``v_max`` non-isolated vertices and
    1..``e_max`` edges. Isolated vertices are dropped from every member."""

    v_max: int
    e_max: int
    graphs: list[Graph] = field(repr=False)

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.graphs)

    def with_edges(self, k: int) -> list[Graph]:
        return [g for g in self.graphs if len(g.edges) == k]

    def cycle_graphs(self) -> list[Graph]:
        """Members that coincide with their cycle-edge restriction (min degree >= 2)."""
        return [g for g in self.graphs if is_cycle_edge_graph(g)]


def _extend_level(level: dict[bytes, frozenset], n: int) -> dict[bytes, frozenset]:
    all_pairs = [frozenset(p) for p in itertools.combinations(range(1, n + 1), 2)]
    nxt: dict[bytes, frozenset] = {}
    for edges in level.values():
        for p in all_pairs:
            if p in edges:
                continue
            new = edges | {p}
            key = canonical_form(Hypergraph(range(1, n + 1), new)).key
            if key not in nxt:
                nxt[key] = new
    return nxt


def generate_corpus(v_max: int, e_max: int, cache: bool = True) -> GraphCorpus:
    """All graphs on ``v_max`` labelled slots with up to ``e_max`` edges, up to isomorphism."""
    if v_max > MAX_CORPUS_VERTICES:
        raise ResourceGuardError(f"corpus generation limited to {MAX_CORPUS_VERTICES} vertices")
    e_max = min(e_max, v_max * (v_max - 1) // 2)
    path = _cache_dir() / f"corpus_v{v_max}_e{e_max}.jsonl"
    if cache and path.exists():
        graphs = [Graph.from_json(json.loads(line)) for line in path.read_text().splitlines() if line]
        return GraphCorpus(v_max, e_max, graphs)
    level: dict[bytes, frozenset] = {b"": frozenset()}
    graphs: list[Graph] = []
    for _ in range(e_max):
        level = _extend_level(level, v_max)
        for edges in sorted(level.values(), key=lambda es: sorted(edge_key(e) for e in es)):
            graphs.append(Graph((), edges))
    if cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text("".join(json.dumps(g.to_json()) + "\n" for g in graphs))
            tmp.replace(path)
        except OSError:
            pass
    return GraphCorpus(v_max, e_max, graphs)


# ---------------------------------------------------------------------------
# spaces


def brute_constraint_space(h: Hypergraph) -> set[EdgeVector]:
    """Every edge subset with even vertex counts, by a Gray-code walk over all 2^|E| subsets."""
    index = EdgeIndex.of(h)
    m = len(index)
    if m > MAX_BRUTE_EDGES:
        raise ResourceGuardError(f"{m} edges is too many for a 2^|E| scan")
    verts = sorted(h.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    parity_of = [sum(1 << pos[v] for v in e) for e in index.edges]
    out = {EdgeVector(0, index)}
    subset = 0
    parity = 0
    for k in range(1, 1 << m):
        flip = (k & -k).bit_length() - 1
        subset ^= 1 << flip
        parity ^= parity_of[flip]
        if parity == 0:
            out.add(EdgeVector(subset, index))
    return out


def brute_cycle_edges(g: Graph) -> frozenset:
    """Edges lying in some nonzero element of the cycle space."""
    space = enumerate_space(constraint_space_basis(g))
    used = 0
    for v in space:
        used |= v.bits
    return frozenset(EdgeIndex.of(g).edges_of(used))


def is_cycle_edge_graph(g: Graph) -> bool:
    """Whether every edge lies on a cycle (no bridges)."""
    if not g.edges:
        return False
    adj = g.adjacency()
    if any(len(ns) < 2 for ns in adj.values()):
        return False
    for e in g.edges:
        a, b = tuple(e)
        rest = Graph((), g.edges - {e})
        seen = {a}
        stack = [a]
        radj = rest.adjacency()
        while stack:
            u = stack.pop()
            for w in radj.get(u, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if b not in seen:
            return False
    return True


def simple_cycles(g: Graph) -> list[EdgeVector]:
    """The spanning set L_H: nonzero cycle-space elements forming one simple cycle."""
    space = enumerate_space(constraint_space_basis(g))
    return [v for v in space if v.bits and is_simple_cycle(v.edges())]


def has_connected_cycle_space(g: Graph) -> bool:
    """Simple cycles linked through shared edges form a single class."""
    cycles = [c.bits for c in simple_cycles(g)]
    if not cycles:
        return False
    parent = list(range(len(cycles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(len(cycles)), 2):
        if cycles[i] & cycles[j]:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(cycles))}) == 1


# ---------------------------------------------------------------------------
# isomorphism and bipartite completeness


def brute_is_isomorphic(h1: Hypergraph, h2: Hypergraph, max_vertices: int = 8) -> bool:
    """Try every bijection between the vertex sets."""
    if len(h1.vertices) != len(h2.vertices) or len(h1.edges) != len(h2.edges):
        return False
    if len(h1.vertices) > max_vertices:
        raise ResourceGuardError(f"brute-force isomorphism limited to {max_vertices} vertices")
    v1 = sorted(h1.vertices)
    target = h2.edges
    for perm in itertools.permutations(sorted(h2.vertices)):
        f = dict(zip(v1, perm))
        if all(frozenset(f[v] for v in e) in target for e in h1.edges):
            return True
    return False


def brute_complete_bipartite(g: Graph) -> tuple[list[int], list[int]] | None:
    """Check every split of the vertices into two nonempty sides."""
    verts = sorted(g.vertices)
    if len(verts) > 16:
        raise ResourceGuardError("brute-force bipartite check limited to 16 vertices")
    if len(verts) < 2:
        return None
    first, rest = verts[0], verts[1:]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            a = {first, *extra}
            b = set(verts) - a
            if not b:
                continue
            want = {frozenset((x, y)) for x in a for y in b}
            if want == g.edges:
                sides = sorted([sorted(a), sorted(b)], key=lambda s: (len(s), s[0]))
                return sides[0], sides[1]
    return None


# ---------------------------------------------------------------------------
# preimages and uniqueness


def _compiles_to(g: Graph, target: CanonicalForm) -> bool:
    space = constraint_space_basis(g)
    n = len(target.edges)
    if space.dim != n:
        return False
    for b in iter_bases(space):
        if canonical_form(compile_hypergraph(g, b).hypergraph) == target:
            return True
    return False


def brute_preimage(p: Hypergraph | CompiledHypergraph, v_max: int,
                   corpus: GraphCorpus | None = None) -> set[CanonicalForm]:
    """Classes of cycle-edge graphs on at most ``v_max`` vertices having [p] as a compiled hypergraph."""
    h = p.hypergraph if isinstance(p, CompiledHypergraph) else p
    target = canonical_form(h)
    k = len(h.vertices)  # a compiled vertex per cycle edge
    if corpus is None:
        corpus = generate_corpus(v_max, k)
    out = set()
    for g in corpus.with_edges(k):
        if len(g.vertices) > v_max or dim_formula(g) != len(h.edges):
            continue
        if not is_cycle_edge_graph(g):
            continue
        if _compiles_to(g, target):
            out.add(canonical_form(g))
    return out


@dataclass
class UniquenessReport:
    graphs_scanned: int = 0
    violations: list[tuple[Graph, Graph]] = field(default_factory=list)
    witnesses: list[tuple[Graph, Graph]] = field(default_factory=list)


def brute_uniqueness_scan(corpus: GraphCorpus | Iterable[Graph], dim_limit: int = 2,
                          witness_dims: Iterable[int] = ()) -> UniquenessReport:
    """Group cycle-edge graphs with connected cycle space by their compiled set.

    Two non-isomorphic graphs in one group are a violation of uniqueness when
    their dimension is at most ``dim_limit`` and a witness of non-uniqueness
    when the dimension is listed in ``witness_dims``.
    """
    wanted = set(range(1, dim_limit + 1)) | set(witness_dims)
    groups: dict[tuple[int, frozenset], list[Graph]] = {}
    report = UniquenessReport()
    for g in corpus:
        if not is_cycle_edge_graph(g):
            continue
        d = dim_formula(g)
        if d not in wanted or not has_connected_cycle_space(g):
            continue
        report.graphs_scanned += 1
        forms = compiled_set(g).forms
        groups.setdefault((d, forms), []).append(g)
    for (d, _), members in sorted(groups.items(), key=lambda kv: kv[0][0]):
        for g1, g2 in itertools.combinations(members, 2):
            if canonical_form(g1) == canonical_form(g2):
                continue
            if d <= dim_limit:
                report.violations.append((g1, g2))
            else:
                report.witnesses.append((g1, g2))
    return report
