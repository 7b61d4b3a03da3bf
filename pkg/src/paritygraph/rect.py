"""Rectangular plaquette layouts: recognition and direct compilation.

A problem graph compiles onto an m x n grid of four-vertex plaquettes iff
its cycle-edge restriction is the complete bipartite graph K_{m,n}. The
compiler below checks that and writes down the plaquette basis directly,
in time proportional to |V||E|.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .compiled import CompiledHypergraph, compile_hypergraph
from .errors import InstanceTooLarge
from .gf2 import EdgeIndex, Gf2Basis, OpCounter, fundamental_cycles
from .hypergraph import Edge, Graph, Hypergraph, edge_key

DEFAULT_MAX_EDGES = 250_000

Position = tuple[int, int]


@dataclass(frozen=True)
class RectLayout:
    """Grid enumeration ``v_{i,j}`` of an m x n plaquette layout (1-based, m <= n)."""

    m: int
    n: int
    grid: dict[Position, int] = field(hash=False)

    def vertex(self, i: int, j: int) -> int:
        return self.grid[(i, j)]

    def plaquette(self, i: int, j: int) -> frozenset[int]:
        g = self.grid
        return frozenset((g[(i, j)], g[(i, j + 1)], g[(i + 1, j + 1)], g[(i + 1, j)]))

    def plaquettes(self) -> list[frozenset[int]]:
        return [self.plaquette(i, j) for i in range(1, self.m) for j in range(1, self.n)]

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.grid.values(), self.plaquettes())

    def rows(self) -> list[list[int]]:
        return [[self.grid[(i, j)] for j in range(1, self.n + 1)] for i in range(1, self.m + 1)]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "grid": self.rows(),
            "plaquettes": [sorted(p) for p in self.plaquettes()],
        }


def _plaquette_degree(i: int, j: int, m: int, n: int) -> int:
    rows = (i > 1) + (i < m)
    cols = (j > 1) + (j < n)
    return rows * cols


def _grid_dims(num_vertices: int, num_edges: int) -> list[tuple[int, int]]:
    # mn = |V| and (m-1)(n-1) = |E| give m + n = |V| - |E| + 1
    s = num_vertices - num_edges + 1
    out = []
    for m in range(2, s // 2 + 1):
        n = s - m
        if m * n == num_vertices and n >= 2:
            out.append((m, n))
    return out


def _fill_grid(h: Hypergraph, m: int, n: int) -> dict[Position, int] | None:
    """Row-major backtracking placement of vertices onto an m x n grid."""
    inc = h.incident()
    deg = {v: len(es) for v, es in inc.items()}
    near: dict[int, set[int]] = {v: set() for v in h.vertices}
    for e in h.edges:
        for v in e:
            near[v] |= e - {v}
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    grid: dict[Position, int] = {}
    used: set[int] = set()

    def candidates(i: int, j: int) -> list[int]:
        want = _plaquette_degree(i, j, m, n)
        if i == 1 and j == 1:
            pool = set(h.vertices)
        elif i == 1:
            pool = near[grid[(1, j - 1)]]
            if j >= 3:
                pool = pool - near[grid[(1, j - 2)]] - {grid[(1, j - 2)]}
        elif j == 1:
            pool = near[grid[(i - 1, 1)]] & near[grid[(i - 1, 2)]]
            if i >= 3:
                pool = pool - near[grid[(i - 2, 1)]] - {grid[(i - 2, 1)]}
        else:
            known = {grid[(i - 1, j - 1)], grid[(i - 1, j)], grid[(i, j - 1)]}
            pool = set()
            for e in inc[grid[(i - 1, j - 1)]]:
                if known <= e:
                    pool |= e - known
        return sorted(v for v in pool if v not in used and deg[v] == want)

    def rec(k: int) -> bool:
        if k == len(cells):
            return True
        cell = cells[k]
        for v in candidates(*cell):
            grid[cell] = v
            used.add(v)
            if rec(k + 1):
                return True
            used.discard(v)
            del grid[cell]
        return False

    return dict(grid) if rec(0) else None


def is_rect_layout(h: Hypergraph) -> RectLayout | None:
    """Grid enumeration of ``h`` as a rectangular plaquette layout, or None."""
    if not h.edges or any(len(e) != 4 for e in h.edges):
        return None
    if h.vertices != h.non_isolated():
        return None
    for m, n in _grid_dims(len(h.vertices), len(h.edges)):
        for rows, cols in ((m, n), (n, m)):
            grid = _fill_grid(h, rows, cols)
            if grid is None:
                continue
            if rows > cols:
                grid = {(j, i): v for (i, j), v in grid.items()}
            layout = RectLayout(m, n, grid)
            if set(layout.plaquettes()) == set(h.edges):
                return layout
    return None


# ---------------------------------------------------------------------------
# compilation of graphs


def cycle_edge_restriction(g: Graph, counter: OpCounter | None = None) -> Graph:
    """The graph on the edges lying in some cycle: the union of the fundamental cycles."""
    keep: set[Edge] = set()
    for cyc in fundamental_cycles(g, counter):
        keep.update(cyc)
    return Graph((), keep)


def is_complete_bipartite(g: Graph, counter: OpCounter | None = None) -> tuple[list[int], list[int]] | None:
    """Both sides of ``g`` if it is a complete bipartite graph, else None.

    Smaller side first; equal sizes are ordered by their minimum vertex.
    """
    adj = g.adjacency()
    if not adj or g.vertices != frozenset(adj):
        return None
    start = min(adj)
    color = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if counter is not None:
                counter.ops += 1
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                return None
    if len(color) != len(adj):
        return None
    sides = [sorted(v for v, c in color.items() if c == k) for k in (0, 1)]
    for side, other in ((sides[0], sides[1]), (sides[1], sides[0])):
        for v in side:
            if counter is not None:
                counter.ops += 1
            if len(adj[v]) != len(other):
                return None
    sides.sort(key=lambda s: (len(s), s[0]))
    return sides[0], sides[1]


@dataclass(frozen=True)
class RectCompilation:
    """Plaquette basis of K_{m,n} and the grid it compiles to.

    ``grid[(i, j)]`` is the compiled vertex standing for the problem edge
    ``{A_i, B_j}``; plaquette k joins rows a_k, a_k + 1 and columns b_k, b_k + 1.
    """

    layout: RectLayout
    partitions: tuple[tuple[int, ...], tuple[int, ...]]
    cycles: tuple[tuple[Edge, ...], ...]
    vertex_map: dict[Position, Edge] = field(hash=False)
    graph: Graph = field(hash=False)

    @property
    def m(self) -> int:
        return self.layout.m

    @property
    def n(self) -> int:
        return self.layout.n

    @cached_property
    def basis(self) -> Gf2Basis:
        index = EdgeIndex.of(self.graph)
        return Gf2Basis(tuple(index.vector(c) for c in self.cycles), index,
                        is_fundamental=False, is_weakly_fundamental=True)

    def compiled(self) -> CompiledHypergraph:
        return compile_hypergraph(self.graph, self.basis)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "grid": [[list(edge_key(self.vertex_map[(i, j)])) for j in range(1, self.n + 1)]
                     for i in range(1, self.m + 1)],
            "plaquettes": [sorted(p) for p in self.layout.plaquettes()],
            "partitions": [list(self.partitions[0]), list(self.partitions[1])],
        }


def plaquette_indices(k: int, n: int) -> tuple[int, int]:
    """Row and column (a_k, b_k) of the k-th plaquette, counted row by row."""
    return (k - 1) // (n - 1) + 1, (k - 1) % (n - 1) + 1


def rect_compile(g: Graph, counter: OpCounter | None = None,
                 max_edges: int = DEFAULT_MAX_EDGES) -> RectCompilation | None:
    """Compile ``g`` onto a rectangular plaquette layout if its cycle edges form K_{m,n}."""
    if len(g.edges) > max_edges:
        raise InstanceTooLarge(f"{len(g.edges)} edges exceeds the limit of {max_edges}")
    core = cycle_edge_restriction(g, counter)
    sides = is_complete_bipartite(core, counter)
    if sides is None:
        return None
    a, b = sides
    m, n = len(a), len(b)
    if m < 2:
        return None
    # compiled ids follow the sorted edge order of the restriction
    order = sorted(core.edges, key=edge_key)
    ids = {e: k + 1 for k, e in enumerate(order)}
    vertex_map: dict[Position, Edge] = {}
    grid: dict[Position, int] = {}
    for i, x in enumerate(a, start=1):
        for j, y in enumerate(b, start=1):
            if counter is not None:
                counter.ops += 1
            e = frozenset((x, y))
            vertex_map[(i, j)] = e
            grid[(i, j)] = ids[e]
    cycles = []
    for k in range(1, (m - 1) * (n - 1) + 1):
        if counter is not None:
            counter.ops += 4
        i, j = plaquette_indices(k, n)
        cycles.append((vertex_map[(i, j)], vertex_map[(i, j + 1)],
                       vertex_map[(i + 1, j + 1)], vertex_map[(i + 1, j)]))
    return RectCompilation(RectLayout(m, n, grid), (tuple(a), tuple(b)), tuple(cycles), vertex_map, core)


# ---------------------------------------------------------------------------
# rendering


def render_ascii(layout: RectLayout) -> str:
    """Grid of compiled vertex ids with plaquette markers between them."""
    width = max(len(str(v)) for v in layout.grid.values())
    lines = []
    for i in range(1, layout.m + 1):
        cells = [str(layout.vertex(i, j)).rjust(width) for j in range(1, layout.n + 1)]
        lines.append(" - ".join(cells))
        if i < layout.m:
            bar = "|".rjust(width)
            lines.append(" # ".join([bar] * layout.n))
    return "\n".join(lines)
