"""Edge spaces over GF(2): edge vectors, cycle and constraint space bases.

An edge vector is a Python int used as a bitset over an ``EdgeIndex``;
bit ``i`` set means edge ``index[i]`` belongs to the subset. Addition is XOR.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import InputError, ResourceGuardError
from .hypergraph import Edge, Graph, Hypergraph, edge_key

DEFAULT_SPACE_CAP = 2**20


class EdgeIndex:
    """Ordered list of edges fixing the coordinates of edge vectors."""

    __slots__ = ("edges", "_pos")

    def __init__(self, edges: Iterable[Iterable[int]]):
        self.edges: tuple[Edge, ...] = tuple(frozenset(e) for e in edges)
        self._pos = {e: i for i, e in enumerate(self.edges)}
        if len(self._pos) != len(self.edges):
            raise InputError("edge index contains duplicate edges")

    @classmethod
    def of(cls, h: Hypergraph) -> EdgeIndex:
        """Deterministic index: edges sorted ascending by their vertex tuples."""
        return cls(sorted(h.edges, key=edge_key))

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeIndex) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def position(self, edge: Iterable[int]) -> int:
        try:
            return self._pos[frozenset(edge)]
        except KeyError:
            raise InputError(f"edge {sorted(edge)} is not indexed") from None

    def __contains__(self, edge: Iterable[int]) -> bool:
        return frozenset(edge) in self._pos

    def vector(self, edges: Iterable[Iterable[int]]) -> EdgeVector:
        bits = 0
        for e in edges:
            bits ^= 1 << self.position(e)
        return EdgeVector(bits, self)

    def zero(self) -> EdgeVector:
        return EdgeVector(0, self)

    def edges_of(self, bits: int) -> list[Edge]:
        return [self.edges[i] for i in _bit_positions(bits)]

    def to_json(self) -> list[list[int]]:
        return [list(edge_key(e)) for e in self.edges]


def _bit_positions(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class EdgeVector:
    bits: int
    index: EdgeIndex = field(compare=True)

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> len(self.index):
            raise InputError("edge vector has bits outside its index")

    def __xor__(self, other: EdgeVector) -> EdgeVector:
        return sym_diff(self, other)

    def __add__(self, other: EdgeVector) -> EdgeVector:
        return sym_diff(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return popcount(self.bits)

    def edges(self) -> list[Edge]:
        return self.index.edges_of(self.bits)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def to_json(self) -> list[list[int]]:
        return sorted(list(edge_key(e)) for e in self.edges())

    def __repr__(self) -> str:
        return f"EdgeVector({self.to_json()})"


def sym_diff(a: EdgeVector, b: EdgeVector) -> EdgeVector:
    if a.index != b.index:
        raise InputError("edge vectors are indexed over different edge sets")
    return EdgeVector(a.bits ^ b.bits, a.index)


def popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class Gf2Basis:
    """Linearly independent edge vectors over a shared index."""

    vectors: tuple[EdgeVector, ...]
    index: EdgeIndex
    is_fundamental: bool = False
    is_weakly_fundamental: bool = False

    def __post_init__(self) -> None:
        for v in self.vectors:
            if v.index != self.index:
                raise InputError("basis vector indexed over a different edge set")
            if not v.bits:
                raise InputError("basis contains the zero vector")
        if rank([v.bits for v in self.vectors]) != len(self.vectors):
            raise InputError("basis vectors are linearly dependent")

    @classmethod
    def from_bits(cls, bits: Iterable[int], index: EdgeIndex, **flags) -> Gf2Basis:
        return cls(tuple(EdgeVector(b, index) for b in bits), index, **flags)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[EdgeVector]:
        return iter(self.vectors)

    def bits(self) -> list[int]:
        return [v.bits for v in self.vectors]

    def support(self) -> int:
        """Bitset of E_B, the edges used by some basis element."""
        out = 0
        for v in self.vectors:
            out |= v.bits
        return out

    def as_set(self) -> frozenset[int]:
        return frozenset(v.bits for v in self.vectors)

    def to_json(self) -> dict:
        return {"edge_index": self.index.to_json(), "basis": [v.to_json() for v in self.vectors]}

    @classmethod
    def from_json(cls, data: dict) -> Gf2Basis:
        try:
            index = EdgeIndex(data["edge_index"])
            return cls(tuple(index.vector(c) for c in data["basis"]), index)
        except (KeyError, TypeError) as exc:
            raise InputError("basis JSON needs 'edge_index' and 'basis'") from exc


def rank(rows: Sequence[int]) -> int:
    """GF(2) rank of int-bitset rows."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                r += 1
                break
    return r


class _Reducer:
    """Incremental echelon form that remembers basis combinations."""

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}  # top bit -> (row, combination)

    def reduce(self, row: int) -> tuple[int, int]:
        combo = 0
        while row:
            top = row.bit_length() - 1
            if top not in self.pivots:
                break
            prow, pcombo = self.pivots[top]
            row ^= prow
            combo ^= pcombo
        return row, combo

    def add(self, row: int, tag: int) -> bool:
        rest, combo = self.reduce(row)
        if not rest:
            return False
        self.pivots[rest.bit_length() - 1] = (rest, combo ^ tag)
        return True


def in_span(basis: Gf2Basis, c: EdgeVector) -> tuple[int, ...] | None:
    """Coefficients expressing ``c`` in ``basis``, or None if ``c`` is outside the span."""
    if c.index != basis.index:
        raise InputError("vector and basis use different edge indices")
    red = _Reducer()
    for i, v in enumerate(basis.vectors):
        red.add(v.bits, 1 << i)
    rest, combo = red.reduce(c.bits)
    if rest:
        return None
    coeffs = tuple((combo >> i) & 1 for i in range(basis.dim))
    check = 0
    for i, v in enumerate(basis.vectors):
        if coeffs[i]:
            check ^= v.bits
    assert check == c.bits
    return coeffs


def enumerate_space(basis: Gf2Basis, cap: int = DEFAULT_SPACE_CAP) -> list[EdgeVector]:
    """All ``2**dim`` elements of the span, zero first, ordered by coefficient integer."""
    if 2**basis.dim > cap:
        raise ResourceGuardError(f"space of dimension {basis.dim} exceeds enumeration cap {cap}")
    rows = basis.bits()
    out = [0] * (1 << len(rows))
    for k in range(1, len(out)):
        low = (k & -k).bit_length() - 1
        out[k] = out[k ^ (1 << low)] ^ rows[low]
    return [EdgeVector(b, basis.index) for b in out]


# ---------------------------------------------------------------------------
# constraint and cycle spaces


def vertex_masks(h: Hypergraph, index: EdgeIndex) -> dict[int, int]:
    """Per vertex, the bitset of incident edges (rows of the incidence matrix)."""
    masks = {v: 0 for v in h.vertices}
    for i, e in enumerate(index.edges):
        for v in e:
            masks[v] |= 1 << i
    return masks


def is_constraint(h: Hypergraph, c: EdgeVector) -> bool:
    """True iff every vertex touched by ``c`` lies in an even number of its edges."""
    if set(c.index.edges) != h.edges:
        raise InputError("vector is not indexed over the hypergraph's edges")
    for mask in vertex_masks(h, c.index).values():
        if popcount(mask & c.bits) % 2:
            return False
    return True


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : popcount(row & x) even for all rows}`` via reduced row echelon form."""
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    work = [r for r in rows if r]
    for col in range(ncols):
        bit = 1 << col
        pick = next((i for i, r in enumerate(work) if r & bit), None)
        if pick is None:
            continue
        prow = work.pop(pick)
        work = [r ^ prow if r & bit else r for r in work]
        pivot_rows = [r ^ prow if r & bit else r for r in pivot_rows]
        pivot_rows.append(prow)
        pivot_cols.append(col)
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = 1 << free
        for prow, pcol in zip(pivot_rows, pivot_cols):
            if prow >> free & 1:
                x |= 1 << pcol
        basis.append(x)
    return basis


def constraint_space_basis(h: Hypergraph) -> Gf2Basis:
    """Basis of the constraint space: the GF(2) kernel of the vertex-edge incidence matrix."""
    index = EdgeIndex.of(h)
    masks = vertex_masks(h, index)
    rows = [masks[v] for v in sorted(masks)]
    vectors = nullspace(rows, len(index))
    basis = Gf2Basis.from_bits(vectors, index)
    cls = classify_basis(basis)
    return Gf2Basis(basis.vectors, index, cls.is_fundamental, cls.is_weakly_fundamental)


def spanning_forest(g: Graph, counter: OpCounter | None = None) -> tuple[dict[int, int | None], dict[int, int]]:
    """BFS forest from the lowest vertex of each component; returns (parent, depth)."""
    adj = {v: sorted(ns) for v, ns in g.adjacency().items()}
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    for root in sorted(adj):
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if counter is not None:
                    counter.ops += 1
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
    return parent, depth


def tree_path(u: int, v: int, parent: dict[int, int | None], depth: dict[int, int],
              counter: OpCounter | None = None) -> list[frozenset[int]]:
    """Tree edges on the path between u and v: climb parents until the paths meet."""
    path = []
    while u != v:
        if counter is not None:
            counter.ops += 1
        if depth[u] >= depth[v]:
            p = parent[u]
            path.append(frozenset((u, p)))
            u = p
        else:
            p = parent[v]
            path.append(frozenset((v, p)))
            v = p
    return path


def fundamental_cycles(g: Graph, counter: OpCounter | None = None) -> list[list[frozenset[int]]]:
    """One cycle per non-tree edge, in sorted non-tree-edge order."""
    parent, depth = spanning_forest(g, counter)
    tree = {frozenset((v, p)) for v, p in parent.items() if p is not None}
    cycles = []
    for e in sorted(g.edges, key=edge_key):
        if counter is not None:
            counter.ops += 1
        if e in tree:
            continue
        a, b = sorted(e)
        cycles.append([e] + tree_path(a, b, parent, depth, counter))
    return cycles


def cycle_basis(g: Graph) -> Gf2Basis:
    """Fundamental cycle basis of a spanning BFS forest."""
    if not g.is_graph:
        raise InputError("cycle_basis needs a graph")
    index = EdgeIndex.of(g)
    vectors = [index.vector(c) for c in fundamental_cycles(g)]
    return Gf2Basis(tuple(vectors), index, is_fundamental=True, is_weakly_fundamental=True)


def dim_formula(g: Graph) -> int:
    """``|E| - |V| + c`` with c the number of connected components."""
    return len(g.edges) - len(g.vertices) + len(g.components())


# ---------------------------------------------------------------------------
# basis classes


@dataclass(frozen=True)
class BasisClass:
    is_fundamental: bool
    is_weakly_fundamental: bool
    order: tuple[int, ...] | None  # witnessing order of basis positions

    @property
    def kind(self) -> str:
        if self.is_fundamental:
            return "fundamental"
        if self.is_weakly_fundamental:
            return "weakly_fundamental"
        return "other"


def weakly_fundamental_order(sets: Sequence[int]) -> tuple[int, ...] | None:
    """Order where every set has an element missing from all earlier ones, or None.

    Peels from the back: the last set needs an element no other set has.
    Removing sets only creates more such elements, so a greedy peel is exact.
    """
    remaining = list(range(len(sets)))
    tail: list[int] = []
    while remaining:
        for pos, i in enumerate(remaining):
            others = 0
            for j in remaining:
                if j != i:
                    others |= sets[j]
            if sets[i] & ~others:
                tail.append(i)
                remaining.pop(pos)
                break
        else:
            return None
    return tuple(reversed(tail))


def classify_basis(basis: Gf2Basis) -> BasisClass:
    bits = basis.bits()
    fundamental = True
    for i, b in enumerate(bits):
        others = 0
        for j, c in enumerate(bits):
            if j != i:
                others |= c
        if not b & ~others:
            fundamental = False
            break
    if fundamental:
        return BasisClass(True, True, tuple(range(len(bits))))
    order = weakly_fundamental_order(bits)
    return BasisClass(False, order is not None, order)


def is_simple_cycle(edges: Iterable[Iterable[int]]) -> bool:
    """True iff the edge set is nonempty, connected and 2-regular."""
    edges = [tuple(e) for e in edges]
    if not edges or any(len(e) != 2 for e in edges):
        return False
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(ns) != 2 for ns in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


@dataclass
class OpCounter:
    """Counts basic operations (edge scans, parent steps) of an algorithm."""

    ops: int = 0
