"""Convex-position graphs and their crossing calculus.

A convex graph has vertices 0..n-1 on a circle in clockwise order and
straight chords as edges.  ``G_n`` denotes the complete convex graph and
``D_n`` the complete convex graph minus the n polygon sides; sides never
cross anything, so D_n carries all the crossing structure.

This module provides the crossing count cr(G), the local crossing number
lc(G) (max crossings on a single edge), the crossing graph (vertices are
edges of G, adjacency is "these two edges cross"), the reduced complete
graphs D_n minus a prescribed set of longest diagonals, parallel
compositions (chains of convex graphs glued along merged sides), and a
fan-plus-skips construction whose crossing graph is a forest.

All types are immutable values; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels

Edge = tuple[int, int]


def _norm_edge(e) -> Edge:
    i, j = int(e[0]), int(e[1])
    if i == j:
        raise ValueError(f"edge {e!r} has equal endpoints")
    return (i, j) if i < j else (j, i)


def is_side(n: int, e: Edge) -> bool:
    i, j = e
    return j - i == 1 or (i == 0 and j == n - 1)


@dataclass(frozen=True)
class ConvexGraph:
    """n labeled vertices in convex position plus a set of chords.

    ``allow_sides=False`` restricts edges to diagonals (a subgraph of D_n);
    with ``allow_sides=True`` polygon sides may appear as edges (a subgraph
    of G_n).  Edges are stored canonically sorted so equality, hashing and
    crossing-graph node indexing are deterministic.
    """

    n: int
    edges: tuple[Edge, ...]
    allow_sides: bool = False

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need at least 3 vertices, got n={self.n}")
        norm = sorted(_norm_edge(e) for e in self.edges)
        for i, j in norm:
            if not (0 <= i < j <= self.n - 1):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n}")
            if not self.allow_sides and is_side(self.n, (i, j)):
                raise ValueError(f"edge ({i},{j}) is a polygon side (allow_sides=False)")
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        us = np.fromiter((e[0] for e in self.edges), dtype=np.int64, count=len(self.edges))
        vs = np.fromiter((e[1] for e in self.edges), dtype=np.int64, count=len(self.edges))
        return us, vs


@dataclass(frozen=True)
class CrossingGraph:
    """Vertices are the edges of a convex graph (in sorted edge order);
    adjacency records which pairs of edges cross."""

    nodes: tuple[Edge, ...]
    adjacency: tuple[tuple[int, int], ...]

    @property
    def node_count(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class CompositionSpec:
    """Ordered chain of convex graphs to glue along merged sides."""

    parts: tuple[ConvexGraph, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("composition needs at least one part")
        for p in parts:
            if p.n < 3:
                raise ValueError("every part needs at least 3 vertices")
            if p.allow_sides:
                raise ValueError("parts must not carry side edges")
        object.__setattr__(self, "parts", parts)

    @property
    def result_n(self) -> int:
        return sum(p.n for p in self.parts) - 2 * (len(self.parts) - 1)


def edges_cross(n: int, e1, e2) -> bool:
    """True iff the two chords cross strictly inside the polygon.

    For sorted pairs this is the interleaving test a < c < b < d or
    c < a < d < b; chords sharing an endpoint never cross.
    """
    a, b = _norm_edge(e1)
    c, d = _norm_edge(e2)
    for v in (a, b, c, d):
        if not 0 <= v <= n - 1:
            raise ValueError(f"vertex {v} out of range for n={n}")
    return (a < c < b < d) or (c < a < d < b)


def crossing_count(g: ConvexGraph) -> int:
    """Number of unordered edge pairs of g that cross."""
    us, vs = g.edge_arrays()
    return int(_kernels.count_crossing_pairs(us, vs))


def per_edge_crossings(g: ConvexGraph) -> np.ndarray:
    us, vs = g.edge_arrays()
    return _kernels.edge_crossing_counts(us, vs)


def local_crossing_number(g: ConvexGraph) -> int:
    """Max over edges of the per-edge crossing count (0 if edgeless)."""
    if g.edge_count == 0:
        return 0
    return int(per_edge_crossings(g).max())


def crossing_graph(g: ConvexGraph) -> CrossingGraph:
    us, vs = g.edge_arrays()
    mat = _kernels.crossing_matrix(us, vs)
    adj = [(int(x), int(y)) for x, y in zip(*np.nonzero(np.triu(mat)))]
    return CrossingGraph(nodes=g.edges, adjacency=tuple(adj))


def has_acyclic_crossing_graph(g: ConvexGraph) -> bool:
    """True iff the crossing graph of g is a forest (union-find cycle test)."""
    cg = crossing_graph(g)
    parent = list(range(cg.node_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in cg.adjacency:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
    return True


def complete_convex(n: int, include_sides: bool) -> ConvexGraph:
    """G_n (all pairs) or D_n (diagonals only)."""
    if include_sides:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if not is_side(n, (i, j))
        ]
    return ConvexGraph(n=n, edges=tuple(edges), allow_sides=include_sides)


def max_reduction_index(nprime: int) -> int:
    """Largest legal i for reduced_complete (0 when n' = 4)."""
    return max(0, (nprime - 4) // 2)


def removed_diagonals(nprime: int, i: int) -> tuple[Edge, ...]:
    """The i or i+1 longest diagonals deleted from D_{n'} at reduction level i.

    For odd n' the deleted chords are {2t, 2t + (n'-1)/2} for 0 <= t <= i
    (indices mod n'); for even n' they are {2t, 2t + n'/2} for t < i while
    i <= n'/4, and past that point the odd-indexed long diagonals
    {2t+1, 2t+1 + n'/2} join in.
    """
    if i == 0:
        return ()
    out = []
    if nprime % 2 == 1:
        if not 0 < i <= (nprime - 5) // 2:
            raise ValueError(f"i={i} out of range for n'={nprime}")
        h = (nprime - 1) // 2
        for t in range(i + 1):
            a = (2 * t) % nprime
            b = (2 * t + h) % nprime
            out.append((min(a, b), max(a, b)))
    else:
        h = nprime // 2
        if 2 * i <= h:  # i <= n'/4
            for t in range(i):
                out.append((2 * t, 2 * t + h))
        elif i <= (nprime - 4) // 2:
            for t in range(h // 2):  # 0 <= t <= n'/4 - 1
                out.append((2 * t, 2 * t + h))
            for t in range(i - h // 2 + 1):
                out.append((2 * t + 1, 2 * t + 1 + h))
        else:
            raise ValueError(f"i={i} out of range for n'={nprime}")
    return tuple(out)


def reduced_complete(nprime: int, i: int) -> ConvexGraph:
    """D_{n'} minus the level-i set of longest diagonals.

    Satisfies edge count C(n',2) - n' - i - delta and local crossing number
    floor(((n'-2)/2)^2) - i, where delta is 0 exactly when no extra diagonal
    is deleted (even n' with i <= n'/4, or i = 0).
    """
    if nprime < 4:
        raise ValueError("need n' >= 4")
    if not 0 <= i <= max_reduction_index(nprime):
        raise ValueError(f"i={i} out of range for n'={nprime}")
    removed = set(removed_diagonals(nprime, i))
    base = complete_convex(nprime, include_sides=False)
    return ConvexGraph(
        n=nprime,
        edges=tuple(e for e in base.edges if e not in removed),
        allow_sides=False,
    )


def reduction_delta(nprime: int, i: int) -> int:
    """Case indicator: |removed diagonals| = i + delta."""
    if i == 0 or (nprime % 2 == 0 and 2 * i <= nprime // 2):
        return 0
    return 1


def parallel_compose(spec) -> ConvexGraph:
    """Glue the parts into a left-to-right chain along merged sides.

    Each merge identifies one side of the running graph with one side of
    the next part and keeps the merged chord as an edge.  All layouts of a
    parallel composition share vertex count, edge count and local crossing
    number, so one canonical layout suffices: part j occupies a contiguous
    arc and the wrap-around chord of the current graph is the next merge
    site.  Result: sum(n_i) - 2(p-1) vertices and sum(e_i) + (p-1) edges.
    """
    if isinstance(spec, CompositionSpec):
        parts = spec.parts
    else:
        parts = tuple(spec)
        spec = CompositionSpec(parts=parts)
    first = parts[0]
    edges = list(first.edges)
    size = first.n
    for part in parts[1:]:
        # merged side of the running graph is the chord {0, size-1};
        # part-local vertex t maps to (size - 1 + t) mod new size
        edges.append((0, size - 1))
        offset = size - 1
        new_size = size + part.n - 2
        for a, b in part.edges:
            x = (a + offset) % new_size
            y = (b + offset) % new_size
            edges.append((min(x, y), max(x, y)))
        size = new_size
    assert size == spec.result_n
    return ConvexGraph(n=size, edges=tuple(edges), allow_sides=False)


def fan_skip_graph(n: int) -> ConvexGraph:
    """Fan from vertex 0 plus all skip diagonals avoiding vertex 0.

    Edges {0, j} for 2 <= j <= n-2 together with {j, j+2} for
    1 <= j <= n-3: that is 2n-6 edges and the crossing graph is a forest,
    which is extremal for that property.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    edges = [(0, j) for j in range(2, n - 1)]
    edges += [(j, j + 2) for j in range(1, n - 2)]
    return ConvexGraph(n=n, edges=tuple(edges), allow_sides=False)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def graph_to_text(g: ConvexGraph) -> str:
    lines = [f"n {g.n} sides={1 if g.allow_sides else 0}"]
    lines += [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> ConvexGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "n" or not head[2].startswith("sides="):
        raise ValueError(f"bad header line: {lines[0]!r}")
    n = int(head[1])
    allow = head[2].split("=", 1)[1] == "1"
    edges = []
    for ln in lines[1:]:
        i, j = ln.split()
        edges.append((int(i), int(j)))
    return ConvexGraph(n=n, edges=tuple(edges), allow_sides=allow)


def graph_to_json_dict(g: ConvexGraph) -> dict:
    return {
        "n": g.n,
        "allow_sides": g.allow_sides,
        "edges": [[i, j] for i, j in g.edges],
    }


def graph_from_json_dict(d: dict) -> ConvexGraph:
    return ConvexGraph(
        n=int(d["n"]),
        edges=tuple((int(i), int(j)) for i, j in d["edges"]),
        allow_sides=bool(d.get("allow_sides", False)),
    )
