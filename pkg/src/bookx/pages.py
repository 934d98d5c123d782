"""k-page book drawings of K_n in the circular model.

A k-page drawing assigns every edge of the complete convex graph G_n to one
of k pages; its cost is the number of monochromatic crossings.  The
matchings g_m = all pairs {i, j} with i + j = m (mod n) partition the edges
of G_n into n classes, each parallel to a side or to a shortest diagonal.

Writing n = qk + r with 0 < r <= k, the balanced block construction gives
q + 1 consecutive classes to each of r pages and q consecutive classes to
the other k - r pages; its crossing count is

    zk(n, k) = (n mod k) F(q + 1, n) + (k - (n mod k)) F(q, n),
    F(r, n)  = r (r^2 - 3r + 2)(2n - 3 - r) / 24,

which is the conjectured k-page crossing number of K_n.  Two families of
variants provably keep that count: permuting the block sizes, and moving
any subset of a boundary matching of a (q+1)-block into an adjacent
q-block.  Both are verified against the crossing counter in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .geometry import Edge, _norm_edge, is_side


def all_edges(n: int) -> tuple[Edge, ...]:
    """Edges of G_n in lexicographic order (the canonical edge indexing)."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class ZkParams:
    """n = qk + r with 0 < r <= k (so r = k when k divides n)."""

    n: int
    k: int
    q: int
    r: int

    @classmethod
    def from_nk(cls, n: int, k: int) -> "ZkParams":
        r = n % k
        q = n // k
        if r == 0:
            r = k
            q -= 1
        assert q * k + r == n and 0 < r <= k
        return cls(n=n, k=k, q=q, r=r)


@dataclass(frozen=True)
class BookDrawing:
    """Assignment of all C(n,2) edges of K_n (sides included) to k pages.

    Stored as one page index per edge of ``all_edges(n)``; that fixed order
    makes drawings hashable and their serialization byte-stable.
    """

    n: int
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need k >= 1")
        m = self.n * (self.n - 1) // 2
        if len(self.assignment) != m:
            raise ValueError(f"expected {m} page entries, got {len(self.assignment)}")
        if any(not 0 <= p < self.k for p in self.assignment):
            raise ValueError("page index out of range")

    def page_of(self, edge) -> int:
        e = _norm_edge(edge)
        i, j = e
        idx = i * (2 * self.n - i - 1) // 2 + (j - i - 1)
        return self.assignment[idx]

    def pages(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.k)]
        for e, p in zip(all_edges(self.n), self.assignment):
            out[p].append(e)
        return out

    def with_pages(self, mapping: dict[Edge, int]) -> "BookDrawing":
        edges = all_edges(self.n)
        new = list(self.assignment)
        for e, p in mapping.items():
            i, j = _norm_edge(e)
            idx = i * (2 * self.n - i - 1) // 2 + (j - i - 1)
            new[idx] = p
        return BookDrawing(n=self.n, k=self.k, assignment=tuple(new))


def block_term(r: int, n: int) -> Fraction:
    """Crossings contributed by one page holding r consecutive matching
    classes: F(r, n) = r(r^2-3r+2)(2n-3-r)/24, exact.  May be non-integral
    on its own; only the full sum zk(n, k) is guaranteed integral."""
    if r < 0 or n < 0:
        raise ValueError("need r >= 0 and n >= 0")
    return Fraction(r * (r * r - 3 * r + 2) * (2 * n - 3 - r), 24)


def zk(n: int, k: int) -> int:
    """Crossing count of the balanced block construction (the conjectured
    k-page crossing number of K_n)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rem = n % k
    q = n // k
    value = rem * block_term(q + 1, n) + (k - rem) * block_term(q, n)
    assert value.denominator == 1, (n, k, value)
    return int(value)


def matching_class(n: int, m: int) -> tuple[Edge, ...]:
    """The matching g_m: all pairs {i, j}, i != j, with i + j = m (mod n).

    The n classes g_0..g_{n-1} partition the edges of G_n and no two edges
    of a class share an endpoint.
    """
    if not 0 <= m < n:
        raise ValueError(f"need 0 <= m < n, got m={m}")
    out = []
    for i in range(n):
        j = (m - i) % n
        if i < j:
            out.append((i, j))
    return tuple(out)


def _drawing_from_class_pages(n: int, k: int, class_page: list[int]) -> BookDrawing:
    page_by_edge = {}
    for m in range(n):
        for e in matching_class(n, m):
            page_by_edge[e] = class_page[m]
    assignment = tuple(page_by_edge[e] for e in all_edges(n))
    return BookDrawing(n=n, k=k, assignment=assignment)


def default_block_sizes(n: int, k: int) -> tuple[int, ...]:
    p = ZkParams.from_nk(n, k)
    return (p.q + 1,) * p.r + (p.q,) * (k - p.r)


def block_drawing(n: int, k: int, sizes=None) -> BookDrawing:
    """Tile g_0..g_{n-1} into consecutive blocks, one block per page.

    With ``sizes=None`` the first r pages take q+1 classes and the rest
    take q (the balanced construction).  Any permutation of those block
    sizes may be passed instead; every such drawing has zk(n, k)
    monochromatic crossings.
    """
    if n < 3 or k < 1:
        raise ValueError("need n >= 3 and k >= 1")
    default = default_block_sizes(n, k)
    if sizes is None:
        sizes = default
    else:
        sizes = tuple(int(s) for s in sizes)
        if sorted(sizes) != sorted(default):
            raise ValueError(
                f"sizes must be a permutation of {sorted(default)}, got {sorted(sizes)}"
            )
    class_page = [0] * n
    start = 0
    for page, size in enumerate(sizes):
        for m in range(start, start + size):
            class_page[m] = page
        start += size
    assert start == n
    return _drawing_from_class_pages(n, k, class_page)


def block_structure(d: BookDrawing) -> list[tuple[int, int, int]]:
    """Recover (page, first_class, size) blocks of a block drawing.

    Raises ValueError if the drawing is not a tiling of g_0..g_{n-1} by
    consecutive whole classes (e.g. after a partial boundary move).
    """
    n = d.n
    class_page = []
    for m in range(n):
        pages = {d.page_of(e) for e in matching_class(n, m)}
        if len(pages) != 1:
            raise ValueError(f"matching class {m} is split across pages")
        class_page.append(pages.pop())
    blocks = []
    start = 0
    for m in range(1, n + 1):
        if m == n or class_page[m] != class_page[m - 1]:
            blocks.append((class_page[start], start, m - start))
            start = m
    pages_seen = [b[0] for b in blocks]
    if len(set(pages_seen)) != len(pages_seen) or len(blocks) > d.k:
        raise ValueError("drawing is not a one-block-per-page tiling")
    return blocks


def move_boundary_edges(d: BookDrawing, boundary: int, subset) -> BookDrawing:
    """Move a subset of a boundary matching into the adjacent smaller block.

    ``boundary`` names a matching class that is the outermost class of a
    (q+1)-block sitting next to a q-block; the subset is reassigned to that
    neighbor's page.  Crossing count is preserved for any subset.
    """
    blocks = block_structure(d)
    q = min(size for _, _, size in blocks)
    qq = max(size for _, _, size in blocks)
    if qq == q:
        raise ValueError("all blocks have equal size; no movable boundary")
    target_page = None
    for idx, (page, start, size) in enumerate(blocks):
        if size != qq:
            continue
        if boundary == start + size - 1 and idx + 1 < len(blocks):
            nxt = blocks[idx + 1]
            if nxt[2] == q:
                target_page = nxt[0]
        if boundary == start and idx > 0:
            prv = blocks[idx - 1]
            if prv[2] == q:
                target_page = prv[0]
    if target_page is None:
        raise ValueError(
            f"class {boundary} is not a movable boundary between a large and a small block"
        )
    matching = set(matching_class(d.n, boundary))
    subset = [_norm_edge(e) for e in subset]
    for e in subset:
        if e not in matching:
            raise ValueError(f"edge {e} is not in matching class {boundary}")
    return d.with_pages({e: target_page for e in subset})


def count_monochromatic_crossings(d: BookDrawing) -> int:
    """Total crossings between same-page edges (sides cross nothing)."""
    total = 0
    for page_edges in d.pages():
        diag = [(i, j) for i, j in page_edges if not is_side(d.n, (i, j))]
        if len(diag) < 2:
            continue
        us = np.array([e[0] for e in diag], dtype=np.int64)
        vs = np.array([e[1] for e in diag], dtype=np.int64)
        total += int(_kernels.count_crossing_pairs(us, vs))
    return total


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def drawing_to_json_dict(d: BookDrawing) -> dict:
    return {
        "n": d.n,
        "k": d.k,
        "pages": [[[i, j] for i, j in page] for page in d.pages()],
    }


def drawing_from_json_dict(data: dict) -> BookDrawing:
    n = int(data["n"])
    k = int(data["k"])
    mapping = {}
    for p, page in enumerate(data["pages"]):
        for e in page:
            mapping[_norm_edge(e)] = p
    expected = set(all_edges(n))
    if set(mapping) != expected:
        raise ValueError("pages do not cover every edge of K_n exactly once")
    assignment = tuple(mapping[e] for e in all_edges(n))
    return BookDrawing(n=n, k=k, assignment=assignment)
