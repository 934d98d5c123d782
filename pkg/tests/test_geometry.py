"""Convex graph and crossing calculus tests.

The independent oracle: in convex position, every 4-subset {a<b<c<d} of
vertices spans exactly one crossing pair of chords, ({a,c}, {b,d}).  So
cr(G) equals the number of 4-subsets whose two "diagonal" chords are both
edges, with no reference to the pairwise interleaving test.
"""

from itertools import combinations

import numpy as np
import pytest

from bookx.geometry import (
    CompositionSpec,
    ConvexGraph,
    complete_convex,
    crossing_count,
    crossing_graph,
    edges_cross,
    fan_skip_graph,
    graph_from_json_dict,
    graph_from_text,
    graph_to_json_dict,
    graph_to_text,
    has_acyclic_crossing_graph,
    local_crossing_number,
    parallel_compose,
    per_edge_crossings,
    reduced_complete,
    removed_diagonals,
)


def oracle_crossings(g: ConvexGraph) -> int:
    edges = set(g.edges)
    total = 0
    for a, b, c, d in combinations(range(g.n), 4):
        if (a, c) in edges and (b, d) in edges:
            total += 1
    return total


def oracle_per_edge(g: ConvexGraph) -> dict:
    edges = set(g.edges)
    counts = {e: 0 for e in edges}
    for a, b, c, d in combinations(range(g.n), 4):
        if (a, c) in edges and (b, d) in edges:
            counts[(a, c)] += 1
            counts[(b, d)] += 1
    return counts


def test_edges_cross_basic():
    assert edges_cross(5, (0, 2), (1, 3))
    assert not edges_cross(5, (0, 2), (2, 4))  # shared endpoint
    assert not edges_cross(6, (0, 3), (1, 2))  # nested
    with pytest.raises(ValueError):
        edges_cross(5, (0, 5), (1, 3))


def test_exactly_one_crossing_pair_per_quadruple():
    for n in range(4, 10):
        for quad in combinations(range(n), 4):
            a, b, c, d = quad
            spanned = list(combinations(quad, 2))
            crossing = [
                (e, f)
                for e, f in combinations(spanned, 2)
                if edges_cross(n, e, f)
            ]
            assert crossing == [((a, c), (b, d))]


@pytest.mark.parametrize("n", range(4, 11))
def test_complete_graph_crossings_choose4(n):
    from math import comb

    assert crossing_count(complete_convex(n, True)) == comb(n, 4)
    # sides carry no crossings, so D_n counts the same
    assert crossing_count(complete_convex(n, False)) == comb(n, 4)


def test_crossing_count_examples():
    assert crossing_count(complete_convex(5, False)) == 5
    assert crossing_count(complete_convex(6, False)) == 15
    assert crossing_count(ConvexGraph(n=7, edges=())) == 0


def test_crossing_count_matches_oracle_on_random_subgraphs():
    rng = np.random.default_rng(42)
    full = complete_convex(9, True)
    for _ in range(50):
        keep = rng.random(len(full.edges)) < rng.random()
        g = ConvexGraph(
            n=9,
            edges=tuple(e for e, kept in zip(full.edges, keep) if kept),
            allow_sides=True,
        )
        assert crossing_count(g) == oracle_crossings(g)
        per = oracle_per_edge(g)
        got = per_edge_crossings(g)
        for e, cnt in zip(g.edges, got):
            assert per[e] == cnt


def test_local_crossing_number_examples():
    assert local_crossing_number(complete_convex(5, False)) == 2
    assert local_crossing_number(complete_convex(6, False)) == 4
    assert local_crossing_number(ConvexGraph(n=5, edges=((0, 2),))) == 0


def test_crossing_graph_d5_is_five_cycle():
    cg = crossing_graph(complete_convex(5, False))
    assert cg.node_count == 5
    assert len(cg.adjacency) == 5
    degree = [0] * 5
    for x, y in cg.adjacency:
        degree[x] += 1
        degree[y] += 1
    assert degree == [2] * 5
    assert not has_acyclic_crossing_graph(complete_convex(5, False))


def test_crossing_graph_trivial_cases():
    plane = ConvexGraph(n=6, edges=((0, 2), (2, 4), (0, 4)))
    assert crossing_graph(plane).adjacency == ()
    assert has_acyclic_crossing_graph(plane)
    both = ConvexGraph(n=4, edges=((0, 2), (1, 3)))
    assert crossing_graph(both).adjacency == ((0, 1),)
    assert has_acyclic_crossing_graph(both)


def test_complete_convex_edge_counts():
    assert complete_convex(5, False).edge_count == 5
    assert complete_convex(5, True).edge_count == 10
    assert complete_convex(4, False).edge_count == 2


def test_graph_validation():
    with pytest.raises(ValueError):
        ConvexGraph(n=5, edges=((0, 1),))  # side without allow_sides
    with pytest.raises(ValueError):
        ConvexGraph(n=5, edges=((0, 2), (2, 0)))  # duplicate after sorting
    with pytest.raises(ValueError):
        ConvexGraph(n=5, edges=((0, 5),))
    with pytest.raises(ValueError):
        ConvexGraph(n=5, edges=((2, 2),))


def test_reduced_complete_examples():
    g = reduced_complete(6, 1)
    assert g.edge_count == 8
    assert local_crossing_number(g) == 3
    assert reduced_complete(7, 0) == complete_convex(7, False)
    assert len(removed_diagonals(13, 4)) == 5
    assert len(removed_diagonals(16, 3)) == 3
    assert len(removed_diagonals(16, 5)) == 6
    with pytest.raises(ValueError):
        reduced_complete(6, 2)
    with pytest.raises(ValueError):
        reduced_complete(5, 1)


def test_parallel_compose_chain_of_d4_and_d3():
    d4 = complete_convex(4, False)
    d3 = complete_convex(3, False)
    comp = parallel_compose([d4, d4, d4, d3])
    assert comp.n == 9
    assert comp.edge_count == 3 * 2 + 0 + 3
    assert local_crossing_number(comp) == 1
    assert crossing_count(comp) == 3


def test_parallel_compose_identity_and_invariants():
    d5 = complete_convex(5, False)
    assert parallel_compose([d5]) == d5
    rng = np.random.default_rng(11)
    blocks = [complete_convex(int(rng.integers(3, 7)), False) for _ in range(4)]
    spec = CompositionSpec(parts=tuple(blocks))
    comp = parallel_compose(spec)
    assert comp.n == spec.result_n
    assert comp.edge_count == sum(b.edge_count for b in blocks) + len(blocks) - 1
    assert local_crossing_number(comp) == max(local_crossing_number(b) for b in blocks)
    assert crossing_count(comp) == sum(crossing_count(b) for b in blocks)


def test_compose_edge_count_matches_counting_formula():
    # chains q D_6 (+) D_r: (n - r)(e(H) + 1)/(n' - 2) + e(D_r)
    d6 = complete_convex(6, False)
    for q in range(1, 6):
        for r in range(3, 6):
            comp = parallel_compose([d6] * q + [complete_convex(r, False)])
            n = q * 4 + r
            want = (n - r) * (d6.edge_count + 1) // 4 + complete_convex(r, False).edge_count
            assert comp.n == n
            assert comp.edge_count == want
        # r = 2: the chain alone, a(R) = -1
        comp = parallel_compose([d6] * q) if q > 1 else d6
        assert comp.edge_count == q * (d6.edge_count + 1) - 1


def test_fan_skip_graph():
    for n in range(4, 21):
        w = fan_skip_graph(n)
        assert w.edge_count == 2 * n - 6
        assert has_acyclic_crossing_graph(w)


def test_text_round_trip():
    g = reduced_complete(8, 2)
    assert graph_from_text(graph_to_text(g)) == g
    assert graph_from_json_dict(graph_to_json_dict(g)) == g
    with pytest.raises(ValueError):
        graph_from_text("bogus header\n0 2\n")
    text = graph_to_text(complete_convex(5, True))
    assert text.splitlines()[0] == "n 5 sides=1"
