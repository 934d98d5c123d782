"""Block constructions, their variants, and the crossing-count formula."""

from fractions import Fraction
from itertools import permutations
from math import comb

import numpy as np
import pytest

from bookx.pages import (
    BookDrawing,
    ZkParams,
    all_edges,
    block_drawing,
    block_term,
    count_monochromatic_crossings,
    default_block_sizes,
    drawing_from_json_dict,
    drawing_to_json_dict,
    matching_class,
    move_boundary_edges,
    zk,
)


def test_block_term_values():
    for n in (5, 10, 17):
        assert block_term(2, n) == 0
        assert block_term(1, n) == 0
    assert block_term(3, 7) == 2
    assert block_term(4, 14) == 21
    assert block_term(11, 22) == Fraction(2475, 2)  # non-integral on its own


def test_zk_values():
    assert zk(14, 4) == 53
    assert zk(10, 2) == 60
    assert zk(12, 3) == 51
    assert zk(13, 6) == 5
    for k in range(1, 21):
        for n in range(1, min(2 * k, 40) + 1):
            assert zk(n, k) == 0


def test_zk_two_pages_closed_form():
    for n in range(4, 41):
        want = (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2) // 4
        assert zk(n, 2) == want


def test_zk_asymptotic_coefficient():
    # two-sided agreement with (2/k^2)(1 - 1/(2k)): the measured deviation
    # at n = 40k runs 2.5% (k=2) to 5.7% (k=6) and halves by n = 80k
    for k in range(2, 7):
        devs = []
        for mult in (40, 80):
            n = mult * k
            ratio = Fraction(zk(n, k), comb(n, 4))
            target = Fraction(2, k * k) * (1 - Fraction(1, 2 * k))
            devs.append(abs(ratio / target - 1))
        assert devs[0] < Fraction(6, 100)
        assert devs[1] < Fraction(3, 100)
        assert devs[1] < devs[0]


def test_matching_classes_partition():
    assert matching_class(5, 0) == ((1, 4), (2, 3))
    for n in range(3, 31):
        seen = []
        for m in range(n):
            cls = matching_class(n, m)
            seen.extend(cls)
            touched = [v for e in cls for v in e]
            assert len(touched) == len(set(touched))  # a matching
        assert sorted(seen) == sorted(all_edges(n))


def test_zk_params():
    p = ZkParams.from_nk(14, 4)
    assert (p.q, p.r) == (3, 2)
    p = ZkParams.from_nk(12, 4)  # k | n gives r = k
    assert (p.q, p.r) == (2, 4)


def test_block_drawing_counts_equal_zk_small_grid():
    for k in range(2, 7):
        for n in range(k + 1, 16):
            d = block_drawing(n, k)
            assert count_monochromatic_crossings(d) == zk(n, k)


def test_single_page_and_trivial_cases():
    d = block_drawing(5, 1)
    assert count_monochromatic_crossings(d) == comb(5, 4)
    assert count_monochromatic_crossings(block_drawing(9, 1)) == comb(9, 4)


def test_block_permutations_all_orders_13_5():
    sizes = default_block_sizes(13, 5)
    assert sorted(sizes) == [2, 2, 3, 3, 3]
    orders = set(permutations(sizes))
    assert len(orders) == 10
    for order in orders:
        d = block_drawing(13, 5, order)
        assert count_monochromatic_crossings(d) == 15


def test_block_permutations_14_4():
    for order in [(4, 4, 3, 3), (3, 4, 4, 3), (3, 3, 4, 4), (4, 3, 4, 3)]:
        assert count_monochromatic_crossings(block_drawing(14, 4, order)) == 53
    with pytest.raises(ValueError):
        block_drawing(14, 4, (4, 4, 4, 2))


def test_divisible_case_permutations_relabel_default():
    base = block_drawing(12, 3)
    # all block sizes equal, so any "permutation" is the same partition
    again = block_drawing(12, 3, (4, 4, 4))
    assert base == again
    pages = {frozenset(p) for p in base.pages()}
    assert len(pages) == 3


def test_boundary_moves_preserve_count():
    base = block_drawing(14, 4)
    # default sizes (4, 4, 3, 3): class 7 ends the second 4-block
    matching = matching_class(14, 7)
    assert move_boundary_edges(base, 7, []) == base
    for e in matching:
        d = move_boundary_edges(base, 7, [e])
        assert count_monochromatic_crossings(d) == 53
    full = move_boundary_edges(base, 7, matching)
    assert count_monochromatic_crossings(full) == 53
    # the full move yields another block tiling: sizes (4, 3, 4, 3)
    assert full == block_drawing(14, 4, (4, 3, 4, 3))


def test_boundary_move_validation():
    base = block_drawing(14, 4)
    with pytest.raises(ValueError):
        move_boundary_edges(base, 5, [])  # interior class
    with pytest.raises(ValueError):
        move_boundary_edges(base, 7, [(0, 1)])  # not in the matching
    with pytest.raises(ValueError):
        move_boundary_edges(block_drawing(12, 3), 3, [])  # equal blocks


def test_drawing_serialization_round_trip():
    d = block_drawing(9, 4)
    data = drawing_to_json_dict(d)
    assert drawing_from_json_dict(data) == d
    assert d.page_of((0, 1)) == d.assignment[0]
    bad = dict(data)
    bad["pages"] = [p[:-1] for p in bad["pages"]]
    with pytest.raises(ValueError):
        drawing_from_json_dict(bad)


def test_book_drawing_validation():
    with pytest.raises(ValueError):
        BookDrawing(n=5, k=2, assignment=(0,) * 9)
    with pytest.raises(ValueError):
        BookDrawing(n=5, k=2, assignment=(0,) * 9 + (2,))
