"""Annealer behavior: reaching known optima, determinism, soundness."""

import numpy as np
import pytest

from bookx.anneal import Schedule, anneal, improve_from, proven_floor
from bookx.pages import BookDrawing, block_drawing, count_monochromatic_crossings, zk


def test_reaches_known_small_values():
    assert anneal(7, 3, seed=0).count == 2
    assert anneal(13, 5, seed=0).count == 15
    assert anneal(12, 4, seed=0).count == 18


def test_improve_from_balanced_construction_stays_put():
    res = improve_from(block_drawing(14, 4), seed=3)
    assert res.count == 53
    assert not res.improved_past_target
    assert count_monochromatic_crossings(res.drawing) == 53


def test_improve_from_single_page():
    single = BookDrawing(n=6, k=2, assignment=(0,) * 15)
    res = improve_from(single, seed=3)
    assert res.count == 3  # the known 2-page optimum for K_6


def test_zero_move_schedule_is_identity():
    start = block_drawing(10, 3)
    res = improve_from(start, seed=0, schedule=Schedule(moves=0))
    assert res.drawing == start
    assert res.count == zk(10, 3)


def test_deterministic_given_seed():
    a = anneal(11, 3, seed=5)
    b = anneal(11, 3, seed=5)
    assert a.count == b.count
    assert a.drawing == b.drawing


def test_counts_never_beat_proven_floor():
    for (n, k) in [(13, 4), (16, 5), (20, 6)]:
        res = anneal(n, k, seed=1)
        assert res.count >= proven_floor(n, k)
        assert count_monochromatic_crossings(res.drawing) == res.count


def test_stop_at_short_circuits():
    res = anneal(12, 3, seed=0, stop_at=zk(12, 3))
    assert res.count == 51


def test_input_validation():
    with pytest.raises(ValueError):
        anneal(2, 3)
    with pytest.raises(ValueError):
        anneal(5, 0)
