"""Extremal edge counts under crossing budgets.

The independent oracle for small n enumerates every subset of diagonals
directly (no shared code with the branch and bound) and filters by the
per-edge crossing budget computed from scratch.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from bookx.geometry import (
    ConvexGraph,
    complete_convex,
    edges_cross,
    has_acyclic_crossing_graph,
    local_crossing_number,
)
from bookx.maxedges import (
    SLOPES,
    _block_params,
    _crossing_bitmasks,
    dihedral_canonical,
    max_edges_composite,
    max_edges_exact,
    max_edges_forest,
    max_edges_formula,
    remainder_for_residue,
    slope,
    slope_ratio_max,
    sorted_diagonals,
    upper_envelope,
)


def oracle_max_edges(ell: int, n: int) -> int:
    """Exhaustive scan over all diagonal subsets (n <= 7 stays tractable)."""
    diagonals = [
        (i, j)
        for i, j in combinations(range(n), 2)
        if not (j - i == 1 or (i == 0 and j == n - 1))
    ]
    m = len(diagonals)
    cross = [
        [edges_cross(n, diagonals[x], diagonals[y]) for y in range(m)] for x in range(m)
    ]
    best = 0
    for mask in range(1 << m):
        chosen = [x for x in range(m) if mask >> x & 1]
        if len(chosen) <= best:
            continue
        ok = True
        for x in chosen:
            if sum(cross[x][y] for y in chosen) > ell:
                ok = False
                break
        if ok:
            best = len(chosen)
    return best


@pytest.mark.parametrize("ell", range(6))
@pytest.mark.parametrize("n", range(3, 8))
def test_search_matches_exhaustive_oracle(ell, n):
    assert max_edges_exact(ell, n).value == oracle_max_edges(ell, n)


def test_formula_values():
    assert max_edges_formula(1, 6) == 5
    assert max_edges_formula(3, 6) == 8
    assert max_edges_formula(4, 70) == 169
    assert max_edges_formula(2, 8) == 11
    for n in range(3, 12):
        assert max_edges_formula(0, n) == n - 3


def test_formula_domain():
    with pytest.raises(ValueError):
        max_edges_formula(5, 10)
    with pytest.raises(ValueError):
        max_edges_formula(4, 4)  # D_4 has 2 diagonals; the printed value 3 fails
    with pytest.raises(ValueError):
        max_edges_formula(4, 3)
    assert max_edges_exact(4, 4).value == 2


def test_exact_search_certificates_and_classes():
    rec = max_edges_exact(4, 7, enumerate_optima=True)
    assert rec.value == 11
    assert rec.optima_class_count == 2
    rec.validate()
    rec8 = max_edges_exact(4, 8)
    assert rec8.value == 13 and rec8.exact
    rec8.validate()
    assert max_edges_exact(2, 8).value == 11


def test_saturated_budget_takes_every_diagonal():
    for n in range(4, 10):
        ell = ((n - 2) // 2) * ((n - 1) // 2)  # lc of the full diagonal set
        rec = max_edges_exact(ell, n)
        assert rec.value == comb(n, 2) - n


def test_search_budget_exceeded_is_flagged():
    rec = max_edges_exact(3, 10, node_limit=50)
    assert not rec.exact
    assert rec.value >= max_edges_composite(3, 10).value
    rec.validate()


def test_golden_certificates_match_fresh_enumeration():
    from bookx import _kernels
    from bookx.maxedges import _data_graph

    recorded = {
        7: {remainder_for_residue(3).edges, _data_graph("lc4_n7_alt.json").edges},
        8: {remainder_for_residue(0).edges},
    }
    for n, stored in recorded.items():
        edges = sorted_diagonals(n)
        masks = _crossing_bitmasks(n, edges)
        _, sols = _kernels.bb_enumerate(masks, 4)
        classes = {
            dihedral_canonical(n, [e for i, e in enumerate(edges) if mask >> i & 1])
            for mask in sols
        }
        for cert_edges in stored:
            assert cert_edges in classes
    # the two stored 7-vertex certificates are the two distinct classes
    assert len(recorded[7]) == 2


def test_remainders_fit_budget():
    for residue in range(4):
        g = remainder_for_residue(residue)
        assert g.n % 4 == residue % 4 or (g.n, residue) in {(8, 0)}
        assert local_crossing_number(g) <= 4


def test_composite_matches_formula_for_ell_one():
    for n in range(4, 31):
        rec = max_edges_composite(1, n)
        assert rec.value == max_edges_formula(1, n)


def test_composite_upgraded_remainders_for_ell_four():
    rec = max_edges_composite(4, 7)
    assert rec.value == 11 and rec.certificate.n == 7
    rec22 = max_edges_composite(4, 22)
    assert rec22.value == 49  # five chained D_6 blocks
    assert rec22.certificate.edge_count == 49
    # the generic rule at ell = 9 lands on chained D_8 blocks instead
    rec9 = max_edges_composite(9, 22)
    assert rec9.value == 65
    # ell = 4 composite meets the closed form for every residue
    for n in range(5, 40):
        assert max_edges_composite(4, n).value == max_edges_formula(4, n)


def test_composite_edge_count_identity():
    # e(qH (+) D_r) = (n - r)(e(H) + 1)/(n' - 2) + a(R) with a(D_2) = -1
    for ell in range(13):
        if ell == 4:
            continue  # remainder upgrades change the arithmetic there
        nprime, _ = _block_params(ell)
        step = nprime - 2
        e_h = max_edges_composite(ell, nprime).value  # single block
        for q in range(1, 4):
            for r in range(2, nprime):
                n = q * step + r
                rec = max_edges_composite(ell, n)
                a = comb(r, 2) - r if r > 2 else -1
                assert rec.value == (n - r) * (e_h + 1) // step + a


def test_composite_certificates_respect_budget():
    for ell in (0, 1, 2, 3, 4, 5, 7, 9, 12):
        for n in (9, 14, 23):
            rec = max_edges_composite(ell, n)
            assert local_crossing_number(rec.certificate) <= ell
            assert rec.certificate.n == n


def test_sandwich_composite_exact_envelope():
    for ell in range(1, 7):
        for n in range(3, 10):
            lower = max_edges_composite(ell, n).value
            exact = max_edges_exact(ell, n).value
            assert lower <= exact
            assert exact <= upper_envelope(ell, n)


def test_slopes():
    for ell in range(5):
        assert slope(ell) == SLOPES[ell]
    # slope equals the per-block growth of the composite family
    for ell in range(1, 41):
        nprime, i = _block_params(ell)
        block = max_edges_composite(ell, nprime)
        assert slope(ell) == Fraction(block.value + 1, nprime - 2)


def test_upper_envelope_is_rational_over_sqrt():
    assert upper_envelope(0, 10) == 0
    for ell in (1, 2, 3, 4, 9):
        bound = upper_envelope(ell, 1)
        assert bound * bound >= Fraction(27 * ell, 2)
        assert bound * bound <= Fraction(27 * ell, 2) * Fraction(1001, 1000)


def test_forest_maximum():
    assert max_edges_forest(4).value == 2
    for n in range(4, 10):
        rec = max_edges_forest(n)
        assert rec.value == 2 * n - 6
        assert rec.exact
        assert has_acyclic_crossing_graph(rec.certificate)
    assert not max_edges_forest(12).exact


def test_slope_ratio_scan():
    assert slope_ratio_max(0, 10) == 1
    assert slope_ratio_max(4, 8) == Fraction(5, 2)
    assert slope_ratio_max(2, 6) == 2


def test_dihedral_canonical_invariance():
    g = max_edges_exact(4, 8).certificate
    rotated = tuple(
        tuple(sorted(((i + 3) % 8, (j + 3) % 8))) for i, j in g.edges
    )
    assert dihedral_canonical(8, g.edges) == dihedral_canonical(8, rotated)
