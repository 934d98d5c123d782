"""Stretch searches at n = 11 and 12 (non-gating; run with -m slow)."""

import pytest

from bookx.maxedges import max_edges_exact, max_edges_formula

CASES = [(ell, n) for ell in range(5) for n in (11, 12)]


@pytest.mark.slow
@pytest.mark.parametrize("ell,n", CASES)
def test_search_matches_formula_at_stretch_sizes(ell, n):
    rec = max_edges_exact(ell, n)
    assert rec.exact, f"budget exceeded at ell={ell}, n={n}"
    assert rec.value == max_edges_formula(ell, n)
