"""Low-level numeric kernels, numba-compiled when available.

Everything here works on flat integer arrays and bitmasks so that the hot
loops (pairwise crossing counts, branch-and-bound over diagonal subsets,
annealing sweeps) can run under numba.  Each kernel has a fallback that
needs nothing beyond numpy and plain python; the active backend is chosen
once at import time:

* numba is used when importable, unless the environment variable
  ``BOOKX_NUMBA`` is set to ``0``/``false``/``off``;
* otherwise the fallbacks run (vectorized numpy for the counting kernels,
  python-int bitsets for the subset searches, the identical un-jitted loop
  for the annealer).

``bookx bench`` times both paths on the same inputs.

Convention: vertices 0..n-1 in circular (convex) position, an edge is a
sorted pair (i, j) with i < j.  Two edges (a, b) and (c, d) cross iff their
endpoints strictly alternate around the circle, which for sorted pairs is
a < c < b < d or c < a < d < b.  Polygon sides can never satisfy this, so
they are harmless to include in any edge array.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("BOOKX_NUMBA", "1").strip().lower() not in (
    "0",
    "false",
    "off",
)


def _jit(**kw):
    kw.setdefault("cache", True)
    return numba.njit(**kw)


# ---------------------------------------------------------------------------
# crossing-pair counting
# ---------------------------------------------------------------------------


def _count_crossing_pairs_loop(us, vs):
    m = us.shape[0]
    total = 0
    for x in range(m):
        a = us[x]
        b = vs[x]
        for y in range(x + 1, m):
            c = us[y]
            d = vs[y]
            if (a < c and c < b and b < d) or (c < a and a < d and d < b):
                total += 1
    return total


def _count_crossing_pairs_numpy(us, vs):
    if us.shape[0] < 2:
        return 0
    a = us[:, None]
    b = vs[:, None]
    c = us[None, :]
    d = vs[None, :]
    # exactly one orientation of a crossing pair satisfies a < c < b < d
    return int(np.count_nonzero((a < c) & (c < b) & (b < d)))


def _edge_crossing_counts_loop(us, vs):
    m = us.shape[0]
    out = np.zeros(m, dtype=np.int64)
    for x in range(m):
        a = us[x]
        b = vs[x]
        for y in range(x + 1, m):
            c = us[y]
            d = vs[y]
            if (a < c and c < b and b < d) or (c < a and a < d and d < b):
                out[x] += 1
                out[y] += 1
    return out


def _edge_crossing_counts_numpy(us, vs):
    m = us.shape[0]
    if m < 2:
        return np.zeros(m, dtype=np.int64)
    a = us[:, None]
    b = vs[:, None]
    c = us[None, :]
    d = vs[None, :]
    cross = (a < c) & (c < b) & (b < d)
    return (cross | cross.T).sum(axis=1).astype(np.int64)


def crossing_matrix(us, vs):
    """Symmetric boolean matrix of pairwise crossings (always numpy)."""
    m = us.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=bool)
    a = us[:, None]
    b = vs[:, None]
    c = us[None, :]
    d = vs[None, :]
    cross = (a < c) & (c < b) & (b < d)
    return cross | cross.T


# ---------------------------------------------------------------------------
# branch and bound: maximum subset of diagonals, each crossed <= ell times
# ---------------------------------------------------------------------------
#
# State is a triple (chosen, cand, cnt): bitmask of chosen edges, bitmask of
# still-addable edges, and per-edge counts of chosen crossers.  An edge g is
# addable iff cnt[g] <= ell and no chosen edge crossing g is saturated
# (cnt == ell).  Pruning: |chosen| + |cand| <= best cuts the subtree.


def _bb_max_py(masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit):
    """Python-int bitset branch and bound.  Returns (best, mask, found, nodes, done)."""
    best = seed_best
    best_mask = 0
    found = False
    nodes = 0
    stack = [(init_cand, init_chosen, tuple(init_cnt))]
    while stack:
        cand, chosen, cnt = stack.pop()
        nodes += 1
        if nodes > node_limit:
            return best, best_mask, found, nodes, False
        nch = chosen.bit_count()
        if nch > best:
            best = nch
            best_mask = chosen
            found = True
        if cand == 0 or nch + cand.bit_count() <= best:
            continue
        low = cand & -cand
        e = low.bit_length() - 1
        stack.append((cand & ~low, chosen, cnt))
        ncand = cand & ~low
        nchosen = chosen | low
        ncnt = list(cnt)
        g = masks[e]
        while g:
            b = g & -g
            idx = b.bit_length() - 1
            ncnt[idx] += 1
            if nchosen >> idx & 1:
                if ncnt[idx] == ell:
                    ncand &= ~masks[idx]
            elif ncnt[idx] > ell:
                ncand &= ~b
            g &= g - 1
        if ncnt[e] == ell:
            ncand &= ~masks[e]
        stack.append((ncand, nchosen, tuple(ncnt)))
    return best, best_mask, found, nodes, True


def _bb_enumerate_py(masks, ell):
    """Collect every maximum subset (no symmetry breaking, no seeding)."""
    m = len(masks)
    best = 0
    sols = []
    stack = [((1 << m) - 1, 0, (0,) * m)]
    while stack:
        cand, chosen, cnt = stack.pop()
        nch = chosen.bit_count()
        if cand == 0:
            if nch > best:
                best = nch
                sols = [chosen]
            elif nch == best:
                sols.append(chosen)
            continue
        if nch + cand.bit_count() < best:
            continue
        low = cand & -cand
        e = low.bit_length() - 1
        stack.append((cand & ~low, chosen, cnt))
        ncand = cand & ~low
        nchosen = chosen | low
        ncnt = list(cnt)
        g = masks[e]
        while g:
            b = g & -g
            idx = b.bit_length() - 1
            ncnt[idx] += 1
            if nchosen >> idx & 1:
                if ncnt[idx] == ell:
                    ncand &= ~masks[idx]
            elif ncnt[idx] > ell:
                ncand &= ~b
            g &= g - 1
        if ncnt[e] == ell:
            ncand &= ~masks[e]
        stack.append((ncand, nchosen, tuple(ncnt)))
    return best, sols


def _popcount64_impl(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


def _bb_max_nb_impl(masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit):
    m = masks.shape[0]
    ONE = np.uint64(1)
    ZERO = np.uint64(0)
    best = seed_best
    best_mask = ZERO
    found = False
    cap = 2 * m + 4
    st_cand = np.zeros(cap, np.uint64)
    st_chosen = np.zeros(cap, np.uint64)
    st_cnt = np.zeros((cap, m), np.int16)
    st_cand[0] = init_cand
    st_chosen[0] = init_chosen
    for i in range(m):
        st_cnt[0, i] = init_cnt[i]
    top = 1
    nodes = 0
    while top > 0:
        top -= 1
        cand = st_cand[top]
        chosen = st_chosen[top]
        nodes += 1
        if nodes > node_limit:
            return best, best_mask, found, nodes, False
        nch = _popcount64(chosen)
        if nch > best:
            best = nch
            best_mask = chosen
            found = True
        if cand == ZERO or nch + _popcount64(cand) <= best:
            continue
        low = cand & (~cand + ONE)
        e = _popcount64(low - ONE)
        # exclude branch: reuse the popped frame, cnt row already in place
        st_cand[top] = cand & ~low
        st_chosen[top] = chosen
        top += 1
        # include branch
        ncand = cand & ~low
        nchosen = chosen | low
        for i in range(m):
            st_cnt[top, i] = st_cnt[top - 1, i]
        g = masks[e]
        while g != ZERO:
            b = g & (~g + ONE)
            idx = _popcount64(b - ONE)
            st_cnt[top, idx] += 1
            if (nchosen >> np.uint64(idx)) & ONE == ONE:
                if st_cnt[top, idx] == ell:
                    ncand &= ~masks[idx]
            elif st_cnt[top, idx] > ell:
                ncand &= ~b
            g &= g - ONE
        if st_cnt[top, e] == ell:
            ncand &= ~masks[e]
        st_cand[top] = ncand
        st_chosen[top] = nchosen
        top += 1
    return best, best_mask, found, nodes, True


def _bb_max_nb_call(masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit):
    arr = np.array([np.uint64(x) for x in masks], dtype=np.uint64)
    cnt = np.array(init_cnt, dtype=np.int16)
    best, mask, found, nodes, done = _bb_max_nb(
        arr,
        np.int64(ell),
        np.uint64(init_chosen),
        np.uint64(init_cand),
        cnt,
        np.int64(seed_best),
        np.int64(node_limit),
    )
    return int(best), int(mask), bool(found), int(nodes), bool(done)


def bb_max_edges(masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit):
    """Dispatch the max-subset search to the active backend.

    ``masks`` is a list of python-int crossing bitmasks.  The numba path
    needs at most 64 edges; larger instances fall back to python ints.
    """
    if USE_NUMBA and len(masks) <= 64:
        return _bb_max_nb_call(
            masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit
        )
    return _bb_max_py(masks, ell, init_chosen, init_cand, init_cnt, seed_best, node_limit)


bb_enumerate = _bb_enumerate_py


def apply_include(masks, ell, chosen, cand, cnt, e):
    """Add edge e to (chosen, cand, cnt); used to seed symmetry-broken roots."""
    low = 1 << e
    cand &= ~low
    chosen |= low
    cnt = list(cnt)
    g = masks[e]
    while g:
        b = g & -g
        idx = b.bit_length() - 1
        cnt[idx] += 1
        if chosen >> idx & 1:
            if cnt[idx] == ell:
                cand &= ~masks[idx]
        elif cnt[idx] > ell:
            cand &= ~b
        g &= g - 1
    if cnt[e] == ell:
        cand &= ~masks[e]
    return chosen, cand, cnt


# ---------------------------------------------------------------------------
# annealing sweeps
# ---------------------------------------------------------------------------
#
# Move t proposes edge_pick[t] to page page_pick[t] (remapped to skip the
# current page) and accepts per Metropolis at geometrically cooled
# temperature, reheating after `reheat_after` non-improving moves.  All
# randomness is pregenerated by the caller, so the jitted and plain paths
# produce bit-identical trajectories.


def _build_cross_tab_impl(indptr, indices, pages, k):
    m = pages.shape[0]
    tab = np.zeros((m, k), np.int64)
    for e in range(m):
        for ii in range(indptr[e], indptr[e + 1]):
            tab[e, pages[indices[ii]]] += 1
    return tab


def _rebuild_impl(indptr, indices, pages, tab, k):
    m = pages.shape[0]
    for e in range(m):
        for q in range(k):
            tab[e, q] = 0
    for e in range(m):
        for ii in range(indptr[e], indptr[e + 1]):
            tab[e, pages[indices[ii]]] += 1
    current = 0
    for e in range(m):
        current += tab[e, pages[e]]
    return current // 2


def _quench_impl(indptr, indices, pages, tab, k, current):
    """Strictly improving single-edge moves until a local minimum."""
    m = pages.shape[0]
    improved = True
    while improved:
        improved = False
        for e in range(m):
            p = pages[e]
            for q in range(k):
                if q == p:
                    continue
                delta = tab[e, q] - tab[e, p]
                if delta < 0:
                    pages[e] = q
                    current += delta
                    for ii in range(indptr[e], indptr[e + 1]):
                        f = indices[ii]
                        tab[f, p] -= 1
                        tab[f, q] += 1
                    p = q
                    improved = True
    return current


def _anneal_run_impl(
    indptr, indices, pages, k, edge_pick, page_pick, urand, t0, cooling, reheat_after
):
    m = pages.shape[0]
    tab = np.zeros((m, k), np.int64)
    current = _rebuild(indptr, indices, pages, tab, k)
    best = current
    best_pages = pages.copy()
    nmoves = edge_pick.shape[0]
    split = (nmoves * 3) // 5
    # phase 1: Metropolis with geometric cooling and reheat on stagnation
    temp = t0
    since = 0
    for t in range(split):
        e = edge_pick[t]
        p = pages[e]
        q = page_pick[t]
        if q >= p:
            q += 1
        delta = tab[e, q] - tab[e, p]
        if delta <= 0 or urand[t] < np.exp(-delta / temp):
            pages[e] = q
            current += delta
            for ii in range(indptr[e], indptr[e + 1]):
                f = indices[ii]
                tab[f, p] -= 1
                tab[f, q] += 1
            if current < best:
                best = current
                best_pages[:] = pages
                since = 0
            else:
                since += 1
        else:
            since += 1
        temp *= cooling
        if since >= reheat_after:
            temp = t0
            since = 0
    # phase 2: iterated descent; kick a few edges, quench, keep on improvement
    pages[:] = best_pages
    current = _rebuild(indptr, indices, pages, tab, k)
    current = _quench(indptr, indices, pages, tab, k, current)
    if current < best:
        best = current
        best_pages[:] = pages
    kick = 2 + m // 64
    conflicted = np.empty(m, np.int64)
    t = split
    while t + kick <= nmoves:
        for _ in range(kick):
            # kick a conflicted edge when one exists; a random edge otherwise
            nconf = 0
            for e in range(m):
                if tab[e, pages[e]] > 0:
                    conflicted[nconf] = e
                    nconf += 1
            if nconf > 0:
                e = conflicted[edge_pick[t] % nconf]
            else:
                e = edge_pick[t]
            p = pages[e]
            q = page_pick[t]
            if q >= p:
                q += 1
            pages[e] = q
            current += tab[e, q] - tab[e, p]
            for ii in range(indptr[e], indptr[e + 1]):
                f = indices[ii]
                tab[f, p] -= 1
                tab[f, q] += 1
            t += 1
        current = _quench(indptr, indices, pages, tab, k, current)
        if current < best:
            best = current
            best_pages[:] = pages
        elif current > best and urand[t - 1] > 0.15:
            # usually restart the walk from the incumbent, but keep a worse
            # basin now and then; equal cost always keeps drifting, which
            # matters on plateau-heavy landscapes
            pages[:] = best_pages
            current = _rebuild(indptr, indices, pages, tab, k)
    return best, best_pages, current


def _walk_moves_impl(indptr, indices, pages, k, edge_pick, page_pick):
    """Apply every proposed move unconditionally; returns (tab, current)."""
    m = pages.shape[0]
    tab = np.zeros((m, k), np.int64)
    for e in range(m):
        for ii in range(indptr[e], indptr[e + 1]):
            tab[e, pages[indices[ii]]] += 1
    current = 0
    for e in range(m):
        current += tab[e, pages[e]]
    current //= 2
    for t in range(edge_pick.shape[0]):
        e = edge_pick[t]
        p = pages[e]
        q = page_pick[t]
        if q >= p:
            q += 1
        current += tab[e, q] - tab[e, p]
        pages[e] = q
        for ii in range(indptr[e], indptr[e + 1]):
            f = indices[ii]
            tab[f, p] -= 1
            tab[f, q] += 1
    return tab, current


if USE_NUMBA:
    _popcount64 = _jit()(_popcount64_impl)
    _bb_max_nb = _jit()(_bb_max_nb_impl)
    _rebuild = _jit(nogil=True)(_rebuild_impl)
    _quench = _jit(nogil=True)(_quench_impl)
    count_crossing_pairs = _jit()(_count_crossing_pairs_loop)
    edge_crossing_counts = _jit()(_edge_crossing_counts_loop)
    build_cross_tab = _jit()(_build_cross_tab_impl)
    anneal_run = _jit(nogil=True)(_anneal_run_impl)
    walk_moves = _jit()(_walk_moves_impl)
else:
    _rebuild = _rebuild_impl
    _quench = _quench_impl
    count_crossing_pairs = _count_crossing_pairs_numpy
    edge_crossing_counts = _edge_crossing_counts_numpy
    build_cross_tab = _build_cross_tab_impl
    anneal_run = _anneal_run_impl
    walk_moves = _walk_moves_impl


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
