"""Hot loops: chi-coloring DFS over edge colorings and certified log-factorial sums.

Every function here takes and returns numpy arrays / scalars only so that it can
be compiled by numba. Bitsets are ``int64`` masks over at most 62 vertices.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, jit

UNIT_ROUNDOFF = 2.0**-53
# Assumed worst-case error of a library log() call, in units of roundoff.
# glibc and numpy's SIMD logs are both well inside 4 ulp.
LOG_ERR_UNITS = 8.0


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def is_chi_mask(adj, r, mask):
    """Greedy peeling restricted to the vertex set ``mask``.

    ``adj[c, v]`` is the bitset of neighbours of ``v`` through color-``c`` edges.
    Peels the lowest-indexed vertex whose edges into the remaining set share a
    color; succeeds once at most two vertices remain.
    """
    rem = mask
    cnt = popcount(rem)
    while cnt > 2:
        found = False
        bits = rem
        while bits:
            low = bits & -bits
            v = 0
            while (low >> v) != 1:
                v += 1
            others = rem & ~low
            for c in range(r):
                if (adj[c, v] & rem) == others:
                    found = True
                    break
            if found:
                rem = others
                break
            bits &= bits - 1
        if not found:
            return False
        cnt -= 1
    return True


@jit
def chi_avoid_dfs(n, r, ei, ej, sub_off, subsets, surjective, budget, prefix, out_colors, count_all):
    """Search for a coloring of K_n with no chi-colored k-subset.

    Edges are visited in the order given by ``ei``/``ej`` (column order: every
    edge inside ``{0..j}`` precedes the edges to ``j+1``). ``subsets[sub_off[e]:
    sub_off[e+1]]`` lists the k-subsets completed by edge ``e``. Colors are
    canonical under global color permutations: edge ``e`` may only use colors
    up to one past the largest color used before it. The first ``len(prefix)``
    edges are pinned to ``prefix`` (a partition of the search space).

    Returns ``(status, nodes, count)``: status 1 = avoider written to
    ``out_colors``, 0 = none exists in this partition, -1 = node budget
    exhausted. With ``count_all`` the search never stops early: ``count`` is
    the number of canonical avoiders, ``out_colors`` holds the first one and
    status is 1 iff ``count > 0``.
    """
    m = ei.shape[0]
    plen = prefix.shape[0]
    adj = np.zeros((r, n), dtype=np.int64)
    colors = np.full(m, -1, dtype=np.int64)
    used_before = np.zeros(m + 1, dtype=np.int64)  # number of distinct colors on edges < e
    nodes = 0
    count = 0
    e = 0
    nxt = 0
    if plen > 0:
        nxt = prefix[0]
    while True:
        if e == m:
            if count == 0:
                for q in range(m):
                    out_colors[q] = colors[q]
            count += 1
            if not count_all:
                return 1, nodes, count
            nxt = r  # exhausts the leaf level and triggers backtracking
            e_leaf = True
        else:
            e_leaf = False
        if e_leaf:
            hi = -1
        else:
            limit = used_before[e]
            if limit > r - 1:
                limit = r - 1
            if e < plen:
                hi = prefix[e]
            else:
                hi = limit
        if nxt > hi:
            # backtrack
            e -= 1
            if e < 0 or e < plen:
                return (1 if count > 0 else 0), nodes, count
            c = colors[e]
            i = ei[e]
            j = ej[e]
            adj[c, i] &= ~(np.int64(1) << j)
            adj[c, j] &= ~(np.int64(1) << i)
            colors[e] = -1
            nxt = c + 1
            continue
        c = nxt
        nodes += 1
        if nodes > budget:
            return -1, nodes, count
        i = ei[e]
        j = ej[e]
        used = used_before[e]
        if c + 1 > used:
            used = c + 1
        ok = True
        if surjective and r - used > m - e - 1:
            ok = False
        if ok:
            adj[c, i] |= np.int64(1) << j
            adj[c, j] |= np.int64(1) << i
            for s in range(sub_off[e], sub_off[e + 1]):
                if is_chi_mask(adj, r, subsets[s]):
                    ok = False
                    break
            if not ok:
                adj[c, i] &= ~(np.int64(1) << j)
                adj[c, j] &= ~(np.int64(1) << i)
        if not ok:
            nxt = c + 1
            continue
        colors[e] = c
        used_before[e + 1] = used
        e += 1
        nxt = 0
        if e < plen:
            nxt = prefix[e]


@jit
def _log_factorial_prefix_loop(N):
    logf = np.zeros(N + 1)
    err = np.zeros(N + 1)
    s = 0.0
    bound = 0.0
    for j in range(2, N + 1):
        x = math.log(j)
        s = s + x
        bound += LOG_ERR_UNITS * UNIT_ROUNDOFF * x + 1.01 * UNIT_ROUNDOFF * s
        logf[j] = s
        err[j] = bound
    return logf, err


def _log_factorial_prefix_numpy(N):
    logs = np.log(np.arange(1, N + 1, dtype=np.float64))
    logf = np.zeros(N + 1)
    logf[1:] = np.cumsum(logs)
    # sequential prefix sums: each step adds at most u * |partial sum|
    err = np.zeros(N + 1)
    err[1:] = LOG_ERR_UNITS * UNIT_ROUNDOFF * logf[1:] + 1.01 * UNIT_ROUNDOFF * np.cumsum(logf[1:])
    return logf, err


def log_factorial_prefix(N: int, use_numba: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``(logf, err)`` with ``|logf[j] - ln j!| <= err[j]`` for ``0 <= j <= N``."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _log_factorial_prefix_loop(N)
    return _log_factorial_prefix_numpy(N)
