"""chi_r-colorings: recognition, closed forms for chi_r(3) and g(k, r), exhaustive search.

A coloring of K_n is a chi_r-coloring when some vertex ordering v_1..v_n and
colors phi(1..n) make every edge {v_i, v_j} (i < j) take color phi(i): each
vertex sees a single color towards all later vertices.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coloring import CompleteColoring, PreconditionError, bits

log = logging.getLogger(__name__)

ORACLE_CAP = 8
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ChiCertificate:
    ordering: tuple[int, ...]  # ordering[p] = vertex carrying label p + 1
    phi: tuple[int, ...]  # phi[p] = color of every edge from position p to a later position

    def is_valid_for(self, C: CompleteColoring) -> bool:
        if sorted(self.ordering) != list(range(C.n)) or len(self.phi) != C.n:
            return False
        for p in range(C.n):
            for q in range(p + 1, C.n):
                if C.color(self.ordering[p], self.ordering[q]) != self.phi[p]:
                    return False
        return True


def _peel(adj: tuple[tuple[int, ...], ...], r: int, mask: int) -> list[tuple[int, int]] | None:
    """Greedy peeling on ``mask``: [(vertex, color), ...] or None when stuck."""
    order = []
    rem = mask
    while bin(rem).count("1") > 2:
        for v in bits(rem):
            others = rem & ~(1 << v)
            c = next((c for c in range(r) if adj[c][v] & rem == others), None)
            if c is not None:
                order.append((v, c))
                rem = others
                break
        else:
            return None
    tail = list(bits(rem))
    if len(tail) == 2:
        u, w = tail
        c = next(c for c in range(r) if adj[c][u] >> w & 1)
        order += [(u, c), (w, c)]
    else:
        order += [(v, 0) for v in tail]
    return order


def recognize_chi(C: CompleteColoring) -> ChiCertificate | None:
    """Certificate of a chi_r-coloring, or None.

    Peeling any vertex that is monochromatic towards the rest keeps a
    chi_r-coloring a chi_r-coloring, so the greedy choice never has to backtrack.
    The last label's phi is unconstrained; it is set to the color of the last edge.
    """
    order = _peel(C.adjacency, C.r, (1 << C.n) - 1)
    if order is None:
        return None
    return ChiCertificate(tuple(v for v, _ in order), tuple(c for _, c in order))


def is_chi(C: CompleteColoring) -> bool:
    return _peel(C.adjacency, C.r, (1 << C.n) - 1) is not None


def recognize_chi_oracle(C: CompleteColoring, cap: int = ORACLE_CAP) -> bool:
    """Exhaustive check over all n! vertex orderings."""
    if C.n > cap:
        raise PreconditionError(f"oracle refuses n = {C.n} > cap {cap} ({math.factorial(C.n)} orderings)")
    n = C.n
    for perm in itertools.permutations(range(n)):
        if all(
            len({C.color(perm[p], perm[q]) for q in range(p + 1, n)}) <= 1 for p in range(n - 2)
        ):
            return True
    return False


def chi3_formula(r: int) -> int:
    """chi_r(3): r + 1 for even r, r + 2 for odd r."""
    if r < 2:
        raise PreconditionError(f"need r >= 2, got {r}")
    return r + 1 if r % 2 == 0 else r + 2


def g_bound(k: int, r: int) -> int:
    """Closed-form upper bound g(k, r) on chi_r(k)."""
    if k < 3 or r < 2:
        raise PreconditionError(f"g(k, r) needs k >= 3 and r >= 2, got k={k}, r={r}")
    if r % 2:
        return (r ** (k - 1) - 1) // (r - 1) + 1
    return (r ** (k - 3) - 1) // (r - 1) + r ** (k - 2) + 1


def chi_recurrence_step(prev: int, r: int) -> int:
    """Upper bound on chi_r(k) given chi_r(k-1) <= prev."""
    if prev < 2 or r < 2:
        raise PreconditionError(f"need prev >= 2 and r >= 2, got prev={prev}, r={r}")
    return r * prev - r + 2


def chi_upper(k: int, r: int) -> int:
    """Best known closed-form value/bound for chi_r(k), k >= 1."""
    if k <= 2:
        return max(k, 1)
    return g_bound(k, r)


# --------------------------------------------------------------------- search


@dataclass
class ChiSearchReport:
    r: int
    k: int
    surjective_only: bool
    value: int | None  # exact chi_r(k) when known
    lower: int  # chi_r(k) >= lower
    upper: int | None  # chi_r(k) <= upper (None when not established)
    exact: bool
    witness: CompleteColoring | None
    colorings_examined: int
    levels: list[dict] = field(default_factory=list)
    budget: int = DEFAULT_BUDGET

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "surjective_only": self.surjective_only,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "colorings_examined": self.colorings_examined,
            "budget": self.budget,
            "levels": self.levels,
        }


def _edge_plan(n: int, k: int):
    """Column-order edges and, per edge, the k-subsets it completes."""
    ei, ej, off, subs = [], [], [0], []
    for j in range(1, n):
        for i in range(j):
            ei.append(i)
            ej.append(j)
            base = (1 << i) | (1 << j)
            for rest in itertools.combinations(range(i), k - 2):
                mask = base
                for v in rest:
                    mask |= 1 << v
                subs.append(mask)
            off.append(len(subs))
    as_arr = lambda xs: np.array(xs, dtype=np.int64)  # noqa: E731
    return as_arr(ei), as_arr(ej), as_arr(off), as_arr(subs)


def _canonical_prefixes(m: int, r: int, length: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix: list[int], used: int):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for c in range(min(used + 1, r)):
            prefix.append(c)
            rec(prefix, max(used, c + 1))
            prefix.pop()

    rec([], 0)
    return out


def _run_partition(args):
    n, r, k, surjective, budget, prefix, count_all = args
    ei, ej, off, subs = _edge_plan(n, k)
    out = np.zeros(ei.shape[0], dtype=np.int64)
    status, nodes, count = kernels.chi_avoid_dfs(
        n, r, ei, ej, off, subs, surjective, budget, np.array(prefix, dtype=np.int64), out, count_all
    )
    return int(status), int(nodes), int(count), out


def _to_coloring(n: int, r: int, column_colors: np.ndarray) -> CompleteColoring:
    colors = {}
    e = 0
    for j in range(1, n):
        for i in range(j):
            colors[(i, j)] = int(column_colors[e])
            e += 1
    return CompleteColoring.from_function(n, r, lambda i, j: colors[(i, j)])


def search_level(
    r: int,
    k: int,
    n: int,
    surjective_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    count_all: bool = False,
) -> tuple[int, int, int, CompleteColoring | None]:
    """Decide whether some coloring of K_n avoids every chi_r-colored K_k.

    Returns ``(status, nodes, canonical_avoider_count, first_avoider)`` with
    status as in :func:`kernels.chi_avoid_dfs`. The first avoider is the
    lexicographically least canonical one in column edge order, independent of
    ``workers``.
    """
    m = n * (n - 1) // 2
    if workers <= 1:
        parts = [()]
    else:
        length = min(m, max(1, math.ceil(math.log(4 * workers, max(r, 2)))))
        parts = _canonical_prefixes(m, r, length)
    per_budget = budget if len(parts) == 1 else max(1, budget // len(parts))
    jobs = [(n, r, k, surjective_only, per_budget, p, count_all) for p in parts]
    if workers <= 1 or len(parts) == 1:
        results = []
        for job in jobs:
            res = _run_partition(job)
            results.append(res)
            if res[0] == 1 and not count_all:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_partition, jobs))
    nodes = sum(res[1] for res in results)
    count = sum(res[2] for res in results)
    first = next((res for res in results if res[0] == 1), None)
    if first is not None:
        return 1, nodes, count, _to_coloring(n, r, first[3])
    if any(res[0] == -1 for res in results):
        return -1, nodes, count, None
    return 0, nodes, count, None


def chi_search(
    r: int,
    k: int,
    n_max: int,
    surjective_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ChiSearchReport:
    """Compute chi_r(k) by exhaustive search over n = k..n_max.

    For each n the search looks for an r-coloring of K_n (surjective only if
    requested) in which no k-subset induces a chi_r-coloring. The first n with
    no such avoider is chi_r(k); the avoider found at n - 1 is the witness. A
    level with no surjective colorings at all is skipped as vacuous. Running
    past ``budget`` explored nodes yields an inexact, bracketed report.
    """
    if r < 1:
        raise PreconditionError(f"need r >= 1, got {r}")
    if k < 2 or n_max < k:
        raise PreconditionError(f"need 2 <= k <= n_max, got k={k}, n_max={n_max}")
    if n_max > 62:
        raise PreconditionError("search supports at most 62 vertices")
    if k == 2:
        return ChiSearchReport(r, k, surjective_only, 2, 2, 2, True, None, 0, budget=budget)

    def trivial_witness(n: int) -> CompleteColoring | None:
        # K_{k-1} holds no k-clique at all; pick the lexicographically least allowed coloring
        m = n * (n - 1) // 2
        if surjective_only:
            if r > m:
                return None
            return CompleteColoring(n, r, list(range(r)) + [r - 1] * (m - r))
        return CompleteColoring.monochromatic(n, r)

    witness = trivial_witness(k - 1)
    lower = k
    examined = 0
    levels = []
    for n in range(k, n_max + 1):
        m = n * (n - 1) // 2
        if surjective_only and r > m:
            levels.append({"n": n, "status": "vacuous", "nodes": 0})
            continue
        status, nodes, _, avoider = search_level(
            r, k, n, surjective_only, budget - examined, workers
        )
        examined += nodes
        log.debug("chi search r=%d k=%d n=%d status=%d nodes=%d", r, k, n, status, nodes)
        if status == 1:
            levels.append({"n": n, "status": "avoider", "nodes": nodes})
            witness = avoider
            lower = n + 1
            continue
        if status == -1:
            levels.append({"n": n, "status": "budget", "nodes": nodes})
            return ChiSearchReport(r, k, surjective_only, None, lower, None, False, witness, examined, levels, budget)
        levels.append({"n": n, "status": "universal", "nodes": nodes})
        return ChiSearchReport(r, k, surjective_only, n, n, n, True, witness, examined, levels, budget)
    return ChiSearchReport(r, k, surjective_only, None, lower, None, False, witness, examined, levels, budget)


def contains_chi_clique(C: CompleteColoring, k: int) -> bool:
    """Whether some k-subset of C induces a chi_r-coloring (direct scan)."""
    if k > C.n:
        return False
    adj = C.adjacency
    for S in itertools.combinations(range(C.n), k):
        mask = 0
        for v in S:
            mask |= 1 << v
        if _peel(adj, C.r, mask) is not None:
            return True
    return False


def unreduced_avoiders(r: int, k: int, n: int, surjective_only: bool = False) -> list[CompleteColoring]:
    """Every coloring of K_n avoiding chi_r-colored K_k, by plain enumeration.

    No symmetry reduction and no pruning; for validating :func:`search_level`
    at tiny sizes.
    """
    m = n * (n - 1) // 2
    out = []
    for colors in itertools.product(range(r), repeat=m):
        if surjective_only and len(set(colors)) < r:
            continue
        C = CompleteColoring(n, r, colors)
        if not contains_chi_clique(C, k):
            out.append(C)
    return out
