"""Edge colorings of complete graphs and monochromatic dropped-clique detection.

K_[k,t] is K_k with the edges inside a t-vertex subset removed. A copy of it in
color c is a k-set S containing a t-set T such that every pair of S that is not
inside T has color c.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


def pair_rank(i: int, j: int, n: int) -> int:
    """Lexicographic rank of the pair {i, j} among all pairs of 0..n-1."""
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PatternList:
    """Ordered Ramsey target [(k_1, t_1), ..., (k_r, t_r)]."""

    patterns: tuple[tuple[int, int], ...]

    def __init__(self, patterns: Iterable[Sequence[int]]):
        pats = tuple((int(k), int(t)) for k, t in patterns)
        if not pats:
            raise PreconditionError("pattern list must contain at least one (k, t) pair")
        for idx, (k, t) in enumerate(pats):
            if t < 1 or k < t:
                raise PreconditionError(f"pattern {idx + 1} = ({k},{t}): need k >= t >= 1")
        object.__setattr__(self, "patterns", pats)

    @classmethod
    def parse(cls, text: str) -> "PatternList":
        """Parse ``"k1,t1;k2,t2;..."``; errors name the offending item and column."""
        pats = []
        pos = 0
        for idx, chunk in enumerate(text.split(";")):
            parts = chunk.split(",")
            col = pos + 1
            if len(parts) != 2:
                raise PreconditionError(
                    f"pattern {idx + 1} at column {col} ({chunk.strip()!r}): expected 'k,t'"
                )
            try:
                k, t = (int(p) for p in parts)
            except ValueError:
                raise PreconditionError(
                    f"pattern {idx + 1} at column {col} ({chunk.strip()!r}): k and t must be integers"
                ) from None
            if t < 1 or k < t:
                raise PreconditionError(
                    f"pattern {idx + 1} at column {col} ({chunk.strip()!r}): need k >= t >= 1"
                )
            pats.append((k, t))
            pos += len(chunk) + 1
        return cls(pats)

    @property
    def r(self) -> int:
        return len(self.patterns)

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.patterns)

    @property
    def ts(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.patterns)

    def canonical(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.patterns))

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ";".join(f"{k},{t}" for k, t in self.patterns)


@dataclass(frozen=True)
class DroppedCliqueWitness:
    vertices: tuple[int, ...]  # S, sorted
    dropped: tuple[int, ...]  # T, subset of S
    color: int

    def is_valid_in(self, coloring: "CompleteColoring", k: int, t: int) -> bool:
        S, T = set(self.vertices), set(self.dropped)
        if len(S) != k or len(T) != t or not T <= S:
            return False
        return all(
            coloring.color(u, v) == self.color
            for u, v in combinations(sorted(S), 2)
            if not (u in T and v in T)
        )


class CompleteColoring:
    """An r-edge coloring of K_n, stored as a flat array in pair-rank order.

    Immutable after construction. Surjectivity is not required; see
    :attr:`is_surjective`.
    """

    def __init__(self, n: int, r: int, colors: Sequence[int] | np.ndarray):
        if n < 2:
            raise PreconditionError(f"need n >= 2 vertices, got {n}")
        if r < 1:
            raise PreconditionError(f"need r >= 1 colors, got {r}")
        arr = np.array(colors, dtype=np.int8 if r <= 127 else np.int64).reshape(-1)
        if arr.size != n * (n - 1) // 2:
            raise PreconditionError(f"K_{n} has {n * (n - 1) // 2} edges, got {arr.size} colors")
        if arr.size and (arr.min() < 0 or arr.max() >= r):
            raise PreconditionError(f"colors must lie in 0..{r - 1}")
        arr.setflags(write=False)
        self.n = n
        self.r = r
        self._colors = arr

    @classmethod
    def from_function(cls, n: int, r: int, fn) -> "CompleteColoring":
        return cls(n, r, [fn(i, j) for i, j in iter_pairs(n)])

    @classmethod
    def monochromatic(cls, n: int, r: int, c: int = 0) -> "CompleteColoring":
        return cls(n, r, [c] * (n * (n - 1) // 2))

    @property
    def colors(self) -> np.ndarray:
        return self._colors

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise PreconditionError("a vertex has no edge to itself")
        return int(self._colors[pair_rank(i, j, self.n)])

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """``adjacency[c][v]``: bitset of color-c neighbours of v."""
        adj = [[0] * self.n for _ in range(self.r)]
        for (i, j), c in zip(iter_pairs(self.n), self._colors.tolist()):
            adj[c][i] |= 1 << j
            adj[c][j] |= 1 << i
        return tuple(tuple(row) for row in adj)

    def adjacency_array(self) -> np.ndarray:
        if self.n > 62:
            raise PreconditionError("bitset kernels support at most 62 vertices")
        return np.array(self.adjacency, dtype=np.int64).reshape(self.r, self.n)

    @property
    def is_surjective(self) -> bool:
        return len(set(self._colors.tolist())) == self.r

    def induced(self, vertices: Iterable[int]) -> "CompleteColoring":
        return induced_coloring(self, vertices)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "edges": [[i, j, int(c)] for (i, j), c in zip(iter_pairs(self.n), self._colors.tolist())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "CompleteColoring":
        n, r = int(data["n"]), int(data["r"])
        colors = [-1] * (n * (n - 1) // 2)
        for i, j, c in data["edges"]:
            i, j = int(i), int(j)
            if not 0 <= i < j < n:
                raise PreconditionError(f"bad edge [{i}, {j}] for n = {n}")
            rank = pair_rank(i, j, n)
            if colors[rank] != -1:
                raise PreconditionError(f"edge [{i}, {j}] listed twice")
            colors[rank] = int(c)
        if -1 in colors:
            raise PreconditionError("coloring JSON does not cover every edge")
        return cls(n, r, colors)

    @classmethod
    def loads(cls, text: str) -> "CompleteColoring":
        return cls.from_json(json.loads(text))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompleteColoring):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self._colors, other._colors)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self._colors.tobytes()))

    def __repr__(self) -> str:
        return f"CompleteColoring(n={self.n}, r={self.r}, colors={self._colors.tolist()})"


def induced_coloring(C: CompleteColoring, vertices: Iterable[int]) -> CompleteColoring:
    """Restriction to ``vertices``, relabelled 0..|S|-1 in increasing order."""
    S = sorted(set(vertices))
    if len(S) < 2:
        raise PreconditionError("induced coloring needs at least 2 vertices")
    if S[0] < 0 or S[-1] >= C.n:
        raise PreconditionError(f"vertices must lie in 0..{C.n - 1}")
    return CompleteColoring(len(S), C.r, [C.color(S[a], S[b]) for a, b in iter_pairs(len(S))])


def find_mono_dropped_clique(C: CompleteColoring, k: int, t: int, c: int) -> DroppedCliqueWitness | None:
    """Return a color-``c`` copy of K_[k,t] in ``C``, or None.

    S splits into a color-c clique A of size k - t and a set T of t vertices
    that are c-adjacent to all of A. We grow A in increasing vertex order while
    tracking the common c-neighbourhood; T is then any t vertices from it.
    """
    if not (1 <= t <= k):
        raise PreconditionError(f"need 1 <= t <= k, got k={k}, t={t}")
    if not (0 <= c < C.r):
        raise PreconditionError(f"color {c} out of range 0..{C.r - 1}")
    n = C.n
    if k > n:
        return None
    adj = C.adjacency[c]
    full = (1 << n) - 1
    a = k - t

    def finish(A: list[int], common: int) -> DroppedCliqueWitness:
        T = list(bits(common))[:t]
        return DroppedCliqueWitness(tuple(sorted(A + T)), tuple(T), c)

    if a == 0:
        return finish([], full)

    def grow(A: list[int], cand: int, common: int) -> DroppedCliqueWitness | None:
        # cand: vertices that may still join A (greater than max(A), adjacent to all of A)
        # common: all vertices adjacent to every member of A, A excluded
        need = a - len(A)
        if need == 0:
            return finish(A, common) if bin(common).count("1") >= t else None
        if bin(cand).count("1") < need or bin(common).count("1") < need + t:
            return None
        for v in bits(cand):
            higher = cand & ~((1 << (v + 1)) - 1)
            A.append(v)
            hit = grow(A, higher & adj[v], common & adj[v])
            A.pop()
            if hit is not None:
                return hit
        return None

    return grow([], full, full)


def matching_witness(k: int) -> CompleteColoring:
    """2-coloring of K_{2(k-2)}: perfect matching {2i, 2i+1} in color 0, rest color 1.

    Contains no color-0 K_[3,2] and no color-1 K_[k,2].
    """
    if k < 4:
        raise PreconditionError(f"matching witness needs k >= 4, got {k}")
    n = 2 * (k - 2)
    return CompleteColoring.from_function(n, 2, lambda i, j: 0 if (i // 2 == j // 2) else 1)


def verify_lower_bound(C: CompleteColoring, P: PatternList) -> bool:
    """True iff C has no color-i copy of K_[k_i,t_i] for any i; certifies R(P) > C.n."""
    if C.r != P.r:
        raise PreconditionError(f"coloring uses {C.r} colors but the pattern list has {P.r}")
    return all(find_mono_dropped_clique(C, k, t, i) is None for i, (k, t) in enumerate(P))


def brute_force_dropped_clique(C: CompleteColoring, k: int, t: int, c: int) -> bool:
    """Reference scan over every (S, T) pair. Exponential; for tests only."""
    if k > C.n:
        return False
    for S in combinations(range(C.n), k):
        for T in combinations(S, t):
            Tset = set(T)
            if all(C.color(u, v) == c for u, v in combinations(S, 2) if not (u in Tset and v in Tset)):
                return True
    return False
