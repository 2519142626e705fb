"""Upper bounds on R([k_1,t_1], ..., [k_r,t_r]) with derivation traces.

Methods:

* ``base``       some k_i = t_i: K_[t,t] has no edges, so R = min{t_i : k_i = t_i}.
* ``recursive``  R(P) <= sum_i R(P with k_i - 1) - (r - 2) when every k_i > t_i,
                 memoised over sorted pattern keys and capped by seed values.
* ``explicit``   max_i t_i * multinomial(k_1 - t_1, ..., k_r - t_r).
* ``poly``       closed forms for R([s,2],[k,2]) and R([s,2],[k,1]).
* ``chi``        g(k, r) with k = sum_i (k_i - t_i - 1) + 1 + max_i t_i.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction as Fr
from typing import Iterable, Sequence

from .arith import factorial, multinomial
from .chi import chi_upper
from .coloring import PatternList, PreconditionError, matching_witness, verify_lower_bound
from .seeds import Key, SeedTable, canonical_key, key_str

CITE_BASE = "K_[t,t] has no edges: R = min{t_i : k_i = t_i}"
CITE_RECURSION = "vertex-neighbourhood recursion: sum_i R(P, k_i - 1) - (r - 2)"
CITE_SEED = "known-values table"
CITE_EXPLICIT = "multinomial bound: max t_i * (sum (k_i - t_i))! / prod (k_i - t_i)!"
CITE_SYMMETRIC = "symmetric multinomial bound: t * (r(k-t))! / ((k-t)!)^r"
CITE_CHI = "R(P) <= chi_r(sum (k_i - t_i - 1) + 1 + max t_i) <= g(k, r)"
CITE_POLY = "closed form obtained by summing the recursion from a table seed"
CITE_MATCHING = "perfect-matching coloring of K_{2(k-2)}, verified by exhaustive detector"

METHODS = ("base", "seed", "poly", "recursive", "explicit", "chi")


@dataclass
class TraceStep:
    method: str
    citation: str
    value: int
    node: str | None = None
    uses: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)


@dataclass
class BoundResult:
    value: int
    kind: str  # "lower" | "upper" | "exact"
    method: str
    trace: list[TraceStep]
    lower: int | None = None
    patterns: str | None = None

    @property
    def interval(self) -> tuple[int | None, int]:
        return (self.lower, self.value)

    def to_json(self) -> dict:
        return {
            "patterns": self.patterns,
            "value": self.value,
            "kind": self.kind,
            "method": self.method,
            "lower": self.lower,
            "trace": [asdict(s) for s in self.trace],
        }


def _as_patterns(P) -> PatternList:
    return P if isinstance(P, PatternList) else PatternList(P)


# ------------------------------------------------------------------ base case


def base_case(P) -> BoundResult | None:
    P = _as_patterns(P)
    eq = [t for k, t in P if k == t]
    if not eq:
        return None
    v = min(eq)
    step = TraceStep("base", CITE_BASE, v, node=key_str(P.canonical()))
    return BoundResult(v, "exact", "base", [step], lower=v, patterns=str(P))


# ------------------------------------------------------------ explicit bounds


def explicit_bound(P) -> BoundResult:
    P = _as_patterns(P)
    base = base_case(P)
    if base is not None:
        return base
    deficits = [k - t for k, t in P]
    v = max(P.ts) * multinomial(deficits)
    step = TraceStep(
        "explicit", CITE_EXPLICIT, v, node=key_str(P.canonical()),
        detail={"max_t": max(P.ts), "deficits": deficits},
    )
    return BoundResult(v, "upper", "explicit", [step], patterns=str(P))


def symmetric_bound(k: int, t: int, r: int) -> BoundResult:
    """Bound for r copies of [k, t]; t = 1 is the classical (rk-r)!/((k-1)!)^r."""
    if not (k >= t >= 1) or r < 2:
        raise PreconditionError(f"need k >= t >= 1 and r >= 2, got k={k}, t={t}, r={r}")
    d = k - t
    v = int(t * factorial(r * d) // factorial(d) ** r)
    P = PatternList([(k, t)] * r)
    step = TraceStep("symmetric", CITE_SYMMETRIC, v, node=key_str(P.canonical()), detail={"k": k, "t": t, "r": r})
    return BoundResult(v, "upper", "symmetric", [step], patterns=str(P))


# ------------------------------------------------------------ recursive bound


def _dp_node(key: Key, seeds: SeedTable, cache: dict) -> tuple[int, str, tuple[Key, ...]]:
    hit = cache.get(key)
    if hit is not None:
        return hit
    # (value, branch, children); ties resolve in list order
    options: list[tuple[int, int, str, tuple[Key, ...]]] = []
    eq = [t for k, t in key if k == t]
    if eq:
        options.append((min(eq), 0, "base", ()))
    up = seeds.upper(key)
    if up is not None:
        options.append((up, 1, "seed", ()))
    if all(k > t for k, t in key):
        children = []
        for i in range(len(key)):
            child = list(key)
            child[i] = (key[i][0] - 1, key[i][1])
            children.append(tuple(sorted(child)))
        total = sum(_dp_node(c, seeds, cache)[0] for c in children) - (len(key) - 2)
        options.append((total, 2, "recursion", tuple(children)))
    value, _, branch, children = min(options)
    cache[key] = (value, branch, children)
    return value, branch, children


def _dp_trace(root: Key, seeds: SeedTable, cache: dict) -> list[TraceStep]:
    steps: list[TraceStep] = []
    seen: set[Key] = set()

    def visit(key: Key):
        if key in seen:
            return
        seen.add(key)
        value, branch, children = cache[key]
        for c in dict.fromkeys(children):
            visit(c)
        if branch == "base":
            steps.append(TraceStep("base", CITE_BASE, value, node=key_str(key)))
        elif branch == "seed":
            src = seeds.entries[key].source
            steps.append(TraceStep("seed", CITE_SEED, value, node=key_str(key), detail={"source": src}))
        else:
            steps.append(
                TraceStep("recursion", CITE_RECURSION, value, node=key_str(key), uses=[key_str(c) for c in children])
            )

    visit(root)
    return steps


def recursive_bound(P, seeds: SeedTable | None = None) -> BoundResult:
    """Memoised recursion over sorted pattern keys; ``seeds`` defaults to the shipped table."""
    P = _as_patterns(P)
    seeds = seeds if seeds is not None else SeedTable.shipped()
    key = P.canonical()
    cache = seeds._dp_cache
    _dp_node(key, seeds, cache)
    trace = _dp_trace(key, seeds, cache)
    value = trace[-1].value
    kind = "exact" if trace[-1].method == "base" else "upper"
    return BoundResult(value, kind, "recursive", trace, lower=value if kind == "exact" else None, patterns=str(P))


# --------------------------------------------------------- polynomial bounds

# Coefficients in increasing degree. (coefficients, least valid k).
DROPPED_FORMS: dict[int, tuple[tuple[Fr, ...], int]] = {
    3: ((Fr(-3), Fr(2)), 3),
    4: ((Fr(-39), Fr(-2), Fr(1)), 10),
    5: ((Fr(294), Fr(-239, 6), Fr(-1, 2), Fr(1, 3)), 9),
    6: ((Fr(-1009), Fr(274), Fr(-241, 12), Fr(0), Fr(1, 12)), 8),
    7: ((Fr(2064), Fr(-17507, 20), Fr(3047, 24), Fr(-20, 3), Fr(1, 24), Fr(1, 60)), 7),
}
# Isolated value outside the cubic's range.
DROPPED_POINTS = {(5, 8): 104}

CLIQUE_FORMS: dict[int, tuple[tuple[Fr, ...], int]] = {
    3: ((Fr(-1), Fr(2)), 2),
    4: ((Fr(-22), Fr(0), Fr(1)), 8),
    5: ((Fr(95), Fr(-131, 6), Fr(1, 2), Fr(1, 3)), 8),
    6: ((Fr(-208), Fr(505, 6), Fr(-127, 12), Fr(1, 3), Fr(1, 12)), 8),
    7: ((Fr(287), Fr(-10061, 60), Fr(295, 8), Fr(-10, 3), Fr(1, 8), Fr(1, 60)), 8),
    8: ((Fr(-239), Fr(2093, 10), Fr(-11923, 180), Fr(32, 3), Fr(-55, 72), Fr(1, 30), Fr(1, 360)), 8),
    9: (
        (Fr(24), Fr(-20351, 140), Fr(2671, 36), Fr(-12241, 720), Fr(331, 144), Fr(-97, 720),
         Fr(1, 144), Fr(1, 2520)),
        8,
    ),
    10: (
        (Fr(408), Fr(-1019, 28), Fr(-200713, 5040), Fr(4079, 240), Fr(-3031, 960), Fr(19, 48),
         Fr(-3, 160), Fr(1, 840), Fr(1, 20160)),
        8,
    ),
    11: (
        (Fr(-1183), Fr(965843, 2520), Fr(-9761, 288), Fr(-528539, 90720), Fr(5443, 1920),
         Fr(-3827, 8640), Fr(11, 192), Fr(-31, 15120), Fr(1, 5760), Fr(1, 181440)),
        8,
    ),
}
FAMILIES = {"dropped": DROPPED_FORMS, "clique": CLIQUE_FORMS}
# s = 3 forms are exact values, the rest are upper bounds.
EXACT_FORMS = {("dropped", 3), ("clique", 3)}


def _eval_poly(coeffs: Sequence[Fr], k: int) -> int:
    v = sum(c * k**i for i, c in enumerate(coeffs))
    if v.denominator != 1:
        raise ArithmeticError(f"closed form evaluated to non-integer {v} at k={k}")
    return int(v)


def polynomial_bound(family: str, s: int, k: int) -> BoundResult | None:
    """Closed form for R([s,2],[k,2]) ("dropped") or R([s,2],[k,1]) ("clique")."""
    if family not in FAMILIES:
        raise PreconditionError(f"unknown family {family!r}; expected 'dropped' or 'clique'")
    forms = FAMILIES[family]
    if s not in forms:
        return None
    t = 2 if family == "dropped" else 1
    if k < t:
        return None
    patterns = PatternList([(s, 2), (k, t)])
    point = DROPPED_POINTS.get((s, k)) if family == "dropped" else None
    coeffs, k0 = forms[s]
    if point is not None:
        value = point
    elif k >= k0:
        value = _eval_poly(coeffs, k)
    else:
        return None
    kind = "exact" if (family, s) in EXACT_FORMS else "upper"
    step = TraceStep(
        "poly", CITE_POLY, value, node=key_str(patterns.canonical()),
        detail={"family": family, "s": s, "k": k, "isolated": point is not None},
    )
    return BoundResult(value, kind, "poly", [step], lower=value if kind == "exact" else None, patterns=str(patterns))


def _poly_for(P: PatternList) -> BoundResult | None:
    if P.r != 2:
        return None
    best = None
    for (a, ta), (b, tb) in (P.patterns, P.patterns[::-1]):
        if ta != 2:
            continue
        res = None
        if tb == 2:
            res = polynomial_bound("dropped", a, b)
        elif tb == 1:
            res = polynomial_bound("clique", a, b)
        if res is not None and (best is None or res.value < best.value):
            best = res
    return best


# -------------------------------------------------------------- chi bound


def chi_argument(P) -> int:
    P = _as_patterns(P)
    return sum(k - t - 1 for k, t in P) + 1 + max(P.ts)


def chi_based_bound(P) -> BoundResult:
    """R(P) <= g(k, r) with k = sum (k_i - t_i - 1) + 1 + max t_i.

    When some k_i = t_i the argument can fall below what the pigeonhole step
    needs; it is raised to max t_i, which still bounds R by the base case.
    """
    P = _as_patterns(P)
    if P.r < 2:
        raise PreconditionError("chi-based bound needs r >= 2")
    k = chi_argument(P)
    k_eff = max(k, max(P.ts))
    v = chi_upper(k_eff, P.r)
    step = TraceStep(
        "chi", CITE_CHI, v, node=key_str(P.canonical()),
        detail={"k": k, "k_used": k_eff, "r": P.r},
    )
    return BoundResult(v, "upper", "chi", [step], patterns=str(P))


# -------------------------------------------------------------- best bound


def _lower_bounds(P: PatternList, seeds: SeedTable) -> list[tuple[int, str]]:
    found = []
    entry = seeds.get(P.patterns)
    if entry is not None and entry.lower is not None:
        found.append((entry.lower, f"seed: {entry.source}"))
    if P.r == 2 and sorted(P.ts) == [2, 2]:
        ks = sorted(P.ks)
        if ks[0] == 3 and 4 <= ks[1] <= 10:
            k = ks[1]
            if verify_lower_bound(matching_witness(k), PatternList([(3, 2), (k, 2)])):
                found.append((2 * k - 3, CITE_MATCHING))
    return found


def best_bound(P, seeds: SeedTable | None = None, methods: Iterable[str] | None = None) -> BoundResult:
    """Least upper bound over all methods, with lower bounds attached."""
    P = _as_patterns(P)
    seeds = seeds if seeds is not None else SeedTable.shipped()
    wanted = set(methods) if methods is not None else set(METHODS)
    cands: list[BoundResult] = []
    base = base_case(P)
    if base is not None and "base" in wanted:
        cands.append(base)
    entry = seeds.get(P.patterns)
    if "seed" in wanted and entry is not None and entry.upper is not None:
        step = TraceStep("seed", CITE_SEED, entry.upper, node=key_str(P.canonical()), detail={"source": entry.source})
        cands.append(BoundResult(entry.upper, "upper", "seed", [step], patterns=str(P)))
    if "poly" in wanted:
        poly = _poly_for(P)
        if poly is not None:
            cands.append(poly)
    if "recursive" in wanted:
        cands.append(recursive_bound(P, seeds))
    if "explicit" in wanted:
        cands.append(explicit_bound(P))
    if "chi" in wanted and P.r >= 2:
        cands.append(chi_based_bound(P))
    if not cands:
        raise PreconditionError(f"no applicable method among {sorted(wanted)}")
    order = {m: i for i, m in enumerate(METHODS)}
    win = min(cands, key=lambda c: (c.value, order.get(c.method, len(order))))

    lowers = _lower_bounds(P, seeds)
    for c in cands:
        if c.kind == "exact":
            lowers.append((c.value, c.method))
    lower = max((lo for lo, _ in lowers), default=None)
    kind = "exact" if lower is not None and lower == win.value else "upper"
    summary = TraceStep(
        "best", f"minimum over {', '.join(c.method for c in cands)}", win.value,
        node=key_str(P.canonical()),
        uses=[win.method],
        detail={
            "candidates": {c.method: c.value for c in cands},
            "winner": win.method,
            "lower_sources": [{"value": lo, "source": src} for lo, src in lowers],
        },
    )
    return BoundResult(win.value, kind, win.method, win.trace + [summary], lower=lower, patterns=str(P))


# -------------------------------------------------------------- trace replay


def _parse_key(s: str) -> Key:
    return canonical_key(tuple(int(x) for x in part.split(",")) for part in s.split(";"))


def replay_trace(result: BoundResult, seeds: SeedTable | None = None) -> int:
    """Recompute a result bottom-up from its trace and return the final value.

    Raises ``ValueError`` when a step does not reproduce its recorded value.
    """
    seeds = seeds if seeds is not None else SeedTable.empty()
    values: dict[str, int] = {}
    last = None
    for step in result.trace:
        m = step.method
        if m == "base":
            key = _parse_key(step.node)
            v = min(t for k, t in key if k == t)
        elif m == "seed":
            v = seeds.upper(_parse_key(step.node))
        elif m == "recursion":
            key = _parse_key(step.node)
            v = sum(values[u] for u in step.uses) - (len(key) - 2)
        elif m == "explicit":
            v = step.detail["max_t"] * multinomial(step.detail["deficits"])
        elif m == "symmetric":
            d = step.detail
            v = symmetric_bound(d["k"], d["t"], d["r"]).value
        elif m == "poly":
            d = step.detail
            v = polynomial_bound(d["family"], d["s"], d["k"]).value
        elif m == "chi":
            v = chi_upper(step.detail["k_used"], step.detail["r"])
        elif m == "best":
            v = last
        else:
            raise ValueError(f"unknown trace method {m!r}")
        if v != step.value:
            raise ValueError(f"trace step {m} at {step.node}: recomputed {v}, recorded {step.value}")
        values[step.node] = v
        last = v
    if last != result.value:
        raise ValueError(f"trace ends at {last}, result says {result.value}")
    return last
