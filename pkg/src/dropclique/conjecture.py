"""Compare the chi-coloring bound g against the multinomial bound for symmetric targets.

For r colors and target [k, t] repeated r times the two bounds are

    g(r(k - t - 1) + t + 1, r)    versus    t * (r(k - t))! / ((k - t)!)^r.

With t = 1 this is g(r(k-2)+2, r) < (rk - r)! / ((k-1)!)^r for 3 <= k <= r^{3/2} + r - 1,
whose sign is tracked by f(k, r) = g(r(k-2)+2, r) - (rk-r)!/((k-1)!)^r.

Comparisons run on certified intervals for the natural logs of both sides and
fall back to exact big-integer arithmetic when the intervals overlap.
"""
from __future__ import annotations

import csv
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import isqrt
from pathlib import Path

from . import kernels
from .arith import factorial, mpz, multinomial
from .chi import g_bound
from .coloring import PreconditionError

log = logging.getLogger(__name__)

U = kernels.UNIT_ROUNDOFF
LOG_ERR = kernels.LOG_ERR_UNITS * U
SAFETY = 2.0
NEAR_ZERO = 1.0  # |log margin| below this is always re-checked exactly
MODE_LOG = "log-guarded-with-exact-fallback"
MODE_EXACT = "exact"


def k_max(r: int) -> int:
    """Largest k with k <= r^{3/2} + r - 1, i.e. (k - r + 1)^2 <= r^3."""
    return r - 1 + isqrt(r**3)


def f_value(k: int, r: int) -> int:
    if k < 3 or r < 3:
        raise PreconditionError(f"f(k, r) is defined for k >= 3 and r >= 3, got k={k}, r={r}")
    return g_bound(r * (k - 2) + 2, r) - multinomial([k - 1] * r)


def chi_arg(k: int, t: int, r: int, literal: bool = False) -> int:
    """Argument of g for R_r([k, t]); ``literal`` uses r(k - t) + t instead."""
    return r * (k - t) + t if literal else r * (k - t - 1) + t + 1


def _log_g_interval(K: int, r: int) -> tuple[float, float]:
    lr = math.log(r)
    if r % 2:
        # g = (r^{K-1} + r - 2) / (r - 1)
        main = (K - 1) * lr
        lm1 = math.log(r - 1)
        val = main - lm1
        err = (K - 1) * LOG_ERR * lr + U * abs(main) + LOG_ERR * lm1 + U * abs(val)
        extra = 2.0 * math.exp(math.log(r - 2) - (K - 1) * lr)
    else:
        # g = r^{K-2} (r^2 - r + 1) / (r^2 - r) + (r - 2) / (r - 1)
        main = (K - 2) * lr
        corr = math.log1p(1.0 / (r * r - r))
        val = main + corr
        err = (K - 2) * LOG_ERR * lr + U * abs(main) + LOG_ERR * corr + U * abs(val)
        extra = 2.0 * math.exp(-(K - 2) * lr)
    err *= SAFETY
    # remaining term contributes log(1 + x) with 0 <= x <= extra
    return val - err, val + err + extra + 1e-300


@dataclass
class Verdict:
    k: int
    holds: bool  # g < multinomial side, strictly
    sign: int  # sign of g - multinomial side
    resolved_by: str  # "log" or "exact"
    log_margin: float | None  # ln(multinomial side) - ln(g)
    exact_checked: bool = False


class Comparator:
    """Decides g(chi_arg) < t * multinomial for one (r, t) over k up to ``k_hi``."""

    def __init__(self, r: int, t: int, k_hi: int, literal: bool = False, use_numba: bool | None = None):
        self.r, self.t, self.literal = r, t, literal
        self.k_hi = k_hi
        self.logf, self.err = kernels.log_factorial_prefix(max(1, r * (k_hi - t)), use_numba)
        self.exact_calls = 0

    def arg(self, k: int) -> int:
        return chi_arg(k, self.t, self.r, self.literal)

    def log_interval_rhs(self, k: int) -> tuple[float, float]:
        r, d = self.r, k - self.t
        a, b = self.logf[r * d], self.logf[d]
        lt = math.log(self.t)
        val = lt + a - r * b
        err = self.err[r * d] + r * self.err[d] + LOG_ERR * lt + 3 * U * (abs(a) + r * abs(b) + abs(val))
        err *= SAFETY
        return val - err, val + err

    def exact_sign(self, k: int) -> int:
        """Sign of g - t * (r d)!/(d!)^r, computed exactly."""
        self.exact_calls += 1
        r, d = self.r, k - self.t
        g = mpz(g_bound(self.arg(k), r)) if self.arg(k) >= 3 else mpz(max(self.arg(k), 1))
        lhs = g * factorial(d) ** r
        rhs = self.t * factorial(r * d)
        return (lhs > rhs) - (lhs < rhs)

    def compare(self, k: int, exact_only: bool = False) -> Verdict:
        if exact_only:
            s = self.exact_sign(k)
            return Verdict(k, s < 0, s, "exact", None, True)
        K = self.arg(k)
        g_lo, g_hi = _log_g_interval(K, self.r)
        m_lo, m_hi = self.log_interval_rhs(k)
        margin = 0.5 * (m_lo + m_hi) - 0.5 * (g_lo + g_hi)
        if m_lo > g_hi:
            return Verdict(k, True, -1, "log", margin)
        if m_hi < g_lo:
            return Verdict(k, False, 1, "log", margin)
        s = self.exact_sign(k)
        return Verdict(k, s < 0, s, "exact", margin, True)


@dataclass
class ConjectureReport:
    r: int
    k_max: int
    verdicts: list[Verdict]
    all_pass: bool
    comparison_mode: str
    exact_rechecks: int = 0
    disagreements: list[int] = field(default_factory=list)

    @property
    def failing_k(self) -> list[int]:
        return [v.k for v in self.verdicts if not v.holds]

    def to_json(self) -> dict:
        d = asdict(self)
        d["failing_k"] = self.failing_k
        return d


def _recheck(cmp: Comparator, v: Verdict, rng: random.Random, sample_rate: float) -> bool | None:
    """Exact re-check of a log-resolved verdict; None when not sampled."""
    if v.resolved_by != "log":
        return None
    near = v.log_margin is not None and abs(v.log_margin) < NEAR_ZERO
    if not near and rng.random() >= sample_rate:
        return None
    v.exact_checked = True
    return cmp.exact_sign(v.k) == v.sign


def scan_r(r: int, exact_only: bool = False, sample_rate: float = 0.01, use_numba: bool | None = None) -> ConjectureReport:
    km = k_max(r)
    cmp = Comparator(r, 1, km, use_numba=use_numba)
    rng = random.Random(r)
    verdicts, rechecks, bad = [], 0, []
    for k in range(3, km + 1):
        v = cmp.compare(k, exact_only)
        agree = None if exact_only else _recheck(cmp, v, rng, sample_rate)
        if agree is not None:
            rechecks += 1
            if not agree:
                bad.append(k)
        verdicts.append(v)
    mode = MODE_EXACT if exact_only else MODE_LOG
    return ConjectureReport(r, km, verdicts, all(v.holds for v in verdicts), mode, rechecks, bad)


def _scan_job(args):
    return scan_r(*args)


def conjecture_scan(
    r_lo: int,
    r_hi: int,
    exact_only: bool = False,
    sample_rate: float = 0.01,
    workers: int = 1,
) -> list[ConjectureReport]:
    """Check g(r(k-2)+2, r) < (rk-r)!/((k-1)!)^r for 3 <= k <= k_max(r), each r in range."""
    if not (3 <= r_lo <= r_hi):
        raise PreconditionError(f"need 3 <= r_lo <= r_hi, got {r_lo}, {r_hi}")
    jobs = [(r, exact_only, sample_rate) for r in range(r_lo, r_hi + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_job, jobs))
    return [_scan_job(j) for j in jobs]


@dataclass
class IntervalResult:
    t: int
    r: int
    start: int
    end: int | None  # None: inequality already fails at ``start``
    capped: bool  # still holding at k_cap
    literal: bool

    @property
    def empty(self) -> bool:
        return self.end is None

    def to_json(self) -> dict:
        return asdict(self)


def interval_search(t: int, r: int, k_cap: int, literal: bool = False) -> IntervalResult:
    """Longest run k = start, start+1, ..., end <= k_cap on which
    g(r(k-t-1)+t+1, r) < t * multinomial(k-t, ..., k-t) holds.

    ``start`` is max(3, t + 1): at k = t the target K_[t,t] has no edges.
    """
    if t < 1 or r < 3 or k_cap < 3:
        raise PreconditionError(f"need t >= 1, r >= 3, k_cap >= 3, got t={t}, r={r}, k_cap={k_cap}")
    start = max(3, t + 1)
    if k_cap < start:
        return IntervalResult(t, r, start, None, False, literal)
    cmp = Comparator(r, t, k_cap, literal)
    end = None
    for k in range(start, k_cap + 1):
        if not cmp.compare(k).holds:
            break
        end = k
    return IntervalResult(t, r, start, end, end == k_cap, literal)


def f_rows(r: int, k_lo: int, k_hi: int) -> list[dict]:
    rows = []
    for k in range(k_lo, k_hi + 1):
        f = f_value(k, r)
        rows.append({"k": k, "f_exact": str(f), "sign": "-" if f < 0 else "+" if f > 0 else "0", "digits": len(str(abs(f)))})
    return rows


F_TABLE_HEADER = ("k", "f_exact", "sign", "digits")


def emit_f_table(r: int, k_lo: int, k_hi: int, path) -> Path:
    if k_lo > k_hi:
        raise PreconditionError(f"empty k range {k_lo}..{k_hi}")
    rows = f_rows(r, k_lo, k_hi)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=F_TABLE_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return path


def read_f_table(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return [
            {"k": int(row["k"]), "f_exact": int(row["f_exact"]), "sign": row["sign"], "digits": int(row["digits"])}
            for row in csv.DictReader(fh)
        ]
