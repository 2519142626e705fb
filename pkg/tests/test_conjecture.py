import math
import random

import mpmath
import numpy as np
import pytest

from dropclique import kernels
from dropclique.arith import multinomial
from dropclique.chi import g_bound
from dropclique.coloring import PreconditionError
from dropclique.conjecture import (
    F_TABLE_HEADER,
    Comparator,
    _log_g_interval,
    chi_arg,
    conjecture_scan,
    emit_f_table,
    f_value,
    interval_search,
    k_max,
    read_f_table,
    scan_r,
)


def test_k_max_against_high_precision():
    mpmath.mp.dps = 100
    for r in range(2, 400):
        bound = mpmath.mpf(r) ** mpmath.mpf("1.5") + r - 1
        assert k_max(r) == int(mpmath.floor(bound))


def test_f_values():
    assert [f_value(k, 3) for k in range(3, 8)] == [-49, -586, -5125, 40406, 4370225]
    assert f_value(6, 3) == 797162 - 756756
    with pytest.raises(PreconditionError):
        f_value(2, 3)


@pytest.mark.parametrize("use_numba", [True, False])
def test_log_factorial_prefix_is_certified(use_numba):
    logf, err = kernels.log_factorial_prefix(5000, use_numba)
    mpmath.mp.dps = 50
    for j in [0, 1, 2, 3, 10, 171, 999, 2500, 5000]:
        exact = mpmath.loggamma(j + 1)
        assert abs(mpmath.mpf(logf[j]) - exact) <= err[j] + 1e-300
    assert np.all(err >= 0)


def test_backends_agree_on_log_prefix():
    a, ea = kernels.log_factorial_prefix(20000, True)
    b, eb = kernels.log_factorial_prefix(20000, False)
    assert np.all(np.abs(a - b) <= ea + eb)


def test_log_g_interval_contains_truth():
    mpmath.mp.dps = 60
    for r in (2, 3, 4, 7, 10, 31, 150):
        for K in (3, 4, 9, 40, 400):
            lo, hi = _log_g_interval(K, r)
            x = mpmath.log(g_bound(K, r))
            assert lo <= x <= hi


@pytest.mark.parametrize("literal", [False, True])
def test_log_and_exact_comparisons_agree(literal):
    rng = random.Random(3)
    for _ in range(200):
        r = rng.randint(3, 60)
        t = rng.randint(1, 3)
        cmp = Comparator(r, t, 200, literal)
        k = rng.randint(t + 1, 200)
        assert cmp.compare(k).sign == cmp.exact_sign(k)


def test_chi_arg():
    assert chi_arg(5, 1, 3) == 3 * 3 + 2
    assert chi_arg(5, 1, 3, literal=True) == 3 * 4 + 1


def test_scan_r3_exact():
    rep = scan_r(3, exact_only=True)
    assert rep.k_max == 7
    assert rep.failing_k == [6, 7]
    assert rep.comparison_mode == "exact"


def test_scan_log_matches_exact_mode():
    for r in (3, 5, 12, 24, 25, 40):
        a = scan_r(r)
        b = scan_r(r, exact_only=True)
        assert [v.holds for v in a.verdicts] == [v.holds for v in b.verdicts]
        assert a.disagreements == []


def test_failing_set_boundary():
    reps = conjecture_scan(20, 30)
    failing = [rep.r for rep in reps if not rep.all_pass]
    assert failing == list(range(20, 25))
    assert reps[24 - 20].failing_k == [140] == [k_max(24)]


def test_scan_workers_identical():
    a = conjecture_scan(3, 8, workers=1)
    b = conjecture_scan(3, 8, workers=2)
    assert [x.to_json() for x in a] == [x.to_json() for x in b]


def test_interval_search():
    res = interval_search(2, 10, 100)
    assert res.start == 3 and res.end == 25 and not res.capped
    assert interval_search(3, 10, 100).start == 4
    lit = interval_search(2, 10, 100, literal=True)
    assert lit.empty
    # ends of the interval are the first failures
    cmp = Comparator(10, 2, 100)
    assert cmp.exact_sign(25) < 0 < cmp.exact_sign(26)


def test_f_table_roundtrip(tmp_path):
    path = emit_f_table(4, 3, 20, tmp_path / "f.csv")
    assert path.read_text().splitlines()[0] == ",".join(F_TABLE_HEADER)
    rows = read_f_table(path)
    assert [row["k"] for row in rows] == list(range(3, 21))
    for row in rows:
        assert row["f_exact"] == g_bound(4 * (row["k"] - 2) + 2, 4) - multinomial([row["k"] - 1] * 4)
        assert row["digits"] == len(str(abs(row["f_exact"])))
        assert row["sign"] == ("-" if row["f_exact"] < 0 else "+")


def test_multinomial_matches_math():
    for parts in ([3, 3, 3], [0, 5], [7], [2, 0, 4, 1]):
        expect = math.factorial(sum(parts))
        for p in parts:
            expect //= math.factorial(p)
        assert multinomial(parts) == expect
