"""Acceptance criteria, one test each. Every test records a PASS/FAIL line that
is printed in the terminal summary (and directly when run as a script)."""
import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from dropclique.arith import multinomial
from dropclique.bounds import (
    CLIQUE_FORMS,
    DROPPED_FORMS,
    best_bound,
    explicit_bound,
    polynomial_bound,
    recursive_bound,
    symmetric_bound,
)
from dropclique.chi import chi3_formula, chi_search, g_bound, recognize_chi, recognize_chi_oracle
from dropclique.coloring import CompleteColoring, PatternList, matching_witness, verify_lower_bound
from dropclique.conjecture import Comparator, conjecture_scan, f_value, interval_search, k_max
from dropclique.seeds import SeedTable


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_chi_closed_form_vs_search():
    problems = []
    for surjective in (False, True):
        for r, expect in ((2, 3), (3, 5), (4, 5)):
            t0 = time.perf_counter()
            rep = chi_search(r, 3, 8, surjective_only=surjective)
            dt = time.perf_counter() - t0
            if rep.value != expect or expect != chi3_formula(r) or dt >= 60:
                problems.append((r, surjective, rep.value, round(dt, 2)))
    W = chi_search(3, 3, 8).witness
    rainbow = W.n == 4 and all(
        len({W.color(a, b), W.color(a, c), W.color(b, c)}) == 3 for a, b, c in itertools.combinations(range(4), 3)
    )
    no_chi = all(not recognize_chi_oracle(W.induced(S)) for S in itertools.combinations(range(4), 3))
    record(1, not problems and rainbow and no_chi, f"mismatches={problems} witness_rainbow={rainbow} no_chi_triangle={no_chi}")


def test_criterion_2_recognizer_oracle_equivalence():
    counts, bad = {}, 0
    for n, r in ((4, 2), (4, 3), (5, 2)):
        m = n * (n - 1) // 2
        total = 0
        for cols in itertools.product(range(r), repeat=m):
            C = CompleteColoring(n, r, cols)
            cert = recognize_chi(C)
            if (cert is not None) != recognize_chi_oracle(C) or (cert is not None and not cert.is_valid_for(C)):
                bad += 1
            total += 1
        counts[f"K{n},r={r}"] = total
    record(2, bad == 0 and list(counts.values()) == [64, 729, 1024], f"checked={counts} disagreements={bad}")


def test_criterion_3_dropped_families_reproduction():
    seeds = SeedTable.shipped()
    bad, checked = [], 0
    for k in range(10, 31):
        checked += 1
        if recursive_bound([(4, 2), (k, 2)], seeds).value != k * k - 2 * k - 39:
            bad.append((4, k))
    if recursive_bound([(5, 2), (8, 2)], seeds).value != 104:
        bad.append((5, 8))
    for s in (5, 6, 7):
        _, k0 = DROPPED_FORMS[s]
        for k in range(k0, 31):
            checked += 1
            if recursive_bound([(s, 2), (k, 2)], seeds).value != polynomial_bound("dropped", s, k).value:
                bad.append((s, k))
    record(3, not bad, f"points={checked + 1} mismatches={bad}")


def test_criterion_4_clique_families_reproduction():
    row_k8 = [42, 123, 300, 657, 1349, 2558, 4722, 8200]
    seeds = SeedTable.empty()
    for s, v in zip(range(4, 12), row_k8):
        seeds = seeds.with_entry([(s, 2), (8, 1)], upper=v, source="table row K8")
    seeds = seeds.with_entry([(3, 2), (3, 2)], 3, 3, "table")
    bad, checked = [], 0
    for s in range(3, 12):
        for k in range(8, 31):
            checked += 1
            got = recursive_bound([(s, 2), (k, 1)], seeds).value
            if got != polynomial_bound("clique", s, k).value:
                bad.append((s, k, got))
    record(4, not bad and len(CLIQUE_FORMS) == 9, f"families=9 points={checked} mismatches={bad[:5]}")


def test_criterion_5_exact_values_witness_and_bound():
    seeds = SeedTable.empty().with_entry([(3, 2), (3, 2)], 3, 3, "table")
    bad = []
    for k in range(4, 9):
        P = PatternList([(3, 2), (k, 2)])
        W = matching_witness(k)
        if not (W.n == 2 * k - 4 and verify_lower_bound(W, P)):
            bad.append(("witness", k))
        if recursive_bound(P, seeds).value > 2 * k - 3:
            bad.append(("upper", k))
    for k in range(3, 11):
        res = best_bound([(3, 2), (k, 1)])
        if res.value != 2 * k - 1:
            bad.append(("clique", k, res.value))
    record(5, not bad, f"dropped k=4..8, clique k=3..10, failures={bad}")


def test_criterion_6_explicit_bound_consistency():
    bad = []
    for r in range(1, 5):
        for ks in itertools.product(range(1, 7), repeat=r):
            P = [(k, 1) for k in ks]
            expect = 1 if 1 in ks else multinomial([k - 1 for k in ks])
            if explicit_bound(P).value != expect:
                bad.append(P)
    for r in range(2, 5):
        for k in range(1, 9):
            for t in range(1, min(k, 3) + 1):
                if symmetric_bound(k, t, r).value != explicit_bound([(k, t)] * r).value:
                    bad.append((k, t, r))
    rng = random.Random(2024)
    pascal_bad = 0
    n = 0
    while n < 10**4:
        parts = [rng.randint(0, 15) for _ in range(rng.randint(1, 6))]
        if sum(parts) == 0:
            continue
        n += 1
        down = sum(multinomial(parts[:i] + [p - 1] + parts[i + 1:]) for i, p in enumerate(parts) if p)
        pascal_bad += multinomial(parts) != down
    record(6, not bad and pascal_bad == 0, f"explicit/symmetric mismatches={bad[:5]} pascal_failures={pascal_bad}/10000")


@pytest.mark.slow
def test_criterion_7_conjecture_scan():
    t0 = time.perf_counter()
    reports = conjecture_scan(3, 150)
    dt = time.perf_counter() - t0
    failing = [rep.r for rep in reports if not rep.all_pass]
    rechecks = sum(rep.exact_rechecks for rep in reports)
    disagreements = sum(len(rep.disagreements) for rep in reports)
    ok = not failing and dt < 600 and disagreements == 0
    record(
        7, ok,
        f"time={dt:.1f}s exact_rechecks={rechecks} disagreements={disagreements} "
        f"failing_r={failing[:3]}..{failing[-1:] if failing else ''} ({len(failing)} values of r)",
    )


def test_criterion_8_g_properties():
    bad = []
    for r in range(2, 151):
        if g_bound(3, r) != chi3_formula(r):
            bad.append((3, r))
        for k in range(4, 21):
            if g_bound(k, r) != r * g_bound(k - 1, r) - r + 2:
                bad.append((k, r))
    record(8, not bad, f"r=2..150 k=3..20 failures={bad[:5]}")


def test_criterion_9_question_intervals():
    empty = []
    for t in (2, 3):
        for r in range(3, 151):
            if interval_search(t, r, k_max(r)).empty:
                empty.append((t, r))
    ends = {}
    for t in (2, 3):
        ends[t] = [interval_search(t, r, 5000).end for r in (3, 10, 50, 100, 150)]
    monotone = all(all(a <= b for a, b in zip(e, e[1:])) for e in ends.values())
    record(9, not empty and monotone, f"empty={empty} ends(t=2)={ends[2]} ends(t=3)={ends[3]}")


def test_criterion_9_f_sign_substitute():
    # sign of f from certified log intervals, exact where they overlap
    positive = []
    for r in (3, 10, 50, 100, 150):
        cmp = Comparator(r, 1, k_max(r))
        for k in range(3, k_max(r) + 1):
            if cmp.compare(k).sign >= 0:
                positive.append((r, k))
    assert f_value(6, 3) > 0
    record("9b", not positive, f"f(k,r) >= 0 at {len(positive)} grid points, first {positive[:3]}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
