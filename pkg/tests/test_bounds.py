import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dropclique.arith import multinomial
from dropclique.bounds import (
    CLIQUE_FORMS,
    DROPPED_FORMS,
    base_case,
    best_bound,
    chi_based_bound,
    explicit_bound,
    polynomial_bound,
    recursive_bound,
    replay_trace,
    symmetric_bound,
)
from dropclique.chi import g_bound
from dropclique.coloring import PatternList, PreconditionError
from dropclique.seeds import SeedTable, SeedTableError, shipped_path

EMPTY = SeedTable.empty()
patterns = st.lists(
    st.integers(1, 7).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k))), min_size=2, max_size=3
)


def test_base_case():
    assert base_case([(3, 3), (5, 2)]).value == 3
    assert base_case([(4, 4), (2, 2)]).value == 2
    assert base_case([(4, 2), (5, 2)]) is None


def test_recursion_examples():
    assert recursive_bound([(3, 2), (3, 2)], EMPTY).value == 4
    assert recursive_bound([(3, 2), (3, 2)]).value == 3
    seeds = EMPTY.with_entry([(4, 2), (8, 2)], upper=38).with_entry([(5, 2), (7, 2)], upper=66)
    assert recursive_bound([(5, 2), (8, 2)], seeds).value == 104
    seeds = seeds.with_entry([(4, 2), (9, 2)], 34, 34)
    assert recursive_bound([(5, 2), (9, 2)], seeds).value == 138


@pytest.mark.parametrize("t", [1, 2, 3])
def test_two_color_recursion_is_pascal(t):
    # u(a, b) = u(a-1, b) + u(a, b-1) with u = t on the boundary a = t or b = t
    u = {}
    for a in range(t, 13):
        for b in range(t, 13):
            u[a, b] = t if a == t or b == t else u[a - 1, b] + u[a, b - 1]
            assert recursive_bound([(a, t), (b, t)], EMPTY).value == u[a, b]


def test_recursive_never_exceeds_explicit():
    for r in (2, 3):
        for ks in itertools.product(range(1, 9), repeat=r):
            for ts in itertools.product(*[range(1, min(k, 3) + 1) for k in ks]):
                P = list(zip(ks, ts))
                if r == 3 and sum(ks) > 15:
                    continue
                assert recursive_bound(P, EMPTY).value <= explicit_bound(P).value, P


@settings(max_examples=150, deadline=None)
@given(patterns, st.randoms())
def test_bounds_are_permutation_invariant(P, rnd):
    Q = list(P)
    rnd.shuffle(Q)
    for fn in (explicit_bound, chi_based_bound):
        assert fn(P).value == fn(Q).value
    assert recursive_bound(P, EMPTY).value == recursive_bound(Q, EMPTY).value
    assert best_bound(P).value == best_bound(Q).value


@settings(max_examples=150, deadline=None)
@given(patterns)
def test_trace_replays(P):
    for res in (recursive_bound(P, EMPTY), best_bound(P, EMPTY), explicit_bound(P), chi_based_bound(P)):
        assert replay_trace(res, EMPTY) == res.value
    res = best_bound(P)
    assert replay_trace(res, SeedTable.shipped()) == res.value


def test_replay_detects_tampering():
    res = recursive_bound([(4, 2), (5, 2)], EMPTY)
    res.trace[0].value += 1
    with pytest.raises(ValueError):
        replay_trace(res, EMPTY)


def test_explicit_and_symmetric():
    assert explicit_bound([(3, 1), (3, 1), (3, 1)]).value == 90
    assert explicit_bound([(4, 2), (10, 2)]).value == 2 * multinomial([2, 8])
    for r in (2, 3, 4):
        for k in range(1, 9):
            for t in range(1, min(k, 3) + 1):
                assert symmetric_bound(k, t, r).value == explicit_bound([(k, t)] * r).value


def test_multinomial_pascal_identity():
    rng = random.Random(1)
    for _ in range(2000):
        parts = [rng.randint(0, 12) for _ in range(rng.randint(1, 5))]
        if sum(parts) == 0:
            continue
        down = [parts[:i] + [p - 1] + parts[i + 1:] for i, p in enumerate(parts) if p > 0]
        assert multinomial(parts) == sum(multinomial(d) for d in down)


def test_chi_bound():
    # k = (3-2-1) + (6-2-1) + 1 + 2 = 6, r = 2
    assert chi_based_bound([(3, 2), (6, 2)]).value == g_bound(6, 2)
    # degenerate argument raised to max t
    assert chi_based_bound([(3, 3), (3, 3)]).value == 3
    assert best_bound([(3, 1)] * 3).value == 17


def test_polynomials():
    assert polynomial_bound("dropped", 3, 6).value == 9
    assert polynomial_bound("dropped", 4, 10).value == 41
    assert polynomial_bound("dropped", 4, 9) is None
    assert polynomial_bound("dropped", 5, 8).value == 104
    assert polynomial_bound("clique", 3, 5).value == 9
    assert polynomial_bound("clique", 4, 8).value == 42
    assert polynomial_bound("dropped", 9, 20) is None
    with pytest.raises(PreconditionError):
        polynomial_bound("other", 3, 3)
    for forms, fam in ((DROPPED_FORMS, "dropped"), (CLIQUE_FORMS, "clique")):
        for s, (_, k0) in forms.items():
            for k in range(k0, 60):
                assert polynomial_bound(fam, s, k).value > 0


def test_quadratic_family_holds_at_k10():
    assert recursive_bound([(4, 2), (10, 2)]).value == 41 == polynomial_bound("dropped", 4, 10).value


def test_best_bound_labels():
    r = best_bound([(3, 2), (6, 2)])
    assert (r.value, r.kind) == (9, "exact")
    r = best_bound([(5, 2), (6, 2)])
    assert (r.lower, r.value, r.kind) == (31, 39, "upper")
    r = best_bound([(4, 2), (4, 2)], EMPTY, methods=["explicit"])
    assert r.method == "explicit"


def test_shipped_seed_table_shape():
    records = json.loads(shipped_path().read_text())
    assert len(records) == 86
    rows = {rec["cell"][0] for rec in records}
    cols = {rec["cell"][1] for rec in records}
    assert len(rows) == 11 and len(cols) == 9
    assert len({tuple(rec["cell"]) for rec in records}) == 86
    for rec in records:
        assert rec["lower"] is None or rec["upper"] is None or rec["lower"] <= rec["upper"]
    table = SeedTable.shipped()
    for rec in records:
        (a, b), (c, d) = rec["patterns"]
        assert table.get([(c, d), (a, b)]) == table.get([(a, b), (c, d)])


def test_seed_table_validation(tmp_path):
    with pytest.raises(SeedTableError):
        SeedTable.from_records([{"patterns": [[3, 2], [4, 2]], "lower": 6, "upper": 5, "source": "x"}])
    with pytest.raises(SeedTableError):
        SeedTable.from_records([
            {"patterns": [[3, 2], [4, 2]], "lower": 5, "upper": 5, "source": "x"},
            {"patterns": [[4, 2], [3, 2]], "lower": 5, "upper": 6, "source": "x"},
        ])
    with pytest.raises(SeedTableError):
        SeedTable.from_records([{"patterns": [[3, 2], [4, 2]], "upper": 5, "source": ""}])
    path = tmp_path / "s.json"
    SeedTable.shipped().dump(path)
    assert SeedTable.load(path).entries == SeedTable.shipped().entries


def test_seed_env_override(tmp_path, monkeypatch):
    path = tmp_path / "seeds.json"
    path.write_text(json.dumps([{"patterns": [[3, 2], [6, 2]], "lower": 2, "upper": 8, "source": "test"}]))
    monkeypatch.setenv("DROPCLIQUE_SEEDS", str(path))
    assert SeedTable.shipped().get([(6, 2), (3, 2)]).upper == 8
