import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circulant.cyclic import ConnectionSet, multiplier_image, normalize, units
from circulant.metrics import verify_diameter_at_most
from circulant.records import lookup
from circulant.search import (
    SearchBudgetExceeded,
    SearchSpec,
    canonical_rep,
    exists_graph,
    find_max_order,
    heuristic_graph,
    lattice_ball,
    order_upper_bound,
)
from oracles import diameter_by_sums


def test_canonical_examples():
    s = normalize(21, [2, 4, 16, 5, 17, 19])
    assert canonical_rep(s).elements == (1, 2, 8, 13, 19, 20)
    rec = normalize(21, [1, 2, 8, 13, 19, 20])
    assert canonical_rep(rec) == rec
    s = normalize(12, [3, 9])
    orbit = {multiplier_image(s, u).elements for u in (1, 5, 7, 11)}
    assert canonical_rep(s).elements == min(orbit)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 40), st.lists(st.integers(1, 39), min_size=1, max_size=5))
def test_canonical_idempotent_and_in_orbit(n, raw):
    try:
        s = normalize(n, raw)
    except ValueError:
        return
    c = canonical_rep(s)
    assert canonical_rep(c) == c
    assert any(multiplier_image(s, u) == c for u in units(n))


def test_ball_bounds():
    assert lattice_ball(2, 2) == 13
    assert order_upper_bound(4, 2) == 13
    assert order_upper_bound(5, 2) == 13 + 5
    assert order_upper_bound(3, 4, directed=True) == math.comb(7, 4)
    # the trivial count bound 1 + d + ... + d^k always dominates
    for d in range(1, 9):
        for k in range(1, 5):
            assert order_upper_bound(d, k) <= sum(d**i for i in range(k + 1))


def test_exists_examples():
    g = exists_graph(13, 4, 2)
    assert g is not None and verify_diameter_at_most(g, 2) and g.degree == 4
    assert exists_graph(14, 4, 2) is None
    g = exists_graph(21, 6, 2)
    assert g is not None and g.degree == 6


def test_exists_shape():
    assert exists_graph(13, 5, 2) is None  # odd degree needs even order
    assert exists_graph(5, 5, 2) is None
    with pytest.raises(ValueError):
        exists_graph(10, 2, 0)


def _all_sets_find(n, d, k, directed):
    """Plain enumeration of every connection set of the given degree."""
    if directed:
        for c in combinations(range(1, n), d):
            if diameter_by_sums(n, c) is not None and diameter_by_sums(n, c) <= k:
                return True
        return False
    if d % 2 and n % 2:
        return False
    half = list(range(1, (n - 1) // 2 + 1))
    for c in combinations(half, d // 2):
        gens = [x for a in c for x in (a, n - a)] + ([n // 2] if d % 2 else [])
        dd = diameter_by_sums(n, gens)
        if dd is not None and dd <= k:
            return True
    return False


SHAPES = ((2, 3), (3, 2), (4, 2), (4, 3), (5, 2), (6, 2), (7, 2), (8, 2), (6, 3))
CANON_CASES = [(n, d, k) for n in range(4, 41) for d, k in SHAPES]


@pytest.mark.parametrize("n,d,k", CANON_CASES)
def test_canonical_completeness(n, d, k):
    assert (exists_graph(n, d, k) is not None) == _all_sets_find(n, d, k, False)


@pytest.mark.parametrize("n", range(4, 16))
def test_canonical_completeness_directed(n):
    for d, k in ((2, 2), (2, 3), (3, 2)):
        assert (exists_graph(n, d, k, directed=True) is not None) == _all_sets_find(n, d, k, True)


@pytest.mark.parametrize(
    "d,k,expected,hi",
    [(4, 2, 13, 30), (5, 2, 16, 40), (6, 2, 21, 40), (7, 2, 26, 40), (6, 3, 55, 80), (4, 3, 25, 40),
     (5, 3, 36, 60), (7, 3, 76, 120), (3, 2, 8, 20), (3, 3, 12, 20), (2, 3, 7, 20), (6, 1, 7, 20)],
)
def test_definitive_matches_registry(d, k, expected, hi):
    res = find_max_order(SearchSpec(d, k, n_range=(1, hi)))
    assert res.definitive and res.n_best == expected == lookup(d, k).n
    assert res.witness.degree == d and verify_diameter_at_most(res.witness, k)


def test_budget_exhaustion():
    with pytest.raises(SearchBudgetExceeded):
        exists_graph(54, 6, 3, budget=5)
    res = find_max_order(SearchSpec(6, 3, n_range=(50, 60), budget=5))
    assert not res.definitive and res.undecided


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(4, 2, mode="exhaustive")
    with pytest.raises(ValueError):
        SearchSpec(4, 2, mode="heuristic", n_range=(1, 20))
    with pytest.raises(ValueError):
        SearchSpec(4, 2, mode="guess", n_range=(1, 20))
    with pytest.raises(ValueError):
        SearchSpec(4, 2, n_range=(20, 10))


def test_heuristic_reproducible():
    a = heuristic_graph(55, 6, 3, budget=3000, seed=7)
    b = heuristic_graph(55, 6, 3, budget=3000, seed=7)
    assert a == b
    spec = SearchSpec(6, 2, mode="heuristic", n_range=(1, 25), budget=2000, seed=3)
    r1, r2 = find_max_order(spec), find_max_order(spec)
    assert r1.as_dict() == r2.as_dict()
    assert not r1.definitive
    if r1.witness is not None:
        assert verify_diameter_at_most(r1.witness, 2) and r1.witness.degree == 6


def test_heuristic_finds_easy_case():
    g = heuristic_graph(21, 6, 2, budget=20_000, seed=1)
    assert g is not None and verify_diameter_at_most(g, 2)


def test_parallel_matches_serial():
    spec = SearchSpec(5, 2, n_range=(1, 40))
    assert find_max_order(spec, jobs=2).as_dict()["n_best"] == find_max_order(spec).n_best == 16


def test_directed_search():
    res = find_max_order(SearchSpec(2, 2, directed=True, n_range=(1, 20)))
    assert res.definitive
    assert res.n_best == max(n for n in range(3, 21) if _all_sets_find(n, 2, 2, True))
    assert isinstance(res.witness, ConnectionSet) and res.witness.directed
