import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circulant.builders import (
    FAMILIES,
    BaseSet,
    ConstructionError,
    _product_generators,
    bfs_check,
    build_directed,
    build_undirected,
    check_base_cover,
    family_instantiate,
    family_predicted_order,
    first_valid_q,
    trivial_construction,
)
from circulant.cyclic import crt_split
from circulant.metrics import diameter
from circulant.torus import LadderParams, validate_ladder
from oracles import diameter_by_sums

PUBLISHED_BASES = [
    (57, (1, 2, 7, 8, 27), 3, False),
    (56, (1, 2, 7, 14, 15), 3, False),
    (150, (1, 7, 16, 26, 41, 61), 4, False),
    (436, (1, 15, 43, 48, 77, 109, 152), 5, False),
    (6, (0, 1, 2, 4), 2, True),
    (9, (0, 1, 2, 3, 6), 3, True),
    (13, (0, 1, 3, 5, 7, 8), 4, True),
    (17, (0, 1, 2, 3, 4, 8, 13), 5, True),
    (24, (0, 1, 2, 4, 8, 13, 18, 22), 6, True),
    (30, (0, 1, 2, 6, 9, 12, 16, 17, 18), 7, True),
    (36, (0, 1, 2, 3, 6, 12, 19, 20, 27, 33), 8, True),
    (42, (0, 1, 2, 3, 4, 9, 16, 20, 26, 30, 37), 9, True),
]


def _naive_cover(w, B, k, directed):
    """Every residue as a sum of k distinct base elements (signed when undirected)."""
    from itertools import combinations, product

    reach = set()
    for chosen in combinations(range(len(B)), k):
        sign_sets = [(1,)] * k if directed else [(1, -1)] * k
        for signs in product(*sign_sets):
            vals = [s * B[i] for s, i in zip(signs, chosen)]
            if not directed and any((a + b) % w == 0 for a, b in combinations(vals, 2)):
                continue
            reach.add(sum(vals) % w)
    return len(reach) == w


@pytest.mark.parametrize("w,B,k,directed", PUBLISHED_BASES, ids=lambda v: str(v))
def test_published_bases_cover(w, B, k, directed):
    assert check_base_cover(BaseSet(w, B, k, directed))
    assert _naive_cover(w, B, k, directed)


def test_published_bases_match_families():
    assert sorted((f.w, f.B, f.k, f.directed) for f in FAMILIES.values()) == sorted(PUBLISHED_BASES)
    assert len(FAMILIES) == 12


def test_base_cover_negative():
    assert not check_base_cover(BaseSet(7, (0, 1, 2, 4), 2, True))


def test_base_shape_errors():
    with pytest.raises(ConstructionError):
        BaseSet(6, (1, 2, 4, 5), 2, True)  # directed needs 0 first
    with pytest.raises(ConstructionError):
        BaseSet(57, (0, 2, 7, 8, 27), 3, False)
    with pytest.raises(ConstructionError):
        BaseSet(6, (0, 1, 2), 2, True)
    with pytest.raises(ConstructionError):
        BaseSet(6, (0, 1, 7, 4), 2, True)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(3, 40),
    st.integers(1, 3),
    st.booleans(),
    st.data(),
)
def test_base_cover_against_naive(w, k, directed, data):
    pool = list(range(w)) if directed else list(range(1, w))
    if len(pool) < k + 2:
        return
    picks = data.draw(st.lists(st.sampled_from(pool), min_size=k + 2, max_size=k + 2, unique=True))
    if directed:
        picks = [0] + [p for p in picks if p][: k + 1]
        if len(picks) != k + 2:
            return
    b = BaseSet(w, tuple(picks), k, directed)
    assert check_base_cover(b) == _naive_cover(w, tuple(picks), k, directed)


def test_build_undirected_w57():
    g, cert = build_undirected(57, (1, 2, 7, 8, 27), (17, 13, 11))
    assert g.n == 138_567 and g.degree == 158 == 10 * 17 - 12
    assert cert.valid and cert.claimed_diameter == 3
    assert not g.directed


def test_build_undirected_w56():
    g, cert = build_undirected(56, (1, 2, 7, 14, 15), (15, 13, 11))
    assert g.n == 120_120 == 56 * 2145
    assert g.degree == 142 == 10 * 15 - 8
    assert cert.valid


def test_build_undirected_rejects_common_factor():
    with pytest.raises(ConstructionError, match=r"gcd"):
        build_undirected(57, (1, 2, 7, 8, 27), (15, 13, 11))


def test_build_directed_k2():
    g, cert = build_directed(6, (0, 1, 2, 4), (7, 5))
    assert g.n == 210 and g.degree == 27 and g.directed
    assert cert.generator_count == 6 + 5 + 9 + 7
    assert diameter(g) == 2
    assert diameter_by_sums(g.n, g.elements) == 2


def test_build_directed_k3():
    g, cert = build_directed(9, (0, 1, 2, 3, 6), (17, 13, 11))
    assert g.n == 21_879 and g.degree == 78 == 5 * 17 - 7
    assert cert.valid
    assert diameter(g) <= 3


def test_build_directed_needs_zero():
    with pytest.raises(ConstructionError):
        build_directed(6, (1, 2, 4, 5), (7, 5))


def test_build_rejects_bad_base():
    with pytest.raises(ConstructionError, match="does not cover"):
        build_directed(7, (0, 1, 2, 4), (5, 3))


def _ladder_family_cases():
    out = []
    for f in FAMILIES.values():
        for q in first_valid_q(f, 2):
            out.append((f.name, q))
    return out


@pytest.mark.parametrize("name,q", _ladder_family_cases())
def test_generator_count_identity(name, q):
    f = FAMILIES[name]
    lp = LadderParams.from_radii(f.radii(q))
    base = BaseSet(f.w, f.B, f.k, f.directed)
    gens = _product_generators(base, lp)
    total = sum(lp.radii) + lp.c_o + lp.c_u
    assert len(gens) == (total - 1 if f.directed else 2 * total)
    if lp.k <= 4 and f.w * math.prod(lp.radii) < 10**9:
        g, cert = family_instantiate(f, q)
        assert cert.degree <= cert.degree_bound
        assert cert.order == f.w * math.prod(lp.radii)


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_transcription_over_fifty_q(name):
    f = FAMILIES[name]
    assert check_base_cover(BaseSet(f.w, f.B, f.k, f.directed))
    for q in first_valid_q(f, 50):
        lp = LadderParams.from_radii(f.radii(q))
        assert validate_ladder(lp, f.w), (name, q)
        assert lp.c_o == q + f.c_o_offset
        d = f.degree(q)
        assert family_predicted_order(f, d) == f.w * math.prod(f.radii(q))


def _bfs_cases():
    cases = []
    for f in FAMILIES.values():
        for q in first_valid_q(f, 5):
            if f.w * math.prod(f.radii(q)) <= 10**7:
                cases.append((f.name, q))
    return cases


BFS_CASES = _bfs_cases()


def test_bfs_case_supply():
    names = {n for n, _ in BFS_CASES}
    assert names == {"undirected-k3-w57", "undirected-k3-w56", "directed-k2", "directed-k3", "directed-k4"}


@pytest.mark.parametrize("name,q", BFS_CASES)
def test_small_instances_bfs(name, q):
    f = FAMILIES[name]
    g, cert = family_instantiate(f, q)
    assert cert.valid
    d = bfs_check(g, f.k, work_cap=10**12)
    assert d is not None and d <= f.k
    # observed: every instance here has diameter exactly k
    assert d == f.k


def test_family_examples():
    g, cert = family_instantiate("directed-k2", 7)
    assert (g.n, g.degree) == (210, 27)
    g, cert = family_instantiate("undirected-k3-w57", 17)
    assert (g.n, g.degree) == (138_567, 158)


def test_family_structural_only_at_scale():
    g, cert = family_instantiate("directed-k6", 181)
    assert cert.degree == 1363 == 8 * 181 - 85
    assert cert.order == 24 * 181 * 175 * 169 * 163 * 157 * 151
    assert cert.valid
    assert bfs_check(g, 6, work_cap=10**8) is None


def test_family_rejects_bad_q():
    with pytest.raises(ConstructionError, match=r"mod 6"):
        family_instantiate("directed-k2", 8)
    with pytest.raises(ConstructionError, match=r"q >= 17"):
        family_instantiate("undirected-k3-w57", 11)
    with pytest.raises(ConstructionError, match=r"mod 19"):
        family_instantiate("undirected-k3-w57", 23)  # 23 = 4 (mod 19)


def test_predicted_order_examples():
    assert family_predicted_order(FAMILIES["directed-k4"], 127) == 2_028_117
    assert Fraction(13, 1296) * 138 * 126 * 114 * 102 == 2_028_117
    assert family_predicted_order(FAMILIES["directed-k2"], 27) == 210
    assert family_predicted_order(FAMILIES["undirected-k3-w57"], 158) == 138_567


def test_predicted_order_rejects_non_integral():
    with pytest.raises(ConstructionError):
        family_predicted_order(FAMILIES["directed-k2"], 2)


def test_crt_coordinates_of_generators():
    # every generator of the directed k=2 build projects to a line with a base element in Z_6
    g, _ = build_directed(6, (0, 1, 2, 4), (7, 5))
    for s in g.elements:
        v = crt_split(s, (7, 5, 6))
        assert v.coords[2] in (0, 1, 2, 4)


@pytest.mark.parametrize(
    "r,k,elems,diam",
    [(3, 2, (1, 3, 6, 8), 2), (2, 1, (1,), 1), (4, 2, (1, 2, 4, 8, 12, 14, 15), 2)],
)
def test_trivial_construction_examples(r, k, elems, diam):
    g = trivial_construction(r, k)
    assert g.n == r**k and g.elements == elems
    assert diameter(g) == diam


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(1, 4))
def test_trivial_construction_diameter(r, k):
    if r**k > 5000:
        return
    g = trivial_construction(r, k)
    assert g.n == r**k
    assert set(g.elements) == {(-x) % g.n for x in g.elements}
    assert diameter_by_sums(g.n, g.elements) <= k


def test_trivial_construction_rejects():
    with pytest.raises(ValueError):
        trivial_construction(1, 2)
    with pytest.raises(ValueError):
        trivial_construction(3, 0)
