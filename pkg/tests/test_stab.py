import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from conftest import random_graph
from hbarperfect.errors import DimMismatch, NegativeWeight, SizeOverflow
from hbarperfect.fixtures import G9_WEIGHTS, g9
from hbarperfect.graph import anticycle, complement, complete, cycle, empty, read_graph6_file, split_vertex
from hbarperfect.stab import (all_stable_sets, alpha, alpha_value, class_tag, classify_facet, classify_facets,
                              enumerate_stable_sets, fractional_packing, hull_contains, is_h_perfect, is_perfect,
                              maximal_stable_sets, point_membership, stab_facets)

DATA = Path(__file__).parent / "data"


def vec(mask, n):
    return [mask >> i & 1 for i in range(n)]


def brute_facets(g):
    """Facets from scipy's Qhull on the stable-set vectors, scaled to coprime integers."""
    pts = np.array([vec(m, g.n) for m in all_stable_sets(g)], dtype=float)
    hull = ConvexHull(pts)
    out = set()
    for eq in hull.equations:
        a, b = eq[:-1], -eq[-1]
        scale = 1 / min(abs(x) for x in a if abs(x) > 1e-9)
        a, b = np.round(a * scale), round(b * scale)
        out.add((tuple(int(x) for x in a), int(b)))
    return out


def test_stable_set_examples():
    fam = enumerate_stable_sets(cycle(5), include_all=True)
    assert len(fam.maximal) == 5 and all(bin(m).count("1") == 2 for m in fam.maximal)
    assert len(fam.all) == 11
    assert maximal_stable_sets(complete(4)) == [1, 2, 4, 8]
    assert maximal_stable_sets(empty(4)) == [15]


def test_maximal_sets_match_brute_force():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 9))
        indep = [m for m in range(1 << g.n) if g.is_independent(m)]
        maximal = [m for m in indep if all(not g.is_independent(m | 1 << v) for v in range(g.n) if not m >> v & 1)]
        assert maximal_stable_sets(g) == sorted(maximal)
        assert all_stable_sets(g) == indep


def test_alpha_examples():
    for n in range(2, 7):
        assert alpha_value(cycle(2 * n + 1)) == n
    assert alpha_value(g9(), G9_WEIGHTS) == 3
    assert alpha(cycle(5), [0] * 5) == (0, [])
    with pytest.raises(NegativeWeight):
        alpha(cycle(5), [1, -1, 1, 1, 1])
    with pytest.raises(DimMismatch):
        alpha(cycle(5), [1, 1])


def test_alpha_exact_rationals():
    assert alpha_value(cycle(5), [Fraction(1, 3)] * 5) == Fraction(2, 3)


def test_facets_k3():
    p = stab_facets(complete(3))
    assert {(f.normal, f.rhs) for f in p.facets} == {((1, 1, 1), 1), ((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0)}


def test_facets_c5():
    p = stab_facets(cycle(5))
    tags = sorted(class_tag(classify_facet(p.graph, f)) for f in p.facets)
    assert tags == ["clique"] * 5 + ["nonnegativity"] * 5 + ["odd_hole(2)"]
    assert {(f.normal, f.rhs) for f in p.facets} == brute_facets(cycle(5))


def test_facets_antic7():
    p = stab_facets(anticycle(7))
    assert ((1,) * 7, 2) in {(f.normal, f.rhs) for f in p.facets}


def test_facets_match_qhull_random():
    rng = random.Random(12)
    for _ in range(25):
        g = random_graph(rng, rng.randint(2, 7))
        assert {(f.normal, f.rhs) for f in stab_facets(g).facets} == brute_facets(g)


def test_facet_size_limit():
    with pytest.raises(SizeOverflow):
        stab_facets(cycle(11))


def test_facets_tight_and_valid():
    rng = random.Random(13)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 7))
        p = stab_facets(g)
        verts = [vec(m, g.n) for m in p.vertices]
        for f in p.facets:
            slacks = [f.slack(v) for v in verts]
            assert min(slacks) == 0
            tight = np.array([[1] + v for v, s in zip(verts, slacks) if s == 0])
            assert np.linalg.matrix_rank(tight) == g.n
            if not f.is_nonnegativity():
                assert alpha_value(g, [max(a, 0) for a in f.normal]) == f.rhs


def test_classification_examples():
    assert classify_facets(stab_facets(cycle(5)))[1]["is_h_perfect"]
    assert not is_h_perfect(split_vertex(cycle(5), 0))
    assert is_h_perfect(complete(4))


def test_classification_checkable():
    rng = random.Random(14)
    for _ in range(20):
        g = random_graph(rng, rng.randint(3, 8))
        for f in stab_facets(g).facets:
            c = classify_facet(g, f)
            sup = f.support()
            if c[0] == "clique":
                assert g.is_clique(sum(1 << i for i in sup)) and f.rhs == 1
            if c[0] == "odd_hole":
                assert len(sup) == 2 * c[1] + 1 and f.rhs == c[1]


def test_perfect_examples():
    assert not is_perfect(cycle(5))
    assert is_perfect(cycle(6))
    assert is_perfect(complete(5))
    with pytest.raises(SizeOverflow):
        is_perfect(cycle(11))


@pytest.mark.parametrize("n,count", [(5, 20), (6, 105), (7, 724)])
def test_perfect_counts(n, count):
    assert sum(is_perfect(g) for g in read_graph6_file(str(DATA / f"connected{n}.g6"))) == count


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_perfect_implies_h_perfect(n):
    for g in read_graph6_file(str(DATA / f"connected{n}.g6")):
        if is_perfect(g):
            assert is_h_perfect(g)


def test_fractional_packing_examples():
    assert fractional_packing(empty(3)) == 3
    assert fractional_packing(cycle(5)) == Fraction(5, 2)
    assert fractional_packing(anticycle(5)) == Fraction(5, 2)
    assert fractional_packing(anticycle(7)) == Fraction(7, 3)
    assert fractional_packing(cycle(7)) == Fraction(7, 2)


def test_membership_examples():
    p = stab_facets(complete(3))
    res = point_membership(p, [1, 1, 1])
    assert not res["inside"]
    (f, s), = res["violated"]
    assert f.normal == (1, 1, 1) and s == -2
    assert point_membership(stab_facets(cycle(5)), [0] * 5)["inside"]
    with pytest.raises(DimMismatch):
        point_membership(p, [0, 0])


def test_vertices_inside_with_tight_facets():
    p = stab_facets(cycle(5))
    for m in p.vertices:
        x = vec(m, 5)
        assert point_membership(p, x)["inside"]
        assert any(f.slack(x) == 0 for f in p.facets)


def test_membership_matches_hull_lp():
    rng = random.Random(15)
    for _ in range(6):
        g = random_graph(rng, rng.randint(2, 6))
        p = stab_facets(g)
        for _ in range(100):
            x = [Fraction(rng.randint(0, 6), 6) for _ in range(g.n)]
            assert point_membership(p, x)["inside"] == hull_contains(g, x)


def test_sandwich_on_complements():
    from hbarperfect.moment import lovasz_theta

    rng = random.Random(16)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 7))
        h = complement(g)
        assert 1 / fractional_packing(h) <= 1 / lovasz_theta(h).value + 1e-9
