import random
from fractions import Fraction
from itertools import combinations

import pytest

from ogt import domination as d
from ogt.enumeration import tournaments
from ogt.graphs import (
    composition,
    induced,
    directed_cycle,
    make_oriented,
    power_cycle,
    rotational_11,
    transitive_tournament,
)
from ogt.hom import is_injective_homomorphism
from ogt.randomgraphs import random_tournament

C3C3 = composition(directed_cycle(3), directed_cycle(3))


def test_is_dominated_examples():
    assert d.is_dominated(transitive_tournament(3), {1, 2}) == 0
    for pair in combinations(range(3), 2):
        assert d.is_dominated(directed_cycle(3), pair) is None
    for pair in combinations(range(9), 2):
        assert d.is_dominated(C3C3, pair) is not None


def test_all_k_subsets_dominated_examples():
    assert d.all_k_subsets_dominated(C3C3, 2) == (True, None)
    ok, bad = d.all_k_subsets_dominated(transitive_tournament(5), 2)
    assert not ok and 0 in bad
    assert d.all_k_subsets_dominated(directed_cycle(3), 1)[0]


def test_domination_graph_examples():
    assert d.domination_graph(directed_cycle(3)) == directed_cycle(3)
    assert set(d.domination_graph(transitive_tournament(3)).arcs()) == {(0, 1), (0, 2)}
    # regression fixture: in TT_5 only pairs containing the source stay undominated
    assert set(d.domination_graph(transitive_tournament(5)).arcs()) == {(0, 1), (0, 2), (0, 3), (0, 4)}


def test_domination_graph_spanning_and_arcless_iff_dominated():
    rng = random.Random(6)
    for _ in range(200):
        t = random_tournament(rng.randint(2, 9), rng)
        g = d.domination_graph(t)
        assert g.n == t.n and all(t.has_arc(u, v) for u, v in g.arcs())
        assert (g.num_arcs == 0) == d.all_k_subsets_dominated(t, 2)[0]


def test_classification_examples():
    c = d.classify_domination(d.domination_graph(directed_cycle(3)))
    assert c.shape == d.ODD_CYCLE and c.details == 3 and c.pendants == 0
    c = d.classify_domination(d.domination_graph(transitive_tournament(3)))
    assert c.shape == d.CATERPILLARS and c.spines == ((0, 1),) and c.pendants == 1
    assert c.details == [1]
    assert d.classify_domination(directed_cycle(4)).shape == d.OTHER
    assert d.classify_domination(make_oriented(3, [(1, 0), (2, 0)])).shape == d.OTHER


@pytest.mark.parametrize("n", range(2, 8))
def test_census_structure(n):
    rng = random.Random(n)
    for t in tournaments(n):
        dom = d.domination_graph(t)
        c = d.classify_domination(dom)
        assert c.shape != d.OTHER
        assert d.classify_domination(dom, rng).shape == c.shape
        assert d.check_disjoint_arc_dichotomy(t)
        assert d.check_c53_forcing(t)


def test_random_ten_vertex_structure():
    rng = random.Random(17)
    for _ in range(1000):
        t = random_tournament(10, rng)
        assert d.check_disjoint_arc_dichotomy(t)
        assert d.classify_domination(d.domination_graph(t)).shape != d.OTHER


def test_explicit_c53_construction():
    c53 = power_cycle(5, 3)
    dom = d.domination_graph(c53)
    assert dom == directed_cycle(5)
    prem = d.forcing_premise(c53)
    assert prem == ((0, 1), (2, 3))
    assert d.c53_from_dom_arcs(c53, *prem) == (0, 1, 2, 3, 4)
    assert d.check_c53_forcing(c53)


def test_c53_from_dom_arcs_on_census():
    c53 = power_cycle(5, 3)
    found = 0
    for t in tournaments(7):
        prem = d.forcing_premise(t)
        if prem is None:
            continue
        tup = d.c53_from_dom_arcs(t, *prem)
        assert tup is not None and is_injective_homomorphism(list(tup), c53, t)
        found += 1
    assert found > 0


def test_failure_bound():
    assert d.domination_failure_bound(2, 1, exact=True) == 1
    assert d.domination_failure_bound(24, 2, exact=True) == 276 * Fraction(3, 4) ** 22
    assert d.domination_failure_bound(24, 2) == pytest.approx(0.49233, abs=1e-5)
    assert d.domination_failure_bound(10_000, 20) > 0
    vals = [d.domination_failure_bound(n, 2) for n in range(20, 60)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_find_k_dominated():
    t = d.find_k_dominated_tournament(1, 3, 200, seed=1)
    assert t is not None and d.all_k_subsets_dominated(t, 1)[0]
    assert d.find_k_dominated_tournament(2, 4, 300, seed=1) is None
    assert not any(d.all_k_subsets_dominated(t, 2)[0] for t in tournaments(4))
    t = d.find_k_dominated_tournament(2, 9, 20_000, seed=2)
    assert t is not None and d.all_k_subsets_dominated(t, 2)[0]


def _cyclic(t, triple):
    sub = induced(t, triple)
    return all(sub.out_degree(v) == 1 for v in range(3))


def test_rotational_11_triangles_dominated():
    t = rotational_11()
    tris = [s for s in combinations(range(11), 3) if _cyclic(t, s)]
    assert len(tris) == 55
    assert all(d.is_dominated(t, s) is not None for s in tris)
