import random

import pytest

from ogt.compressibility import (
    AT_CAP,
    tau,
    tau_family,
    tau_lower_witness,
    tau_tt,
    universal_dk,
    universal_dk_map,
)
from ogt.enumeration import are_isomorphic, tournaments
from ogt.errors import CyclicGraphError, GraphError, SizeCapError
from ogt.graphs import (
    blow_up,
    composition,
    directed_cycle,
    directed_path,
    empty_graph,
    longest_path_order,
    power_path,
    transitive_tournament,
)
from ogt.hom import hom_exists, is_homomorphism
from ogt.randomgraphs import random_acyclic, random_dk_member


@pytest.mark.parametrize("k", range(2, 7))
def test_tau_paths(k):
    res = tau(directed_path(k))
    assert res.exact and res.tau == k == res.p
    assert set(res.witnesses) == {k - 1}


def test_tau_power_paths():
    assert tau(power_path(5, 2)).tau == 7
    assert tau(power_path(6, 4)).tau == 6


def test_witnesses_and_final_level_are_certified():
    h = power_path(4, 2)
    res = tau(h)
    for k, w in res.witnesses.items():
        assert w.n == k and hom_exists(h, w) is None
    assert len(res.level_homs) == len(tournaments(res.tau))
    for (idx, m), t in zip(res.level_homs, tournaments(res.tau)):
        assert idx == 0 and is_homomorphism(m.map, h, t)


def test_tau_trivial_and_errors():
    assert tau(empty_graph(1)).tau == 1
    assert tau(empty_graph(3)).tau == 1
    with pytest.raises(CyclicGraphError):
        tau(directed_cycle(3))
    with pytest.raises(SizeCapError):
        tau(directed_path(5), max_k=4)
    with pytest.raises(SizeCapError):
        tau(directed_path(3), max_k=11)
    with pytest.raises(GraphError):
        tau_family([])


def test_cap_reports_lower_bound():
    res = tau(power_path(6, 2), max_k=6)
    assert res.status == AT_CAP and res.tau == 7 and not res.exact


def test_tau_family_examples():
    assert tau_family([directed_path(8), transitive_tournament(3)]).tau == 3
    assert tau_family([directed_path(16), transitive_tournament(4)]).tau == 4
    h = power_path(4, 2)
    assert tau_family([h]).tau == tau(h).tau


def test_tau_family_at_most_member_minimum():
    rng = random.Random(5)
    for _ in range(6):
        fam = [random_acyclic(rng.randint(2, 5), rng) for _ in range(2)]
        assert tau_family(fam, max_k=7).tau <= min(tau(h, max_k=7).tau for h in fam)


def test_tau_lower_witness_examples():
    assert are_isomorphic(tau_lower_witness(directed_path(4), 3), transitive_tournament(3))
    w = tau_lower_witness(power_path(5, 2), 6)
    assert are_isomorphic(w, composition(directed_path(2), directed_cycle(3)))
    assert tau_lower_witness(directed_path(3), 3) is None


def test_tau_tt():
    assert tau_tt(2).tau == 2
    assert tau_tt(3).tau == 4
    assert tau_tt(4).tau == 8


def test_tau_invariant_under_blowup():
    rng = random.Random(9)
    for _ in range(8):
        h = random_acyclic(rng.randint(2, 4), rng)
        b = blow_up(h, [rng.randint(1, 2) for _ in range(h.n)])
        assert tau(b, max_k=7).tau == tau(h, max_k=7).tau


def test_tau_at_least_p():
    rng = random.Random(12)
    for _ in range(10):
        h = random_acyclic(rng.randint(1, 6), rng)
        assert tau(h, max_k=8).tau >= longest_path_order(h)


def test_universal_dk():
    assert universal_dk(4, 2).level_sizes == [1, 1, 2, 7]
    for n in range(1, 6):
        u = universal_dk(n, 1).graph
        assert u.n == n and u.num_arcs == n - 1 and longest_path_order(u) == n
    u = universal_dk(4, 2)
    assert u.graph.max_out_degree() <= 2 and longest_path_order(u.graph) == 4
    rng = random.Random(1)
    hits = 0
    while hits < 30:
        h = random_dk_member(rng, 2, 10)
        if longest_path_order(h) != 4:
            continue
        hits += 1
        assert is_homomorphism(universal_dk_map(h, 4, 2, u).map, h, u.graph)
        assert hom_exists(h, u.graph) is not None
    with pytest.raises(SizeCapError, match="level 5"):
        universal_dk(5, 2)
