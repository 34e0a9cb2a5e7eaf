from itertools import combinations

import pytest

from ogt.enumeration import are_isomorphic, isomorphic_brute, tournaments
from ogt.errors import CyclicGraphError, GraphError, NotTournamentError, SizeCapError
from ogt.graphs import (
    arrow_join,
    bipartite_oriented,
    blow_up,
    composition,
    count_c3,
    count_c3_brute,
    directed_cycle,
    directed_path,
    empty_graph,
    flip_vertex,
    hamiltonian_path,
    induced,
    is_acyclic,
    is_directed_path,
    is_strongly_connected,
    knn_orientation,
    longest_path_order,
    make_oriented,
    omega_ao,
    omega_ro,
    power_cycle,
    power_path,
    reverse,
    rotational_11,
    special_t,
    strongly_connected_components,
    tilde_t7,
    topological_order,
    transitive_tournament,
)


def test_make_oriented_cycle_and_errors():
    c3 = make_oriented(3, [(0, 1), (1, 2), (2, 0)])
    assert c3 == directed_cycle(3)
    assert c3.is_tournament
    with pytest.raises(GraphError):
        make_oriented(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        make_oriented(2, [(0, 0)])
    with pytest.raises(GraphError):
        make_oriented(2, [(0, 2)])
    with pytest.raises(SizeCapError):
        make_oriented(65, [])
    g = make_oriented(0, [])
    assert g.n == 0 and g.num_arcs == 0


def test_transitive_tournament():
    assert set(transitive_tournament(3).arcs()) == {(0, 1), (0, 2), (1, 2)}
    assert transitive_tournament(1).num_arcs == 0
    tt5 = transitive_tournament(5)
    assert tt5.num_arcs == 10 and is_acyclic(tt5)
    assert hamiltonian_path(tt5) == [0, 1, 2, 3, 4]


def test_paths_cycles_bipartite():
    p4 = directed_path(4)
    assert p4.num_arcs == 3 and longest_path_order(p4) == 4
    assert directed_cycle(3).is_tournament
    b = bipartite_oriented(2, 3)
    assert b.num_arcs == 6
    assert [b.out[v].bit_count() for v in range(2)] == [3, 3]


def test_power_path_counts():
    g = power_path(7, 3)
    assert g.num_arcs == 10 and longest_path_order(g) == 7
    assert power_path(4, 2).num_arcs == 5
    p = power_path(5, 4)
    assert p.n == 5 and p.num_arcs == 5
    with pytest.raises(GraphError):
        power_path(3, 3)


def test_power_cycle():
    c52 = power_cycle(5, 2)
    assert c52.is_tournament
    assert all(c52.out[v].bit_count() == 2 for v in range(5))
    assert are_isomorphic(power_cycle(5, 3), c52)
    with pytest.raises(GraphError):
        power_cycle(3, 2)
    # i -> i+2 closes onto 2 -> 0 when k = 4
    with pytest.raises(GraphError):
        power_cycle(4, 2)


def test_composition():
    cc = composition(directed_cycle(3), directed_cycle(3))
    assert cc.n == 9 and cc.num_arcs == 36 and cc.is_tournament
    x = power_cycle(5, 2)
    assert composition(transitive_tournament(1), x) == x
    g = composition(directed_path(2), directed_cycle(3))
    assert g.n == 6 and g.num_arcs == 15


def test_arrow_join():
    assert arrow_join(empty_graph(1), empty_graph(1)) == directed_path(2)
    assert arrow_join(empty_graph(2), empty_graph(3)) == bipartite_oriented(2, 3)
    w = arrow_join(transitive_tournament(1), composition(directed_path(2), directed_cycle(3)))
    assert w.n == 7 and w.is_tournament


def test_blow_up():
    g = power_cycle(5, 2)
    assert blow_up(g, [1] * 5) == g
    assert blow_up(directed_path(2), [2, 3]) == bipartite_oriented(2, 3)
    b = blow_up(directed_cycle(3), [2, 2, 2])
    assert b.n == 6 and b.num_arcs == 12
    assert induced(b, [0, 1]).num_arcs == 0
    with pytest.raises(GraphError):
        blow_up(g, [1, 0, 1, 1, 1])


def test_flip_vertex():
    c3 = directed_cycle(3)
    for v in range(3):
        f = flip_vertex(c3, v)
        assert are_isomorphic(f, transitive_tournament(3))
        assert flip_vertex(f, v) == c3
    with pytest.raises(GraphError):
        flip_vertex(c3, 3)
    cc = composition(c3, c3)
    flipped = cc
    for v in range(3):  # the first blob
        flipped = flip_vertex(flipped, v)
    assert are_isomorphic(flipped, composition(transitive_tournament(3), c3))


def test_reverse_and_induced():
    assert isomorphic_brute(reverse(transitive_tournament(4)), transitive_tournament(4))
    assert induced(transitive_tournament(5), [0, 2, 4]) == transitive_tournament(3)


def test_acyclicity_and_levels():
    assert topological_order(transitive_tournament(4)) == [0, 1, 2, 3]
    with pytest.raises(CyclicGraphError):
        topological_order(directed_cycle(3))
    with pytest.raises(CyclicGraphError):
        longest_path_order(directed_cycle(4))
    assert longest_path_order(empty_graph(3)) == 1


def test_strong_components():
    assert strongly_connected_components(transitive_tournament(5)) == [[0], [1], [2], [3], [4]]
    assert len(strongly_connected_components(power_cycle(5, 2))) == 1
    j = arrow_join(directed_cycle(3), directed_cycle(3))
    assert strongly_connected_components(j) == [[0, 1, 2], [3, 4, 5]]


def test_hamiltonian_paths_over_census():
    for n in range(1, 7):
        for t in tournaments(n):
            assert is_directed_path(t, hamiltonian_path(t))
    assert len(hamiltonian_path(directed_cycle(3))) == 3


def test_named_tournaments():
    tt = tilde_t7()
    assert tt.n == 7 and tt.is_tournament
    assert [tt.has_arc(6, v) for v in range(6)] == [True, True, False, True, False, False]
    fam = [special_t(w) for w in "abcde"]
    assert all(t.n == 5 and is_strongly_connected(t) for t in fam)
    for a, b in combinations(fam + [power_cycle(5, 2)], 2):
        assert not are_isomorphic(a, b)
    r = rotational_11()
    assert r.is_tournament and all(r.out[v].bit_count() == 5 for v in range(11))
    with pytest.raises(GraphError):
        special_t("f")


def test_knn_orientation():
    for n in range(1, 5):
        h = knn_orientation(n)
        assert h.num_arcs == n * n and is_acyclic(h) and longest_path_order(h) == 2 * n


def test_count_c3():
    assert count_c3(transitive_tournament(6)) == 0
    assert count_c3(directed_cycle(3)) == 1
    assert count_c3(power_cycle(5, 2)) == 5 == count_c3_brute(power_cycle(5, 2))
    with pytest.raises(NotTournamentError):
        count_c3(directed_path(3))


def _omega_oracle(g, relative):
    def close(a, b, within):
        for x, y in ((a, b), (b, a)):
            if g.has_arc(x, y) or any(g.has_arc(x, z) and g.has_arc(z, y) for z in within):
                return True
        return False

    best = 0
    for r in range(1, g.n + 1):
        for s in combinations(range(g.n), r):
            within = range(g.n) if relative else s
            if all(close(a, b, within) for a, b in combinations(s, 2)):
                best = r
    return best


def test_omega_examples():
    assert omega_ao(transitive_tournament(3)) == omega_ro(transitive_tournament(3)) == 3
    assert omega_ao(directed_path(4)) == omega_ro(directed_path(4)) == 3
    # two vertices on the same side of B_{2,2} are never joined by a directed path
    assert omega_ao(bipartite_oriented(2, 2)) == 2 == _omega_oracle(bipartite_oriented(2, 2), False)
    assert omega_ro(power_path(6, 2)) == 5


def test_omega_against_oracle():
    import random

    from ogt.randomgraphs import random_acyclic

    rng = random.Random(5)
    for _ in range(60):
        g = random_acyclic(rng.randint(1, 8), rng, density=rng.uniform(0.1, 0.7))
        ao, ro = omega_ao(g), omega_ro(g)
        assert ao <= ro
        assert ao == _omega_oracle(g, False)
        assert ro == _omega_oracle(g, True)
