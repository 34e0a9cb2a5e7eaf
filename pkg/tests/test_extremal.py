from fractions import Fraction
from itertools import combinations, product
from math import comb

import pytest

from ogt import extremal as ex
from ogt.errors import GraphError, SizeCapError
from ogt.graphs import (
    directed_cycle,
    directed_path,
    empty_graph,
    make_oriented,
    omega_ro,
    power_path,
    transitive_tournament,
)
from ogt.hom import contains_copy

P3, TT3, P4, PP4 = directed_path(3), transitive_tournament(3), directed_path(4), power_path(4, 2)


def brute_ex(n, forbidden):
    """Maximum arcs over all 3^C(n,2) labelled orientations."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for states in product((0, 1, 2), repeat=len(pairs)):
        arcs = [(i, j) if s == 1 else (j, i) for (i, j), s in zip(pairs, states) if s]
        if len(arcs) <= best:
            continue
        g = make_oriented(n, arcs)
        if all(contains_copy(g, f) is None for f in forbidden):
            best = len(arcs)
    return best


def test_turan_density_term():
    assert ex.turan_density_term(3, 4) == 3
    assert ex.turan_density_term(2, 11) == 0
    assert ex.turan_density_term(7, 14) == Fraction(455, 6)
    with pytest.raises(ValueError):
        ex.turan_density_term(1, 5)


def test_exact_ex_examples():
    assert ex.exact_ex_oriented(3, [P3]).value == 2
    r = ex.exact_ex_oriented(3, [directed_cycle(3)])
    assert r.value == 3 and r.extremal_witness.is_tournament
    assert contains_copy(r.extremal_witness, directed_cycle(3)) is None
    assert ex.exact_ex_oriented(4, [TT3]).value == 5
    with pytest.raises(SizeCapError):
        ex.exact_ex_oriented(7, [P3])
    with pytest.raises(GraphError):
        ex.exact_ex_oriented(4, [empty_graph(2)])


@pytest.mark.parametrize("forbidden", [[P3], [TT3], [directed_cycle(3)], [P4], [P3, directed_cycle(3)]])
def test_exact_ex_matches_brute_force(forbidden):
    for n in range(1, 5):
        r = ex.exact_ex_oriented(n, forbidden)
        assert r.value == brute_ex(n, forbidden)
        assert r.extremal_witness.num_arcs == r.value
        assert ex.is_free_of(r.extremal_witness, forbidden)


def test_exact_ex_monotone_in_forbidden_list():
    for n in (4, 5):
        a = ex.exact_ex_oriented(n, [P4]).value
        b = ex.exact_ex_oriented(n, [P4, TT3]).value
        assert b <= a


@pytest.mark.parametrize("h,values", [(P3, (6, 9)), (TT3, (8, 12)), (P4, (8, 12)), (PP4, (9, 13))])
def test_sandwich(h, values):
    for n, expect in zip((5, 6), values):
        low = ex.blowup_lower_bound(n, h)
        exact = ex.exact_ex_oriented(n, [h]).value
        assert low == exact == expect
        assert exact <= comb(n, 2)
        assert ex.is_free_of(ex.blowup_construction(n, h), [h])


def test_blowup_examples():
    assert ex.blowup_lower_bound(6, P3) == 9
    assert ex.balanced_parts(7, 3) == [3, 2, 2]
    with pytest.raises(GraphError):
        ex.blowup_lower_bound(5, empty_graph(1))


def test_c3_count_bound():
    for n in (2, 3, 4):
        rep = ex.verify_c3_count_bound(n)
        assert rep.holds and rep.vacuous and rep.tt_free_members == 0
    with pytest.raises(SizeCapError):
        ex.verify_c3_count_bound(6)


# Counterexample to out-degree <= 2 implying omega_ro <= 5: clique {1,4,6,7,8,10}.
D2_WIDE = make_oriented(12, [
    (0, 10), (0, 11), (1, 8), (1, 10), (2, 4), (2, 5), (3, 7), (3, 9), (4, 10), (5, 6),
    (5, 7), (6, 7), (8, 4), (8, 10), (9, 10), (9, 11), (10, 6), (10, 7), (11, 5), (11, 6),
])


def test_dk_bound_examples():
    assert omega_ro(power_path(6, 2)) <= 5
    assert omega_ro(P3) == 3  # out-degree 1 already exceeds 1^2 + 1
    assert D2_WIDE.max_out_degree() <= 2 and omega_ro(D2_WIDE) == 6
    scan = ex.scan_dk_in_rk(1, 200, seed=1)
    assert not scan.holds and scan.counterexample is not None
    assert omega_ro(scan.counterexample) > 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_dk_within_k_squared_plus_k_plus_one(k):
    scan = ex.scan_dk_in_rk(k, 300, seed=k, max_vertices=12, bound=k * k + k + 1)
    assert scan.holds and scan.largest_omega <= k * k + k + 1
    assert ex.check_dk_in_rk(k, 50, seed=k, bound=k * k + k + 1)


def test_dk_scan_is_seeded():
    a = ex.scan_dk_in_rk(2, 100, seed=3, bound=7)
    b = ex.scan_dk_in_rk(2, 100, seed=3, bound=7)
    assert a == b


def test_k2_default_scan_finds_violation():
    scan = ex.scan_dk_in_rk(2, 100)
    assert not scan.holds and omega_ro(scan.counterexample) == 6
