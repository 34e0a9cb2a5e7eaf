import random
from pathlib import Path

import pytest

from ogt import enumeration as en
from ogt.errors import SizeCapError
from ogt.graphs import (
    directed_cycle,
    power_cycle,
    reverse,
    special_t,
    transitive_tournament,
)
from ogt.randomgraphs import random_tournament


def test_canonical_code_examples():
    c3 = directed_cycle(3)
    assert en.canonical_code(c3) == en.canonical_code(c3.relabel([2, 0, 1]))
    assert en.canonical_code(transitive_tournament(3)) != en.canonical_code(c3)
    assert en.canonical_code(power_cycle(5, 2)) == en.canonical_code(power_cycle(5, 3))


def test_are_isomorphic_examples():
    for k in range(1, 6):
        assert en.are_isomorphic(reverse(transitive_tournament(k)), transitive_tournament(k))
    assert not en.are_isomorphic(special_t("a"), special_t("b"))
    assert not en.are_isomorphic(directed_cycle(3), transitive_tournament(4))


def test_two_canonical_implementations_agree():
    rng = random.Random(2)
    for _ in range(200):
        t = random_tournament(rng.randint(1, 7), rng)
        assert en.canonical_code(t, "search") == en.canonical_code(t, "brute")


def test_canonical_code_matches_permutation_oracle():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 6)
        a = random_tournament(n, rng)
        b = random_tournament(n, rng) if rng.random() < 0.5 else a.relabel(rng.sample(range(n), n))
        assert (en.canonical_code(a) == en.canonical_code(b)) == en.isomorphic_brute(a, b)


def test_find_isomorphism():
    t = special_t("d")
    perm = [3, 1, 4, 0, 2]
    mapping = en.find_isomorphism(t, t.relabel(perm))
    assert mapping is not None and t.relabel(mapping) == t.relabel(perm)


def test_census_examples():
    three = en.tournaments(3)
    assert len(three) == 2
    assert {en.canonical_code(g) for g in three} == {
        en.canonical_code(transitive_tournament(3)),
        en.canonical_code(directed_cycle(3)),
    }
    assert len(en.tournaments(5)) == 12
    assert len(en.tournaments(1)) == 1
    with pytest.raises(SizeCapError):
        en.tournaments(11)


@pytest.mark.parametrize("n", range(1, 7))
def test_census_against_labelled_dedup(n):
    census = en.tournaments(n)
    assert en.orbit_count(en.labeled_tournaments(n), n) == len(census)
    codes = [en.canonical_code(g) for g in census]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
    assert all(en.canonical_form(g) == g for g in census)


def test_census_deterministic_and_brute_chain_agree():
    a = en.tournaments(7, use_cache=False)
    b = en.tournaments(7, method="brute")
    assert a.codes == b.codes == en.tournaments(7).codes


def test_parallel_generation_matches():
    seq = en._generate_tournament_codes(7, 1, "search")
    par = en._generate_tournament_codes(7, 2, "search")
    assert seq == par


def test_cache_corruption_triggers_regeneration(tmp_path, monkeypatch):
    monkeypatch.setenv("OGT_CACHE_DIR", str(tmp_path))
    en.clear_memory_cache()
    try:
        first = en.tournaments(6).codes
        path = Path(tmp_path) / "tour_6.census"
        assert path.exists()
        blob = bytearray(path.read_bytes())
        blob[-1] ^= 0xFF
        path.write_bytes(bytes(blob))
        en.clear_memory_cache()
        assert en.tournaments(6).codes == first
        path.write_bytes(b"short")
        en.clear_memory_cache()
        assert en.tournaments(6).codes == first
    finally:
        en.clear_memory_cache()


def test_filtered_examples():
    assert len(list(en.tournaments_filtered(5, en.strongly_connected))) == 6
    assert list(en.tournaments_filtered(4, en.tt_free(3))) == []
    assert list(en.tournaments_filtered(8, en.tt_free(4))) == []
    assert len(list(en.tournaments_filtered(7, en.tt_free(4)))) >= 1


def test_oriented_graphs():
    assert len(en.oriented_graphs(2)) == 2
    assert sum(1 for _ in en.labeled_orientations(3)) == 27
    assert len(en.oriented_graphs(3)) == 7
    for n in range(1, 5):
        assert en.orbit_count(en.labeled_orientations(n), n) == len(en.oriented_graphs(n))
    with pytest.raises(SizeCapError):
        en.oriented_graphs(6)
