import pytest

from ogt.errors import GraphError, NotTournamentError
from ogt.formats import from_digraph6, from_hex, parse_graph_text, to_digraph6, to_hex
from ogt.graphs import directed_cycle, directed_path, make_oriented, power_cycle, rotational_11, transitive_tournament


def test_hex_vectors():
    assert to_hex(transitive_tournament(3)) == "3:E0"
    assert to_hex(directed_cycle(3)) == "3:A0"
    assert from_hex("3:a0") == directed_cycle(3)


def test_hex_rejects():
    with pytest.raises(NotTournamentError):
        to_hex(directed_path(3))
    with pytest.raises(GraphError):
        from_hex("3:E1")  # padding bit set
    with pytest.raises(GraphError):
        from_hex("3:E0E0")
    with pytest.raises(GraphError):
        from_hex("nope")


def test_digraph6_vector():
    g = make_oriented(5, [(0, 2), (0, 4), (3, 1), (3, 4)])
    assert to_digraph6(g) == "&DI?AO?"
    assert from_digraph6("&DI?AO?") == g


def test_digraph6_rejects_digons():
    with pytest.raises(GraphError):
        from_digraph6("&AW")  # 0 -> 1 and 1 -> 0


@pytest.mark.parametrize("g", [directed_cycle(3), power_cycle(5, 2), rotational_11(), transitive_tournament(64)])
def test_round_trips(g):
    assert from_digraph6(to_digraph6(g)) == g
    assert from_hex(to_hex(g)) == g
    assert parse_graph_text(to_hex(g)) == g
    assert parse_graph_text(to_digraph6(g)) == g
