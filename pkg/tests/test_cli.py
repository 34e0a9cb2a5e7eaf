import json

import pytest

from ogt.cli import load_graphs, main, split_top_level
from ogt.enumeration import are_isomorphic
from ogt.formats import from_digraph6, from_hex

EXPRESSIONS = [
    "TT(4)", "P(5)", "C(5)", "B(2,3)", "PP(6,3)", "CC(7,3)", "comp(C(3),C(3))",
    "join(C(3),TT(1))", "blow(P(3),[2,1,2])", "tildeT7", "Ta", "Tb", "Tc", "Td", "Te",
    "rot11", "knn(4)", "Q(3)", "univ(4,2)",
]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("expr", EXPRESSIONS)
def test_construct_round_trip(capsys, expr):
    code, out = run(capsys, "construct", expr)
    assert code == 0
    lines = out.split()
    (g,) = load_graphs(expr)
    assert are_isomorphic(from_digraph6(lines[0]), g)
    if len(lines) > 1:
        assert are_isomorphic(from_hex(lines[1]), g)


def test_documented_examples(capsys):
    assert run(capsys, "tau", "PP(5,2)") == (0, "7\n")
    code, out = run(capsys, "hom", "P(4)", "TT(3)")
    assert code == 1 and "no homomorphism" in out
    code, out = run(capsys, "verify", "check_claim_6v", "--json")
    assert code == 0 and json.loads(out.splitlines()[0])["passed"]


def test_exit_codes(capsys):
    assert run(capsys, "construct", "Nope(3)")[0] == 2
    assert run(capsys, "construct", "TT(3")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "enumerate", "11")[0] == 3
    assert run(capsys, "tau", "C(3)")[0] == 1
    assert run(capsys, "hom", "P(3)", "C(3)")[0] == 0
    assert run(capsys, "contains", "TT(4)", "TT(3)")[0] == 0
    assert run(capsys, "contains", "C(3)", "TT(3)")[0] == 1
    assert run(capsys, "layered", "PP(7,4)", "--ell", "3", "--to-q")[0] == 0
    assert run(capsys, "dom", "comp(C(3),C(3))", "--k", "2")[0] == 0
    assert run(capsys, "dom", "TT(5)", "--k", "2")[0] == 1
    assert run(capsys, "ex", "7", "--forbid", "P(3)")[0] == 3


def test_output_commands(capsys):
    assert run(capsys, "enumerate", "5", "--count") == (0, "12\n")
    assert run(capsys, "enumerate", "5", "--pred", "strong", "--count") == (0, "6\n")
    assert run(capsys, "enumerate", "3", "--oriented", "--count") == (0, "7\n")
    assert run(capsys, "tau", "P(8)", "--family", "P(8),TT(3)")[1].strip() == "3"
    assert run(capsys, "hom", "P(2)", "C(3)", "--count") == (0, "3\n")
    code, out = run(capsys, "ex", "4", "--forbid", "TT(3)", "--json")
    assert code == 0 and json.loads(out)["value"] == 5
    code, out = run(capsys, "dom", "C(3)", "--classify", "--json")
    assert code == 0 and json.loads(out)["shape"].startswith("odd-cycle")


def test_split_top_level():
    assert split_top_level("comp(C(3),C(3)),TT(3)") == ["comp(C(3),C(3))", "TT(3)"]


def test_graph_file_input(tmp_path, capsys):
    f = tmp_path / "g.d6"
    f.write_text("&DI?AO?\n")
    assert run(capsys, "tau", str(f))[0] == 0
