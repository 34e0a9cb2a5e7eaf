import pytest

from ogt.checks import CHECKS, CheckReport, run_check, serialize
from ogt.formats import from_digraph6, from_hex
from ogt.graphs import directed_path, transitive_tournament

FAST = [
    "check_example_paths",
    "check_claim_5v",
    "check_claim_6v",
    "check_c3c3_domination",
]


def test_serialize_native_formats():
    assert from_hex(serialize(transitive_tournament(4))) == transitive_tournament(4)
    assert from_digraph6(serialize(directed_path(4))) == directed_path(4)


@pytest.mark.parametrize("check_id", FAST)
def test_report_json_round_trip(check_id):
    rep = run_check(check_id) if check_id != "check_c3c3_domination" else run_check(check_id, samples=20)
    assert rep.passed and rep.check_id == check_id
    back = CheckReport.from_json(rep.to_json())
    assert back == rep


def test_reports_deterministic_apart_from_runtime():
    a = run_check("check_c3c3_domination", seed=5, samples=30)
    b = run_check("check_c3c3_domination", seed=5, samples=30)
    assert (a.witnesses, a.scale, a.passed) == (b.witnesses, b.scale, b.passed)


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("check_nothing")
    assert len(CHECKS) == 15
