import pytest

from conftest import Q
from ginv.report import FAIL, PASS, SKIPPED, PropertyResult, VerificationReport, check


def test_failure_needs_witness():
    with pytest.raises(ValueError):
        PropertyResult("x", FAIL)
    with pytest.raises(ValueError):
        PropertyResult("x", "maybe")


def test_check_attaches_witness_only_on_failure():
    w = Q([[1]])
    assert check("ok", True, w).witness is None
    r = check("bad", False, w, "why")
    assert r.failed and r.witness == w and r.detail == "why"


def test_summary_counts_match_entries():
    rep = VerificationReport({"label": "t"})
    rep.extend([check("a", True, Q([[0]])), check("b", False, Q([[1]])), PropertyResult("c", SKIPPED)])
    other = VerificationReport(results=[check("d", True, Q([[0]]))])
    rep.merge(other, prefix="sub/")
    s = rep.summary
    assert s == {PASS: 2, FAIL: 1, SKIPPED: 1, "skipped-by-theorem": 0, "total": 4}
    assert not rep.ok and [r.id for r in rep.failures] == ["b"]
    d = rep.to_dict()
    assert d["summary"] == s and len(d["results"]) == s["total"]
    assert all("witness" in e for e in d["results"] if e["status"] == FAIL)
    assert d["results"][-1]["id"] == "sub/d"
