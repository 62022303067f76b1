import pytest

from ginv import F64, RankAmbiguityError
from ginv.suites import (
    SUITES,
    corpus,
    merge_reports,
    random_instance,
    reference_instances,
    run_corpus,
    run_instance,
)


def test_corpus_is_deterministic_and_independent():
    a = corpus(3, 12)
    b = corpus(3, 12)
    assert [i.descriptor() for i in a] == [i.descriptor() for i in b]
    assert random_instance(3, 7).descriptor() == a[7].descriptor()
    assert corpus(4, 12)[0].descriptor() != a[0].descriptor()


def test_corpus_shape():
    insts = corpus(0, 24)
    for inst in insts:
        n = inst.a.nrows
        assert 2 <= n <= 6 and inst.l.ambient_dim == n
        assert all(-3 <= int(v) <= 3 for row in inst.a.tolist() for v in row)
    assert {i.subspace_kind for i in insts} == {"coordinate", "rational", "complex"}
    assert max(run_instance(i, ("thm31",)).instance["n"] for i in insts) <= 6


def test_reference_instances_pass_everything():
    for inst in reference_instances():
        rep = run_instance(inst, SUITES)
        assert rep.ok, [(r.id, r.detail) for r in rep.failures]


def test_identity_witness_records_skip():
    inst = [i for i in reference_instances() if i.label == "identity-proper-L"][0]
    rep = run_instance(inst, ("thm31",))
    statuses = {r.id: r.status for r in rep.results}
    assert statuses["thm31/index: all five agree"] == "skipped-by-theorem"


def test_small_corpus_both_backends():
    insts = corpus(11, 8)
    for backend, tol in (("exact", 1e-10), (F64, 1e-8)):
        reports = run_corpus(insts, SUITES, backend, tol, seed=11, samples=20)
        merged = merge_reports(reports, {"seed": 11})
        assert merged.ok, [(r.id, r.detail) for r in merged.failures]
        assert len(merged.instance["instances"]) == 8


def test_parallel_matches_serial():
    insts = corpus(5, 6)
    serial = run_corpus(insts, ("thm32",))
    parallel = run_corpus(insts, ("thm32",), parallel=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_instance(reference_instances()[0], ("nope",))


def test_ambiguous_float_instance_is_reported_with_label():
    # (PL A)^2 of this instance has a singular value inside the band at tol 1e-8
    inst = random_instance(1, 120)
    with pytest.raises(RankAmbiguityError, match=r"random\[1:120\]"):
        run_corpus([inst], ("representations",), F64, 1e-8, parallel=1)
    assert run_instance(inst, ("representations",)).ok
