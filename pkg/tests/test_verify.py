import pytest

import oracles
from nctower import CapacityError, PreconditionError, inverse_limit, preset
from nctower.perm import PermGroup, identity_hom, inclusion_hom, make_hom, trivial_hom
from nctower.verify import (
    CAPACITY,
    FAIL,
    PASS,
    SKIP,
    Instance,
    build_corpus,
    check_finiteness_and_bound,
    check_kernel_reduction,
    check_lcs_quotients,
    check_nilpotent_fixed_point,
    check_perfect_case,
    check_subnormal_invariance,
    check_universality,
    commuting_maps,
    report_lines,
    run_corpus,
    subnormal_overgroups,
    summarize,
)


def _s4_inclusion(*gens):
    return inclusion_hom(PermGroup(4, list(gens)), preset("S4"))


def test_nilpotent_examples():
    assert check_nilpotent_fixed_point(make_hom(preset("C4"), preset("C2"), ["(1 2)"])).status == PASS
    assert check_nilpotent_fixed_point(identity_hom(preset("D4"))).status == PASS
    Q8, C2 = preset("Q8"), preset("C2")
    for imgs in (["(1 2)", "e"], ["e", "(1 2)"], ["(1 2)", "(1 2)"]):
        assert check_nilpotent_fixed_point(make_hom(Q8, C2, imgs)).status == PASS
    with pytest.raises(PreconditionError):
        check_nilpotent_fixed_point(identity_hom(preset("S3")))


def test_lcs_examples():
    r = check_lcs_quotients(_s4_inclusion("(1 2)", "(1 2 3)"))
    assert r.status == PASS
    assert all(row["injective"] for row in r.witness["levels"])
    r = check_lcs_quotients(identity_hom(preset("A5")))
    assert all(row["domain_quotient"] == 1 for row in r.witness["levels"])


def test_bound_examples():
    r = check_finiteness_and_bound(trivial_hom(preset("C2"), preset("C2")))
    assert r.status == PASS and r.witness["limit_order"] == 2 and r.witness["bound"] == 2.0
    r = check_finiteness_and_bound(inclusion_hom(PermGroup(3, ["(1 2 3)"]), preset("S3")))
    assert r.witness["limit_order"] == 3 and r.witness["bound"] == 9.0


def test_fail_reports_carry_witness():
    phi = trivial_hom(preset("C2"), preset("C2"))
    L = inverse_limit(phi)
    L.checks["bound"] = False
    r = check_finiteness_and_bound(phi, limit=L)
    assert r.status == FAIL and not r.passed
    assert r.witness["limit_order"] == 2


def test_subnormal_overgroups_against_oracle():
    phi = _s4_inclusion("(1 2)(3 4)")
    found = subnormal_overgroups(phi)
    orders = sorted(S.order() for S in found)
    assert 24 in orders and 4 in orders and 2 in orders
    E = oracles.elements(preset("S4"))
    img = oracles.elements(phi.image())
    for S in found:
        Se = oracles.elements(S)
        assert img <= Se and oracles.is_subnormal(Se, E, 4)


def test_subnormal_invariance_examples():
    assert check_subnormal_invariance(_s4_inclusion("(1 2)(3 4)")).status == PASS
    r = check_subnormal_invariance(inclusion_hom(PermGroup(3, ["(1 2 3)"]), preset("S3")))
    assert r.status == PASS
    assert {row["S_order"] for row in r.witness["overgroups"]} == {3, 6}
    assert all(row["limit_order"] == 3 for row in r.witness["overgroups"])


def test_subnormal_overgroup_cap():
    with pytest.raises(CapacityError):
        subnormal_overgroups(_s4_inclusion("(1 2)(3 4)"), cap=1)


def test_universality_examples():
    r = check_universality(_s4_inclusion("(1 2)(3 4)"))
    assert r.status == PASS
    assert all(row["commuting_maps"] == 1 for row in r.witness["targets"])
    r = check_universality(make_hom(preset("C4"), preset("C2"), ["(1 2)"]))
    assert r.status == PASS


def test_universality_cap():
    with pytest.raises(CapacityError):
        check_universality(_s4_inclusion("(1 2)", "(1 2 3)"))


def test_commuting_maps_counts_against_brute_force():
    # Gamma = C2 into S3; the limit is C2 and each target admits exactly one map
    phi = inclusion_hom(PermGroup(3, ["(1 2)"]), preset("S3"))
    L = inverse_limit(phi)
    S3 = preset("S3")
    maps = commuting_maps(L, S3, phi, identity_hom(S3))
    assert len(maps) == 1
    assert maps[0](L.into_limit(phi.domain.generators[0])) == phi(phi.domain.generators[0])


def test_kernel_reduction_examples():
    r = check_kernel_reduction(identity_hom(preset("S3")))
    assert r.status == PASS and "note" in r.witness
    r = check_kernel_reduction(trivial_hom(preset("S3"), preset("C2")))
    assert r.status == PASS and r.witness["frak_k_order"] == 3
    assert r.witness["closure_order"] == r.witness["reduced_closure_order"]


def test_perfect_case_examples():
    r = check_perfect_case(identity_hom(preset("A5")))
    assert r.status == PASS
    b = r.witness["branches"]["central_extension"]
    assert b["gamma2_order"] == 60 and b["gamma3_to_gamma2_bijective"]
    with pytest.raises(PreconditionError):
        check_perfect_case(identity_hom(preset("V4")))
    A5 = preset("A5")
    r = check_perfect_case(inclusion_hom(PermGroup(5, list(A5.generators)), preset("S5")))
    assert "skipped" in r.witness["branches"]["central_extension"]
    assert r.witness["branches"]["central_product"]["ok"]


def test_run_corpus_plumbing():
    assert run_corpus([]) == []
    assert build_corpus("empty") == []
    summary = summarize([])
    assert summary["ok"] and summary["total"] == 0
    inst = Instance("S3 -> S4", _s4_inclusion("(1 2)", "(1 2 3)"))
    reports = run_corpus([inst], ["universality", "bound"])
    statuses = {r.theorem: r.status for r in reports}
    assert statuses == {"finiteness_bound": PASS}  # universality does not apply above the cap
    inst = Instance("id S3", identity_hom(preset("S3")))
    assert run_corpus([inst], ["nilpotent"]) == []


def test_run_corpus_records_capacity_and_skips(monkeypatch):
    import nctower.verify as v

    inst = Instance("S3 -> S4", _s4_inclusion("(1 2)", "(1 2 3)"))

    def boom(phi, **kw):
        raise CapacityError("too big", bound=1)

    monkeypatch.setitem(v.THEOREMS, "bound", boom)
    (r,) = run_corpus([inst], ["bound"])
    assert r.status == CAPACITY and "too big" in r.witness["error"]

    def pre(phi, **kw):
        raise PreconditionError("nope")

    monkeypatch.setitem(v.THEOREMS, "bound", pre)
    (r,) = run_corpus([inst], ["bound"])
    assert r.status == SKIP


def test_reports_are_deterministic():
    corpus = build_corpus("tiny")[:12]
    a = report_lines(run_corpus(corpus))
    b = report_lines(run_corpus(corpus))
    assert a == b


def test_tiny_corpus_passes():
    reports = run_corpus("tiny")
    s = summarize(reports)
    assert s["ok"], [r.to_json() for r in reports if r.status == FAIL]
    assert s["capacity"] == 0


def test_corpus_composition(small_corpus):
    names = [i.name for i in small_corpus]
    assert len(names) == len(set(names))
    for needed in ["id S3", "id S4", "id A4", "id D4", "id Q8", "S3 -> S4", "trivial C2 -> C3", "id A5"]:
        assert needed in names
    assert {t for i in small_corpus for t in i.tags} >= {"identity", "surjection", "trivial", "inclusion"}
