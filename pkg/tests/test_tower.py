import math

import pytest

import oracles
from nctower import CapacityError, RejectedInputError, bound_g, build_tower, inverse_limit, preset, reduce
from nctower.perm import (
    PermGroup,
    identity_hom,
    inclusion_hom,
    make_hom,
    trivial_hom,
    upper_central_series,
)
from nctower.tower import (
    inclusion_chain,
    kernel_commutator_series,
    subnormal_closure_series,
    verify_subnormal_chain,
    within_bound,
)


def _g_reference(t):
    # the stated formula, evaluated naively in floating point
    if t == 1:
        return 1.0
    p = min(d for d in range(2, t + 1) if t % d == 0)
    return t ** (0.5 * (math.log(t, p) + 1))


@pytest.mark.parametrize("t,expected", [(1, 1.0), (2, 2.0), (4, 8.0), (3, 3.0), (8, 64.0), (9, 27.0)])
def test_bound_unit_values(t, expected):
    assert bound_g(t) == expected


@pytest.mark.parametrize("t", range(1, 200))
def test_bound_matches_formula(t):
    assert math.isclose(bound_g(t), _g_reference(t), rel_tol=1e-9)


def test_bound_monotone_on_prime_powers():
    for p in (2, 3, 5):
        vals = [bound_g(p ** e) for e in range(1, 6)]
        assert vals == sorted(vals)


def test_bound_rejects_zero_and_tolerance():
    with pytest.raises(RejectedInputError):
        bound_g(0)
    assert within_bound(2, 2.0)
    assert within_bound(2, 2.0 * (1 - 1e-12))
    assert not within_bound(3, 2.0)


def test_subnormal_closure_series_examples():
    S3, S4 = preset("S3"), preset("S4")
    s = subnormal_closure_series(S3, PermGroup(3, ["(1 2 3)"]))
    assert s.orders() == [6, 3, 3] and s.terminal.order() == 3
    assert s.terms[s.terminal_index] == s.terms[s.terminal_index + 1]
    assert subnormal_closure_series(S4, PermGroup(4, ["(1 2)"])).orders() == [24, 24]
    V = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    assert subnormal_closure_series(S4, V).orders() == [24, 4, 4]
    with pytest.raises(RejectedInputError):
        subnormal_closure_series(S3, PermGroup(4, ["(1 4)"]))


def test_subnormal_closure_matches_oracle():
    S4 = preset("S4")
    E = oracles.elements(S4)
    for g in S4.element_list:
        H = PermGroup(4, [g])
        C = subnormal_closure_series(S4, H).terminal
        # oracle: iterate normal closures to the fixed point
        cur = E
        while True:
            nxt = oracles.normal_closure(cur, oracles.elements(H), 4)
            if nxt == cur:
                break
            cur = nxt
        assert oracles.as_set(C) == cur


def test_kernel_commutator_series_examples():
    D4, S3 = preset("D4"), preset("S3")
    from nctower.perm import center, lower_central_series

    assert kernel_commutator_series(D4, center(D4)).orders() == [2, 1, 1]
    assert kernel_commutator_series(S3, PermGroup(3, ["(1 2 3)"])).orders() == [3, 3]
    lcs = [H.order() for H in lower_central_series(D4)]
    assert kernel_commutator_series(D4, D4).orders()[: len(lcs)] == lcs
    with pytest.raises(RejectedInputError):
        kernel_commutator_series(S3, PermGroup(3, ["(1 2)"]))


def test_reduce_examples():
    C2 = preset("C2")
    psi, red = reduce(trivial_hom(C2, C2))
    assert red.frak_c.order() == 1 and red.frak_k.order() == 1
    assert psi.domain.order() == 2 and psi.codomain.order() == 1
    S3in = inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4"))
    psi, red = reduce(S3in)
    assert red.frak_c.order() == 24 and red.frak_k.order() == 1
    A3in = inclusion_hom(PermGroup(3, ["(1 2 3)"]), preset("S3"))
    psi, red = reduce(A3in)
    assert psi.codomain.order() == 3 and psi.is_bijective()


def test_unreduced_growth_and_reduced_stabilization():
    C2 = preset("C2")
    T = build_tower(trivial_hom(C2, C2), reduce_first=False, max_stages=3)
    assert T.orders()[:2] == [2, 4]
    assert not T.stabilized
    assert T.message == "tower not stabilized within 3 stages"
    R = build_tower(trivial_hom(C2, C2))
    assert R.stabilized and R.orders()[-1] == 2


def test_trivial_map_into_c3_keeps_growing():
    T = build_tower(trivial_hom(preset("C2"), preset("C3")), reduce_first=False, max_stages=3)
    assert T.orders() == [3, 8, 16]


def test_identity_stabilizes_at_stage_two():
    T = build_tower(identity_hom(preset("S3")))
    assert T.stabilized_at == 2
    assert T.orders() == [6, 6]


def test_tower_commutes_and_kernels_are_central():
    phi = inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4"))
    T = build_tower(phi)
    for prev, rec in zip(T.stages, T.stages[1:]):
        for x in rec.structural.domain.generators:
            assert rec.connecting.map(rec.structural(x)) == prev.structural(x)
        ker = rec.connecting.map.kernel()
        assert all(k * m == m * k for k in ker.generators for m in rec.group.generators)


@pytest.mark.parametrize("dom,cod,images,order", [
    ("C4", "C2", ["(1 2)"], 4),
    ("S3", "S3", None, 6),
])
def test_inverse_limit_fixed_points(dom, cod, images, order):
    G, H = preset(dom), preset(cod)
    phi = identity_hom(G) if images is None else make_hom(G, H, images)
    L = inverse_limit(phi)
    assert L.limit_group.order() == order
    assert L.into_limit.is_bijective()
    assert all(L.checks.values())


def test_inverse_limit_s3_in_s4():
    phi = inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4"))
    L = inverse_limit(phi)
    assert L.limit_group.order() <= 6 * bound_g(24)
    for x in phi.domain.generators:
        assert L.from_limit(L.into_limit(x)) == phi(x)
    ker = L.to_frak_c.kernel()
    assert ker.is_subgroup(upper_central_series(L.limit_group)[-1])
    assert verify_subnormal_chain(L.chain)
    js = L.to_json()
    assert js["bound_slack"] == pytest.approx(js["bound"] - js["limit_order"])


def test_a3_in_s3_limit_is_a3():
    L = inverse_limit(inclusion_hom(PermGroup(3, ["(1 2 3)"]), preset("S3")))
    assert L.limit_group.order() == 3 and L.into_limit.is_bijective()


def test_capacity_error_carries_stage():
    phi = inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4"))
    with pytest.raises(CapacityError) as info:
        inverse_limit(phi, coset_bound=5)
    assert info.value.context["stage"] == 2


def test_subnormal_chain_checks():
    S4 = preset("S4")
    V = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    C = PermGroup(4, ["(1 2)(3 4)"])
    assert verify_subnormal_chain(inclusion_chain([C, V, S4]))
    S3 = preset("S3")
    assert verify_subnormal_chain(inclusion_chain([PermGroup(3, ["(1 2 3)"]), S3]))
    assert not verify_subnormal_chain(inclusion_chain([PermGroup(3, ["(1 2)"]), S3]))


def test_tower_json_shape():
    T = build_tower(identity_hom(preset("S3")))
    js = T.to_json()
    assert js["orders"] == [6, 6]
    assert js["stages"][0]["connecting_kernel_order"] is None
    assert js["reduction"]["frak_c_order"] == 6
