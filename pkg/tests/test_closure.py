import pytest

from nctower import CapacityError, RejectedInputError, free_normal_closure, preset
from nctower.closure import FAST, PEIFFER, compact_peiffer_presentation, peiffer_presentation
from nctower.fp import presentation_for, todd_coxeter
from nctower.perm import (
    PermGroup,
    identity_hom,
    inclusion_hom,
    make_hom,
    normal_closure,
    normal_subgroups,
    quotient_data,
    trivial_hom,
)


def _homs():
    S3, S4, C2, C3, C4 = (preset(n) for n in ("S3", "S4", "C2", "C3", "C4"))
    return {
        "trivial C2->C3": trivial_hom(C2, C3),
        "trivial C2->C2": trivial_hom(C2, C2),
        "C2->S3": inclusion_hom(PermGroup(3, ["(1 2)"]), S3),
        "A3->S3": inclusion_hom(PermGroup(3, ["(1 2 3)"]), S3),
        "C4->C2": make_hom(C4, C2, ["(1 2)"]),
        "id S3": identity_hom(S3),
        "C2->S4": inclusion_hom(PermGroup(4, ["(1 2)"]), S4),
        "trivial S3->C2": trivial_hom(S3, C2),
    }


@pytest.mark.parametrize("name", sorted(_homs()))
def test_compact_presentation_presents_the_same_group(name):
    phi = _homs()[name]
    p = presentation_for(phi.domain)
    full = peiffer_presentation(p, phi)
    compact = compact_peiffer_presentation(p, phi)
    nq, nx = phi.codomain.order(), len(phi.domain.generators)
    assert len(full.relators) == len(p.relators) * nq + nx * nx * nq * nq
    assert len(compact.relators) <= len(full.relators)
    a = todd_coxeter(full, (), 200_000)
    b = todd_coxeter(compact, (), 200_000)
    assert a.is_complete and b.is_complete
    assert len(a) == len(b)


@pytest.mark.parametrize("name", sorted(_homs()))
def test_closure_invariants(name):
    phi = _homs()[name]
    res = free_normal_closure(None, None, phi, force_peiffer=True)
    rep = res.report
    assert rep.ok
    assert rep.equivariance and rep.peiffer and rep.composition and rep.image_is_normal_closure
    # the closure factors phi
    for x in phi.domain.generators:
        assert res.boundary.map(res.structural(x)) == phi(x)
    assert res.boundary.map.image() == normal_closure(phi.codomain, phi.image())
    assert res.boundary.is_valid()


def test_trivial_map_closure_is_a_power_of_the_abelianization():
    # with trivial boundary the Peiffer identity forces commutativity: (Gamma^ab)^|Q|
    res = free_normal_closure(None, None, trivial_hom(preset("C2"), preset("C3")))
    assert res.path == PEIFFER
    assert res.closure_group.order() == 8
    assert res.closure_group.is_abelian()
    res = free_normal_closure(None, None, trivial_hom(preset("S3"), preset("C2")))
    assert res.closure_group.order() == 4


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "C6"])
def test_fast_path_matches_peiffer(name):
    G = preset(name)
    for N in normal_subgroups(G):
        phi = identity_hom(G) if N.order() == 1 else quotient_data(G, N).projection
        a = free_normal_closure(None, None, phi)
        b = free_normal_closure(None, None, phi, force_peiffer=True)
        assert a.path == FAST and b.path == PEIFFER
        assert a.closure_group.order() == b.closure_group.order()
        assert a.kernel_order() == b.kernel_order()


def test_surjection_kernel_is_central():
    phi = make_hom(preset("C4"), preset("C2"), ["(1 2)"])
    res = free_normal_closure(None, None, phi, force_peiffer=True)
    assert res.report.kernel_central is True


def test_generator_pairs_name_closure_generators():
    phi = inclusion_hom(PermGroup(3, ["(1 2)"]), preset("S3"))
    res = free_normal_closure(None, None, phi)
    for k, (x, q) in enumerate(res.generator_pairs):
        assert res.element_for(x, q) == res.closure_group.generators[k]
    assert len(res.generator_index) == len(phi.domain.generators) * phi.codomain.order()


def test_capacity_error_on_tiny_cap():
    phi = inclusion_hom(PermGroup(4, ["(1 2)"]), preset("S4"))
    with pytest.raises(CapacityError) as info:
        free_normal_closure(None, None, phi, max_cosets=5)
    assert info.value.bound == 5


def test_rejects_wrong_presentation():
    phi = inclusion_hom(PermGroup(3, ["(1 2)"]), preset("S3"))
    from nctower.fp import Presentation

    with pytest.raises(RejectedInputError):
        free_normal_closure(None, Presentation.parse(["a"], ["a^3"]), phi)
    with pytest.raises(RejectedInputError):
        free_normal_closure(preset("C3"), None, phi)


def test_json_is_deterministic():
    phi = inclusion_hom(PermGroup(3, ["(1 2)"]), preset("S3"))
    a = free_normal_closure(None, None, phi).to_json()
    b = free_normal_closure(None, None, phi).to_json()
    assert a == b
    assert a["closure_order"] == a["boundary_image_order"] * a["boundary_kernel_order"]
