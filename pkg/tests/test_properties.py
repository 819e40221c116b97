"""Randomized properties (hypothesis) against the brute-force oracles."""
import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from nctower import NotAHomomorphismError, inverse_limit, preset
from nctower.fp import FELSCH, HLT, Presentation, todd_coxeter
from nctower.perm import (
    PermGroup,
    Permutation,
    center,
    derived_subgroup,
    inclusion_hom,
    make_hom,
    normal_closure,
    upper_central_series,
)
from nctower.tower import bound_g, within_bound

DEG = 5
PERMS = [Permutation._raw(p) for p in itertools.permutations(range(DEG))]
perm = st.sampled_from(PERMS)
gen_lists = st.lists(perm, min_size=1, max_size=3)
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(gen_lists)
def test_order_matches_enumeration(gens):
    G = PermGroup(DEG, gens)
    E = oracles.close([g._a for g in gens], DEG)
    assert G.order() == len(E)
    assert all(Permutation._raw(e) in G for e in list(E)[:20])


@SETTINGS
@given(gen_lists, perm)
def test_normal_closure_is_smallest_normal_overgroup(gens, h):
    G = PermGroup(DEG, gens)
    if h not in G:
        h = gens[0]
    N = normal_closure(G, PermGroup(DEG, [h]))
    assert oracles.as_set(N) == oracles.normal_closure(oracles.elements(G), oracles.elements(PermGroup(DEG, [h])),
                                                       DEG)
    assert N.is_normal_in(G)


@SETTINGS
@given(gen_lists)
def test_derived_subgroup_and_center(gens):
    G = PermGroup(DEG, gens)
    E = oracles.elements(G)
    assert oracles.as_set(derived_subgroup(G)) == oracles.commutator(E, E, DEG)
    assert oracles.as_set(center(G)) == oracles.center(E)
    assert [oracles.as_set(Z) for Z in upper_central_series(G)] == oracles.upper_central(E)


@SETTINGS
@given(st.integers(1, 12), perm)
def test_cyclic_homs_extend_iff_order_divides(n, g):
    C = preset(f"C{n}")
    S = preset(f"S{DEG}")
    ok = (g ** n).is_identity()
    try:
        h = make_hom(C, S, [g])
    except NotAHomomorphismError:
        h = None
    assert (h is not None) == ok
    if h is not None:
        table = oracles.extend_hom([C.generators[0]._a], [g._a], C.degree, DEG)
        assert all(h(Permutation._raw(x)) == Permutation._raw(y) for x, y in table.items())


@SETTINGS
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(-3, 3)).filter(lambda t: t[1] != 0), min_size=1,
                max_size=4), st.integers(2, 5), st.integers(2, 5))
def test_felsch_and_hlt_agree(word, m, n):
    rel = tuple(s if e > 0 else -s for s, e in word for _ in range(abs(e)))
    p = Presentation(2, ((1,) * m, (2,) * n, rel))
    a = todd_coxeter(p, (), 2000, strategy=FELSCH)
    b = todd_coxeter(p, (), 2000, strategy=HLT)
    if a.is_complete and b.is_complete:
        assert len(a) == len(b)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([g for g in preset("S4").element_list if not g.is_identity()]))
def test_cyclic_subgroup_limits_satisfy_invariants(g):
    phi = inclusion_hom(PermGroup(4, [g]), preset("S4"))
    L = inverse_limit(phi)
    assert within_bound(L.limit_group.order(), L.reduction.psi.domain.order() * bound_g(L.reduction.frak_c.order()))
    for x in phi.domain.generators:
        assert L.from_limit(L.into_limit(x)) == phi(x)
    assert L.to_frak_c.kernel().is_subgroup(upper_central_series(L.limit_group)[-1])
