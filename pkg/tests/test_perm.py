import itertools

import pytest

import oracles
from nctower import NotAHomomorphismError, RejectedInputError, preset, preset_names
from nctower.perm import (
    PermGroup,
    Permutation,
    center,
    check_hom_exhaustively,
    commutator_subgroup,
    conjugation_normal_map,
    derived_subgroup,
    identity_hom,
    inclusion_hom,
    is_nilpotent,
    is_perfect,
    is_subnormal,
    lower_central_series,
    make_hom,
    nilpotency_class,
    normal_closure,
    normal_subgroups,
    quotient_data,
    trivial_hom,
    upper_central_series,
)

SMALL = preset_names(max_order=24)


def test_parse_and_multiply():
    a = Permutation.parse("(1 2 3)", 3)
    b = Permutation.parse("(1 2)", 3)
    # right action: first a, then b
    assert (a * b).images == tuple(b(a(i)) for i in (1, 2, 3))
    assert a.inverse() * a == Permutation.identity(3)
    assert (a ** 3).is_identity()
    assert a.order() == 3
    assert Permutation.parse([2, 3, 1]) == a


@pytest.mark.parametrize("text", ["e", "1", "id", "()"])
def test_identity_spellings(text):
    assert Permutation.parse(text, 4).is_identity()


def test_conj_and_comm_conventions():
    a = Permutation.parse("(1 2 3)", 3)
    q = Permutation.parse("(1 2)", 3)
    assert a.conj(q) == q.inverse() * a * q
    assert a.comm(q) == a.inverse() * q.inverse() * a * q


@pytest.mark.parametrize("bad", [[1, 1, 2], [0, 1, 2], [1, 2, 4]])
def test_rejects_non_bijections(bad):
    with pytest.raises(RejectedInputError):
        Permutation.parse(bad)


@pytest.mark.parametrize("name", SMALL)
def test_order_and_membership_match_enumeration(name):
    G = preset(name)
    elems = oracles.elements(G)
    assert G.order() == len(elems)
    assert oracles.as_set(G) == elems
    for g in G.element_list[:10]:
        assert g in G
    outside = [p for p in itertools.permutations(range(G.degree)) if p not in elems][:5] if G.degree <= 6 else []
    for p in outside:
        assert Permutation._raw(p) not in G


def test_group_equality_is_set_equality():
    A = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    B = PermGroup(4, ["(1 4)(2 3)", "(1 2)(3 4)", "(1 3)(2 4)"])
    assert A == B
    assert A != PermGroup(4, ["(1 2)"])


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "C2xS3", "SL23"])
def test_normal_closure_commutators_center(name):
    G = preset(name)
    n = G.degree
    E = oracles.elements(G)
    for g in G.element_list:
        H = PermGroup(n, [g])
        assert oracles.as_set(normal_closure(G, H)) == oracles.normal_closure(E, oracles.elements(H), n)
    assert oracles.as_set(derived_subgroup(G)) == oracles.commutator(E, E, n)
    assert oracles.as_set(center(G)) == oracles.center(E)
    N = normal_closure(G, PermGroup(n, [G.generators[0]]))
    assert oracles.as_set(commutator_subgroup(G, N, G)) == oracles.commutator(E, oracles.elements(N), n)


@pytest.mark.parametrize("name", SMALL)
def test_central_series_match_enumeration(name):
    G = preset(name)
    E = oracles.elements(G)
    assert [oracles.as_set(H) for H in lower_central_series(G)] == oracles.lower_central(E, G.degree)
    assert [oracles.as_set(H) for H in upper_central_series(G)] == oracles.upper_central(E)


@pytest.mark.parametrize("name,nilpotent,cls,perfect", [
    ("C6", True, 1, False), ("D4", True, 2, False), ("Q16", True, 3, False),
    ("S3", False, None, False), ("A5", False, None, True), ("C1", True, 0, True),
])
def test_nilpotency_and_perfection(name, nilpotent, cls, perfect):
    G = preset(name)
    assert is_nilpotent(G) is nilpotent
    assert nilpotency_class(G) == cls
    assert is_perfect(G) is perfect


def _normal_subgroup_oracle(G):
    # unions of conjugacy classes that are closed under multiplication
    E = oracles.elements(G)
    classes = set()
    for x in E:
        classes.add(frozenset(oracles.conj(x, g) for g in E))
    one = oracles.identity(G.degree)
    rest = [c for c in classes if one not in c]
    found = set()
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            S = frozenset({one}).union(*combo)
            if oracles.close(S, G.degree) == S:
                found.add(S)
    return found


@pytest.mark.parametrize("name,count", [("S3", 3), ("S4", 4), ("D4", 6), ("Q8", 6), ("A4", 3), ("C12", 6),
                                        ("C2xC2xC2", 16)])
def test_normal_subgroups(name, count):
    G = preset(name)
    got = normal_subgroups(G)
    assert len(got) == count
    assert {oracles.as_set(N) for N in got} == _normal_subgroup_oracle(G)
    assert [N.order() for N in got] == sorted(N.order() for N in got)


def test_hom_graph_test_accepts_and_rejects():
    S3, C2 = preset("S3"), preset("C2")
    sign = make_hom(S3, C2, ["e", "(1 2)"])
    assert check_hom_exhaustively(sign)
    assert sign.kernel().order() == 3
    assert sign.is_surjective() and not sign.is_injective()
    with pytest.raises(NotAHomomorphismError) as info:
        make_hom(S3, C2, ["(1 2)", "(1 2)"])
    assert info.value.witness is not None
    with pytest.raises(RejectedInputError):
        make_hom(S3, C2, ["(1 2)"])


@pytest.mark.parametrize("dom,cod", [("C4", "C2"), ("C6", "C3"), ("V4", "C2"), ("S3", "C2"), ("Q8", "V4"),
                                     ("D4", "C2"), ("C3", "S3")])
def test_hom_count_matches_exhaustive_search(dom, cod):
    G, H = preset(dom), preset(cod)
    gens = [g._a for g in G.generators]
    expected = oracles.hom_count(gens, G.degree, oracles.elements(H), H.degree)
    got = 0
    for imgs in itertools.product(H.element_list, repeat=len(gens)):
        try:
            make_hom(G, H, list(imgs))
            got += 1
        except NotAHomomorphismError:
            pass
    assert got == expected


def test_evaluation_and_preimage():
    G = preset("D4")
    qd = quotient_data(G, center(G))
    pi = qd.projection
    assert qd.group.order() == 4
    for g in G:
        assert pi.preimage(pi(g)) in G
        assert pi(pi.preimage(pi(g))) == pi(g)
    assert pi.kernel() == center(G)


def test_chain_evaluation_path(monkeypatch):
    # force the Schreier-Sims evaluation used for domains above the table bound
    from nctower.perm import hom as hom_mod

    monkeypatch.setattr(hom_mod, "TABLE_BOUND", 10)
    G = preset("S5")  # a 5-cycle (even) and a transposition (odd)
    sign = make_hom(G, preset("C2"), ["e", "(1 2)"])
    assert sign._table is None
    assert sign.kernel().order() == 60
    assert sign(Permutation.parse("(1 2 3)", 5)).is_identity()
    assert not sign(Permutation.parse("(1 2)", 5)).is_identity()
    assert sign.preimage(Permutation.parse("(1 2)", 2)) not in sign.kernel()
    with pytest.raises(NotAHomomorphismError):
        make_hom(G, preset("C2"), ["(1 2)", "(1 2)"])


def test_quotient_matches_coset_count():
    for name in ["S4", "D6", "C2xD4", "SL23"]:
        G = preset(name)
        for N in normal_subgroups(G):
            qd = quotient_data(G, N)
            assert qd.group.order() * N.order() == G.order()
            assert qd.projection.kernel() == N


def test_quotient_rejects_non_normal():
    G = preset("S3")
    with pytest.raises(RejectedInputError):
        quotient_data(G, PermGroup(3, ["(1 2)"]))


def test_subnormality_against_oracle():
    G = preset("S4")
    E = oracles.elements(G)
    for g in G.element_list:
        H = PermGroup(4, [g])
        assert bool(is_subnormal(H, G)) == oracles.is_subnormal(oracles.elements(H), E, 4)


def test_conjugation_normal_map_is_valid():
    G = preset("S4")
    V = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    n = conjugation_normal_map(V, G)
    assert n.is_valid()
    with pytest.raises(RejectedInputError):
        conjugation_normal_map(PermGroup(4, ["(1 2)"]), G)


def test_identity_trivial_inclusion_homs():
    G = preset("A4")
    assert identity_hom(G).is_bijective()
    assert trivial_hom(G, preset("C3")).image().order() == 1
    V = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    assert inclusion_hom(V, G).is_injective()
    with pytest.raises(RejectedInputError):
        inclusion_hom(PermGroup(4, ["(1 2)"]), G)
