"""Subgroup constructions, central series, quotients and subnormality."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import CapacityError, InternalConsistencyError, RejectedInputError
from .group import PermGroup
from .hom import GroupHom
from .permutation import Permutation, rmul

ENUMERATION_BOUND = 10**5


def _check_members(G: PermGroup, elems: Sequence[Permutation], what="element") -> None:
    for g in elems:
        if not isinstance(g, Permutation) or g.degree != G.degree or g not in G:
            raise RejectedInputError(f"{what} {g} is not in the ambient group")


def _check_subgroup(H: PermGroup, G: PermGroup, label="H") -> None:
    if H.degree != G.degree or not H.is_subgroup(G):
        raise RejectedInputError(f"{label} is not a subgroup of the ambient group")


def subgroup_generated(G: PermGroup, elems: Sequence[Permutation]) -> PermGroup:
    _check_members(G, elems)
    return PermGroup(G.degree, elems)


def normal_closure(G: PermGroup, H: PermGroup) -> PermGroup:
    """Smallest normal subgroup of G containing H."""
    _check_subgroup(H, G)
    gens = [h for h in H.generators if not h.is_identity()]
    N = PermGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        h = queue.pop(0)
        for x in G.generators:
            c = h.conj(x)
            if c not in N:
                gens.append(c)
                N = PermGroup(G.degree, gens)
                queue.append(c)
    return N


def commutator_subgroup(A: PermGroup, B: PermGroup, ambient: PermGroup) -> PermGroup:
    """[A, B]: normal closure in <A, B> of the generator commutators."""
    _check_subgroup(A, ambient, "A")
    _check_subgroup(B, ambient, "B")
    comms = []
    seen = set()
    for a in A.generators:
        for b in B.generators:
            c = a.comm(b)
            if not c.is_identity() and c not in seen:
                seen.add(c)
                comms.append(c)
    AB = PermGroup(ambient.degree, list(A.generators) + list(B.generators))
    return normal_closure(AB, PermGroup(ambient.degree, comms))


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G, G)


def _enumerate(G: PermGroup, bound: int):
    if G.order() > bound:
        raise CapacityError(
            f"group of order {G.order()} exceeds the enumeration bound {bound}", bound=bound
        )
    return G.element_list


def center(G: PermGroup, bound: int = ENUMERATION_BOUND) -> PermGroup:
    gens = G.generators
    z = [g for g in _enumerate(G, bound) if all(g * x == x * g for x in gens)]
    return PermGroup(G.degree, _small_generating_set(G.degree, z))


def _small_generating_set(degree: int, elems) -> list:
    """Greedy generating set for the group generated by ``elems``."""
    gens = []
    H = PermGroup(degree, [])
    for g in elems:
        if g not in H:
            gens.append(g)
            H = PermGroup(degree, gens)
    return gens


def small_generating_set(G: PermGroup) -> list:
    """A short generating list (greedy over the given generators, then elements)."""
    gens = _small_generating_set(G.degree, G.generators)
    return gens


def upper_central_series(G: PermGroup, bound: int = ENUMERATION_BOUND) -> list:
    """Z_0 = 1, Z_1, ...; last entry is Z_inf.

    Stops at G, otherwise at the first repeat (which is kept).
    """
    elems = _enumerate(G, bound)
    gens = G.generators
    series = [PermGroup(G.degree, [])]
    while series[-1].order() < G.order():
        Z = series[-1]
        nxt = [g for g in elems if all(g.comm(x) in Z for x in gens)]
        series.append(PermGroup(G.degree, _small_generating_set(G.degree, nxt)))
        if series[-1].order() == Z.order():
            break
    return series


def lower_central_series(G: PermGroup) -> list:
    """gamma_1 = G, gamma_{i+1} = [G, gamma_i]; last entry is gamma_inf.

    Stops at the trivial group, otherwise at the first repeat (which is kept).
    """
    series = [G]
    while series[-1].order() > 1:
        nxt = commutator_subgroup(G, series[-1], G)
        series.append(nxt)
        if nxt.order() == series[-2].order():
            break
    return series


def derived_series(G: PermGroup) -> list:
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def nilpotent_residual(G: PermGroup) -> PermGroup:
    return lower_central_series(G)[-1]


def is_nilpotent(G: PermGroup) -> bool:
    return nilpotent_residual(G).order() == 1


def nilpotency_class(G: PermGroup) -> int | None:
    """Class of a nilpotent group (0 for the trivial group), None otherwise."""
    lcs = lower_central_series(G)
    if lcs[-1].order() != 1:
        return None
    return len(lcs) - 1


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order() == G.order()


def _coset_canonical(chain, x: tuple) -> tuple:
    """Canonical element of the right coset N x (greedy base-image minimization)."""
    for trans in chain.transversal:
        best = None
        for c, u in trans.items():
            val = x[c]
            if best is None or val < best[0]:
                best = (val, u)
        x = rmul(best[1], x)
    return x


@dataclass(frozen=True)
class Quotient:
    group: PermGroup
    projection: GroupHom
    representatives: tuple = field(repr=False)


def quotient(G: PermGroup, N: PermGroup) -> tuple:
    """G/N acting on right cosets of N; returns (group, projection)."""
    q = quotient_data(G, N)
    return q.group, q.projection


def quotient_data(G: PermGroup, N: PermGroup) -> Quotient:
    _check_subgroup(N, G, "N")
    if not N.is_normal_in(G):
        raise RejectedInputError("N is not normal in G")
    chain = N.chain
    ident = G.identity._a
    start = _coset_canonical(chain, ident)
    index = {start: 0}
    reps = [ident]
    canon = [start]
    gens = [g._a for g in G.generators]
    images = [[] for _ in gens]
    i = 0
    while i < len(reps):
        for k, g in enumerate(gens):
            y = rmul(reps[i], g)
            key = _coset_canonical(chain, y)
            j = index.get(key)
            if j is None:
                j = len(reps)
                index[key] = j
                reps.append(y)
                canon.append(key)
            images[k].append(j)
        i += 1
    deg = len(reps)
    if deg * N.order() != G.order():
        raise InternalConsistencyError("coset count does not match |G|/|N|")
    Q = PermGroup(deg, [Permutation._raw(tuple(img)) for img in images])
    proj = GroupHom(G, Q, Q.generators, _trusted=True)
    return Quotient(Q, proj, tuple(Permutation._raw(r) for r in reps))


@dataclass(frozen=True)
class SubnormalCertificate:
    is_subnormal: bool
    chain: tuple  # G = C_0 >= C_1 >= ... (terminal last)

    def __bool__(self) -> bool:
        return self.is_subnormal

    @property
    def length(self) -> int:
        return len(self.chain) - 1


def successive_normal_closures(G: PermGroup, H: PermGroup) -> list:
    """C_0 = G, C_{i+1} = <H^{C_i}>; ends with the terminal member repeated once."""
    _check_subgroup(H, G)
    series = [G]
    while True:
        nxt = normal_closure(series[-1], H)
        series.append(nxt)
        if nxt.order() == series[-2].order():
            return series


def is_subnormal(H: PermGroup, G: PermGroup) -> SubnormalCertificate:
    series = successive_normal_closures(G, H)
    terminal = series[-1]
    ok = terminal.order() == H.order()
    return SubnormalCertificate(ok, tuple(series[:-1]))


def normal_subgroups(G: PermGroup, bound: int = 10_000) -> list:
    """All normal subgroups, as joins of normal closures of single elements; sorted by order."""
    elems = _enumerate(G, bound)
    found = {}
    atoms = []
    for g in elems:
        N = normal_closure(G, PermGroup(G.degree, [g]))
        k = N.key()
        if k not in found:
            found[k] = N
            atoms.append(N)
    frontier = list(found.values())
    while frontier:
        new = []
        for A in frontier:
            for B in atoms:
                if B.is_subgroup(A):
                    continue
                J = PermGroup(G.degree, list(A.generators) + list(B.generators))
                k = J.key()
                if k not in found:
                    found[k] = J
                    new.append(J)
        frontier = new
    out = list(found.values())
    out.sort(key=lambda N: (N.order(), sorted(g._a for g in N.element_list)))
    return out
