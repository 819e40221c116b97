"""Series, reduction, the normal closures tower and its inverse limit for finite groups."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .closure import DEFAULT_MAX_COSETS, ClosureResult, free_normal_closure
from .errors import CapacityError, InternalConsistencyError, RejectedInputError
from .fp import Presentation, element_words, presentation_for
from .perm import (
    GroupHom,
    NormalMap,
    PermGroup,
    commutator_subgroup,
    identity_hom,
    inclusion_hom,
    is_subnormal,
    lower_central_series,
    make_hom,
    normal_closure,
    quotient_data,
    upper_central_series,
)

SUCCESSIVE_NORMAL_CLOSURES = "successive_normal_closures"
SUCCESSIVE_COMMUTATORS = "successive_commutators"
LOWER_CENTRAL = "lower_central"
UPPER_CENTRAL = "upper_central"

DEFAULT_MAX_STAGES = 64
BOUND_RTOL = 1e-9


@dataclass
class SeriesRecord:
    kind: str
    terms: list
    terminal_index: int

    @property
    def terminal(self) -> PermGroup:
        return self.terms[self.terminal_index]

    def orders(self) -> list:
        return [H.order() for H in self.terms]

    def to_json(self) -> dict:
        return {"kind": self.kind, "orders": self.orders(), "terminal_index": self.terminal_index,
                "terminal_order": self.terminal.order()}


def _descending(kind: str, first: PermGroup, step) -> SeriesRecord:
    terms = [first]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.order() == terms[-2].order():
            return SeriesRecord(kind, terms, len(terms) - 2)


def subnormal_closure_series(G: PermGroup, H: PermGroup) -> SeriesRecord:
    """C_0 = G, C_{i+1} = <H^{C_i}>; terminal member is the subnormal closure of H."""
    if H.degree != G.degree or not H.is_subgroup(G):
        raise RejectedInputError("H is not a subgroup of G")
    return _descending(SUCCESSIVE_NORMAL_CLOSURES, G, lambda C: normal_closure(C, H))


def kernel_commutator_series(gamma: PermGroup, K: PermGroup) -> SeriesRecord:
    """K_1 = K, K_{i+1} = [Gamma, K_i]."""
    if K.degree != gamma.degree or not K.is_normal_in(gamma):
        raise RejectedInputError("K is not a normal subgroup of Gamma")
    return _descending(SUCCESSIVE_COMMUTATORS, K, lambda Ki: commutator_subgroup(gamma, Ki, gamma))


def lower_central_record(G: PermGroup) -> SeriesRecord:
    terms = lower_central_series(G)
    return SeriesRecord(LOWER_CENTRAL, terms, len(terms) - 1)


def upper_central_record(G: PermGroup) -> SeriesRecord:
    terms = upper_central_series(G)
    return SeriesRecord(UPPER_CENTRAL, terms, len(terms) - 1)


def bound_g(t: int) -> float:
    """g(1) = 1; otherwise t^k with k = (log_p t + 1)/2, p the least prime divisor of t.

    Prime powers are evaluated exactly in integers before the float conversion.
    """
    if t < 1:
        raise RejectedInputError("g(t) needs t >= 1")
    if t == 1:
        return 1.0
    p = next(d for d in range(2, t + 1) if t % d == 0)
    e, r = 0, t
    while r % p == 0:
        r //= p
        e += 1
    if r == 1:
        # t = p^e: g = p^(e(e+1)/2)
        num = e * (e + 1)
        if num % 2 == 0:
            return float(p ** (num // 2))
        return float(p ** (num // 2)) * math.sqrt(p)
    k = 0.5 * (math.log(t) / math.log(p) + 1.0)
    return float(t ** k)


def within_bound(order: int, bound: float, rtol: float = BOUND_RTOL) -> bool:
    return order <= bound * (1.0 + rtol)


@dataclass
class Reduction:
    """Data of the passage from ``phi: Gamma -> G`` to ``psi: Gamma/frak_K -> frak_C``."""

    phi: GroupHom
    c_series: SeriesRecord
    k_series: SeriesRecord
    projection: GroupHom  # Gamma -> Gamma/frak_K
    psi: GroupHom

    @property
    def frak_c(self) -> PermGroup:
        return self.c_series.terminal

    @property
    def frak_k(self) -> PermGroup:
        return self.k_series.terminal

    def bound(self) -> float:
        return self.psi.domain.order() * bound_g(self.frak_c.order())

    def to_json(self) -> dict:
        return {
            "frak_c_order": self.frak_c.order(),
            "frak_k_order": self.frak_k.order(),
            "c_series_orders": self.c_series.orders(),
            "k_series_orders": self.k_series.orders(),
            "reduced_domain_order": self.psi.domain.order(),
        }


def _quotient_with_presentation(gamma: PermGroup, N: PermGroup) -> GroupHom:
    """Projection Gamma -> Gamma/N whose target carries a presentation on the image generators."""
    p = presentation_for(gamma)
    if N.order() == 1:
        target = gamma if gamma.presentation is not None else gamma.with_presentation(p)
        return GroupHom(gamma, target, target.generators, _trusted=True)
    qd = quotient_data(gamma, N)
    words = element_words(gamma)
    pres = p.with_relators([words[n] for n in N.generators])
    target = qd.group.with_presentation(pres)
    return GroupHom(gamma, target, target.generators, _trusted=True)


def reduce(phi: GroupHom) -> tuple:
    """Return ``(psi, reduction)`` with ``psi: Gamma/frak_K -> frak_C`` induced by phi."""
    gamma, G = phi.domain, phi.codomain
    c_series = subnormal_closure_series(G, phi.image())
    k_series = kernel_commutator_series(gamma, phi.kernel())
    frak_c = c_series.terminal
    proj = _quotient_with_presentation(gamma, k_series.terminal)
    try:
        psi = make_hom(proj.codomain, frak_c, [phi(x) for x in gamma.generators])
    except RejectedInputError as exc:
        raise InternalConsistencyError(f"induced map Gamma/K -> C is not well defined: {exc}") from None
    return psi, Reduction(phi, c_series, k_series, proj, psi)


@dataclass
class TowerRecord:
    """Stage i: ``Gamma_i`` with ``phi_i: Gamma -> Gamma_i`` and ``Gamma_i -> Gamma_{i-1}``."""

    stage: int
    group: PermGroup
    structural: GroupHom
    connecting: NormalMap | None = None
    closure: ClosureResult | None = None

    def kernel_order(self) -> int | None:
        return None if self.connecting is None else self.connecting.map.kernel().order()

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "order": self.group.order(),
            "connecting_kernel_order": self.kernel_order(),
            "path": self.closure.path if self.closure else None,
        }


@dataclass
class Tower:
    stages: list
    stabilized: bool
    stabilized_at: int | None
    reduction: Reduction | None = None
    coset_bound: int | None = None
    message: str = ""

    def __iter__(self):
        return iter(self.stages)

    def __len__(self) -> int:
        return len(self.stages)

    def __getitem__(self, i):
        return self.stages[i]

    def orders(self) -> list:
        return [r.group.order() for r in self.stages]

    def to_json(self) -> dict:
        out = {
            "stages": [r.to_json() for r in self.stages],
            "orders": self.orders(),
            "stabilized": self.stabilized,
            "stabilized_at": self.stabilized_at,
            "message": self.message,
        }
        if self.reduction is not None:
            out["reduction"] = self.reduction.to_json()
        if self.coset_bound is not None:
            out["coset_bound"] = self.coset_bound
        return out


def reduced_coset_bound(red: Reduction) -> int:
    """4 * |Gamma/K| * g(|C|) cosets."""
    return int(math.ceil(4 * red.bound() * (1 + BOUND_RTOL)))


def _check_stage(rec: TowerRecord, prev: TowerRecord, normally_generated_base: bool) -> None:
    comp = rec.connecting.map
    for x in rec.structural.domain.generators:
        if comp(rec.structural(x)) != prev.structural(x):
            raise InternalConsistencyError(f"tower does not commute at stage {rec.stage}")
    central = rec.closure.report.kernel_central if rec.closure.report else None
    need = rec.stage >= 3 or normally_generated_base
    if need and central is not True:
        ker = comp.kernel()
        M = rec.group
        if not all(k * m == m * k for k in ker.generators for m in M.generators):
            raise InternalConsistencyError(f"connecting kernel is not central at stage {rec.stage}")


def _grow(phi: GroupHom, *, max_stages: int, coset_bound: int, min_stages: int,
          reduction: Reduction | None, p_gamma: Presentation | None) -> Tower:
    G1 = phi.codomain
    first = TowerRecord(1, G1, phi)
    stages = [first]
    base_ng = normal_closure(G1, phi.image()).order() == G1.order()
    stabilized_at = None
    while len(stages) < max_stages:
        prev = stages[-1]
        try:
            res = free_normal_closure(None, p_gamma, prev.structural, max_cosets=coset_bound)
        except CapacityError as exc:
            exc.context = dict(exc.context or {}, stage=prev.stage + 1)
            raise CapacityError(f"stage {prev.stage + 1}: {exc}", bound=exc.bound, context=exc.context) from None
        rec = TowerRecord(prev.stage + 1, res.closure_group, res.structural, res.boundary, res)
        _check_stage(rec, prev, base_ng)
        stages.append(rec)
        if stabilized_at is None and rec.group.order() == prev.group.order() and res.boundary.map.is_surjective():
            stabilized_at = rec.stage
        if stabilized_at is not None and len(stages) >= min_stages:
            break
    if stabilized_at is None:
        msg = f"tower not stabilized within {max_stages} stages"
    else:
        msg = f"stabilized at stage {stabilized_at}"
    return Tower(stages, stabilized_at is not None, stabilized_at, reduction, coset_bound, msg)


def build_tower(
    phi: GroupHom,
    *,
    reduce_first: bool = True,
    max_stages: int = DEFAULT_MAX_STAGES,
    coset_bound: int | None = None,
    min_stages: int = 0,
) -> Tower:
    """Normal closures tower ``Gamma_1 = target, Gamma_{i+1} = Gamma_i^{phi_i}``.

    With ``reduce_first`` the tower of ``psi: Gamma/frak_K -> frak_C`` is built
    (it always stabilizes for finite groups) and the coset bound defaults to
    ``4 |Gamma/frak_K| g(|frak_C|)``.  Stops one stage after the connecting map
    becomes bijective, or at ``max_stages``.
    """
    red = None
    target = phi
    if reduce_first:
        target, red = reduce(phi)
        if coset_bound is None:
            coset_bound = reduced_coset_bound(red)
    if coset_bound is None:
        coset_bound = DEFAULT_MAX_COSETS
    p_gamma = presentation_for(target.domain)
    return _grow(target, max_stages=max_stages, coset_bound=coset_bound, min_stages=min_stages,
                 reduction=red, p_gamma=p_gamma)


@dataclass
class SubnormalChain:
    """``M_{k+1} -> M_k -> ... -> M_1 = G``; ``maps[0]`` leaves ``groups[0]``."""

    groups: list
    maps: list

    def composite(self) -> GroupHom:
        h = self.maps[0].map
        for n in self.maps[1:]:
            h = h.then(n.map)
        return h


def verify_subnormal_chain(c: SubnormalChain) -> bool:
    if len(c.maps) != len(c.groups) - 1:
        return False
    for i, n in enumerate(c.maps):
        if n.source != c.groups[i] or n.target != c.groups[i + 1]:
            return False
        if not n.is_valid():
            return False
    if not c.maps:
        return True
    comp = c.composite()
    return bool(is_subnormal(comp.image(), c.groups[-1]))


def inclusion_chain(groups: list) -> SubnormalChain:
    """Chain of inclusions ``groups[0] <= groups[1] <= ...`` acting by conjugation."""
    maps = [NormalMap(inclusion_hom(a, b), lambda m, q: m.conj(q)) for a, b in zip(groups, groups[1:])]
    return SubnormalChain(list(groups), maps)


@dataclass
class LimitResult:
    phi: GroupHom
    limit_group: PermGroup
    into_limit: GroupHom  # Gamma -> Gamma_inf
    from_limit: GroupHom  # Gamma_inf -> G
    stabilized_at: int
    reduction: Reduction
    tower: Tower
    chain: SubnormalChain
    to_frak_c: GroupHom  # Gamma_inf -> frak_C
    checks: dict = field(default_factory=dict)

    @property
    def bound(self) -> float:
        return self.reduction.bound()

    def to_json(self) -> dict:
        order = self.limit_group.order()
        return {
            "domain_order": self.phi.domain.order(),
            "codomain_order": self.phi.codomain.order(),
            "limit_order": order,
            "stabilized_at": self.stabilized_at,
            "tower_orders": self.tower.orders(),
            "frak_c_order": self.reduction.frak_c.order(),
            "frak_k_order": self.reduction.frak_k.order(),
            "bound": self.bound,
            "bound_slack": self.bound - order,
            "into_limit_kernel_order": self.into_limit.kernel().order(),
            "into_limit_bijective": self.into_limit.is_bijective(),
            "checks": self.checks,
        }


def _compose_connecting(tower: Tower, upto: int) -> GroupHom:
    """Gamma_upto -> Gamma_1 through the connecting maps."""
    stages = tower.stages
    h = identity_hom(stages[upto - 1].group)
    for i in range(upto - 1, 0, -1):
        h = h.then(stages[i].connecting.map)
    return h


def inverse_limit(
    phi: GroupHom,
    *,
    max_stages: int = DEFAULT_MAX_STAGES,
    coset_bound: int | None = None,
    min_stages: int = 0,
) -> LimitResult:
    """Gamma_inf as the stabilized member of the reduced tower, with all invariants checked."""
    tower = build_tower(phi, reduce_first=True, max_stages=max_stages, coset_bound=coset_bound,
                        min_stages=min_stages)
    red = tower.reduction
    if not tower.stabilized:
        raise InternalConsistencyError(
            f"reduced tower did not stabilize within {max_stages} stages (finiteness violated)"
        )
    t = tower.stabilized_at
    top = tower.stages[t - 1]
    limit = top.group
    into = red.projection.then(top.structural)
    to_c = _compose_connecting(tower, t)
    frak_c = red.frak_c
    G = phi.codomain
    from_limit = to_c.then(inclusion_hom(frak_c, G))

    # Gamma_t -> ... -> Gamma_2 -> C = C_r <| ... <| C_0 = G
    groups = [s.group for s in reversed(tower.stages[:t])]
    maps = [s.connecting for s in reversed(tower.stages[1:t])]
    c_terms = list(reversed(red.c_series.terms[: red.c_series.terminal_index + 1]))
    for a, b in zip(c_terms, c_terms[1:]):
        groups.append(b)
        maps.append(NormalMap(inclusion_hom(a, b), lambda m, q: m.conj(q)))
    chain = SubnormalChain(groups, maps)

    checks = {}
    checks["factorization"] = all(from_limit(into(x)) == phi(x) for x in phi.domain.generators)
    checks["subnormal_chain"] = verify_subnormal_chain(chain)
    ker = to_c.kernel()
    hyper = upper_central_series(limit)[-1]
    checks["hypercentral_kernel"] = ker.is_subgroup(hyper)
    checks["bound"] = within_bound(limit.order(), red.bound())
    checks["normally_generated"] = normal_closure(limit, into.image()).order() == limit.order()
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise InternalConsistencyError(f"limit failed invariants: {failed}")
    return LimitResult(phi, limit, into, from_limit, t, red, tower, chain, to_c, checks)
