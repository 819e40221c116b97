"""Executable checks of the structural results on desk-scale instances.

Each checker takes a verified homomorphism and returns a :class:`CheckReport`.
``run_corpus`` applies every applicable checker to a fixed corpus; a report
with status ``"capacity"`` means a configured cap was hit and nothing was
concluded for that instance.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable

from .closure import comparison_map, free_normal_closure
from .errors import CapacityError, PreconditionError, RejectedInputError
from .perm import (
    GroupHom,
    PermGroup,
    derived_series,
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
from .presets import preset, preset_names
from .tower import LimitResult, build_tower, inverse_limit

PASS = "pass"
FAIL = "fail"
SKIP = "skip"
CAPACITY = "capacity"

OVERGROUP_CAP = 500
UNIVERSALITY_CAP = 24
SEARCH_CAP = 200_000
KERNEL_CLOSURE_COSETS = 50_000


@dataclass
class CheckReport:
    theorem: str
    instance: str
    status: str
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "instance": self.instance, "status": self.status,
                "witness": self.witness}


@dataclass
class Instance:
    name: str
    phi: GroupHom
    tags: tuple = ()


def _report(theorem, instance, ok, witness) -> CheckReport:
    return CheckReport(theorem, instance, PASS if ok else FAIL, witness)


def _limit(phi, limit):
    return limit if limit is not None else inverse_limit(phi)


def _label(phi: GroupHom) -> str:
    return f"{phi.domain.name or phi.domain.order()} -> {phi.codomain.name or phi.codomain.order()}"


# comparison maps between towers


def _same_length(a: LimitResult, b: LimitResult) -> tuple:
    n = max(len(a.tower), len(b.tower))
    if len(a.tower) < n:
        a = inverse_limit(a.phi, min_stages=n)
    if len(b.tower) < n:
        b = inverse_limit(b.phi, min_stages=n)
    return a, b


def tower_comparison(src: LimitResult, dst: LimitResult) -> tuple:
    """Natural maps between the top stages of two reduced towers over the same Gamma.

    Both towers must start at the same subnormal closure and have domains
    ``Gamma / K`` built from the generators of Gamma.  Returns
    ``(eta, src, dst)`` with ``eta: top(src) -> top(dst)``; the limits may be
    recomputed so that the towers have equal length.
    """
    src, dst = _same_length(src, dst)
    eta = inclusion_hom(src.tower[0].group, dst.tower[0].group)
    dgens = dst.tower[0].structural.domain.generators
    for i in range(1, len(src.tower)):
        eta = comparison_map(src.tower[i].closure, dst.tower[i].closure, lambda x: dgens[x], eta)
    return eta, src, dst


def _top_into(L: LimitResult) -> GroupHom:
    return L.reduction.projection.then(L.tower[len(L.tower) - 1].structural)


# subnormal overgroups


def subnormal_overgroups(phi: GroupHom, cap: int = OVERGROUP_CAP, depth: int = 3) -> list:
    """Subnormal S with image(phi) <= S <= G among the groups <image, g1, .., g_depth>."""
    G = phi.codomain
    H = phi.image()
    seen = {H.key(): H}
    frontier = [H]
    skipped = 0
    for _ in range(depth):
        new = []
        for S in frontier:
            for g in G.element_list:
                if g in S:
                    continue
                T = PermGroup(G.degree, list(S.generators) + [g])
                k = T.key()
                if k in seen:
                    continue
                if len(seen) >= cap:
                    skipped += 1
                    continue
                seen[k] = T
                new.append(T)
        frontier = new
    if skipped:
        raise CapacityError(
            f"subnormal overgroup search exceeded {cap} subgroups ({skipped} candidates skipped)",
            bound=cap, context={"skipped": skipped},
        )
    seen.setdefault(G.key(), G)
    out = [S for S in seen.values() if is_subnormal(S, G)]
    out.sort(key=lambda S: (S.order(), sorted(g._a for g in S.generators)))
    return out


# checkers


def check_nilpotent_fixed_point(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "") -> CheckReport:
    """For nilpotent domain and codomain the limit map is an isomorphism."""
    if not (is_nilpotent(phi.domain) and is_nilpotent(phi.codomain)):
        raise PreconditionError("domain and codomain must both be nilpotent")
    L = _limit(phi, limit)
    into = L.into_limit
    w = {"domain_order": phi.domain.order(), "limit_order": L.limit_group.order(),
         "kernel_order": into.kernel().order()}
    return _report("nilpotent_fixed_point", instance or _label(phi), into.is_bijective(), w)


def _lcs_terms(G: PermGroup, length: int) -> list:
    terms = lower_central_series(G)
    return terms + [terms[-1]] * (length - len(terms))


def check_lcs_quotients(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "") -> CheckReport:
    """|Gamma/gamma_k| = |Gamma_inf/gamma_k| and the induced maps are injective, for all k."""
    L = _limit(phi, limit)
    gamma, H = phi.domain, L.limit_group
    n = max(len(lower_central_series(gamma)), len(lower_central_series(H))) + 1
    a, b = _lcs_terms(gamma, n), _lcs_terms(H, n)
    rows = []
    ok = True
    for k in range(n):
        qa = gamma.order() // a[k].order()
        qb = H.order() // b[k].order()
        pre = L.into_limit.preimage_of(b[k]).order()
        injective = pre == a[k].order()
        rows.append({"k": k + 1, "domain_quotient": qa, "limit_quotient": qb, "injective": injective})
        ok = ok and qa == qb and injective
    return _report("lcs_quotients", instance or _label(phi), ok, {"levels": rows})


def check_finiteness_and_bound(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "") -> CheckReport:
    """The reduced tower stabilizes and |Gamma_inf| <= |Gamma/K| g(|C|)."""
    L = _limit(phi, limit)
    order = L.limit_group.order()
    w = {"limit_order": order, "bound": L.bound, "slack": L.bound - order,
         "stabilized_at": L.stabilized_at, "tower_orders": L.tower.orders()}
    return _report("finiteness_bound", instance or _label(phi), L.tower.stabilized and L.checks["bound"], w)


def check_subnormal_invariance(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "",
                               cap: int = OVERGROUP_CAP) -> CheckReport:
    """Corestricting to any subnormal overgroup of the image leaves the limit unchanged."""
    L = _limit(phi, limit)
    rows = []
    ok = True
    for S in subnormal_overgroups(phi, cap):
        LS = L if S.order() == phi.codomain.order() else inverse_limit(phi.corestrict(S))
        eta, src, dst = tower_comparison(LS, L)
        commutes = all(eta(a) == b for a, b in zip(_top_into(src).gen_images, _top_into(dst).gen_images))
        row = {"S_order": S.order(), "limit_order": LS.limit_group.order(),
               "comparison_bijective": eta.is_bijective(), "commutes": commutes}
        rows.append(row)
        ok = ok and row["limit_order"] == L.limit_group.order() and row["comparison_bijective"] and commutes
    return _report("subnormal_invariance", instance or _label(phi), ok,
                   {"limit_order": L.limit_group.order(), "overgroups": rows})


def commuting_maps(L: LimitResult, M: PermGroup, phi_m: GroupHom, s: GroupHom, *,
                   search_cap: int = SEARCH_CAP) -> list:
    """All homs h: Gamma_inf -> M with h o phi_inf = phi_m and s o h = l (exhaustive)."""
    H = L.limit_group
    into, l = L.into_limit, L.from_limit
    forced_src = [into(x) for x in phi_m.domain.generators]
    forced_img = [phi_m(x) for x in phi_m.domain.generators]
    gens = list(forced_src)
    sub = PermGroup(H.degree, gens)
    extra = []
    for y in H.element_list:
        if y not in sub:
            extra.append(y)
            gens.append(y)
            sub = PermGroup(H.degree, gens)
    fibers = []
    for y in extra:
        target = l(y)
        fibers.append([z for z in M.element_list if s(z) == target])
    total = 1
    for f in fibers:
        total *= len(f)
    if total > search_cap:
        raise CapacityError(f"hom search space {total} exceeds {search_cap}", bound=search_cap)
    domain = PermGroup(H.degree, gens)
    found = []
    for choice in itertools.product(*fibers):
        try:
            h = make_hom(domain, M, forced_img + list(choice))
        except RejectedInputError:
            continue
        found.append(h)
    return found


def _universality_targets(L: LimitResult, phi: GroupHom, cap: int) -> list:
    """(label, M, phi_M, s) for subnormal overgroups and for the tower stages."""
    G = phi.codomain
    out = []
    for S in subnormal_overgroups(phi, cap=OVERGROUP_CAP):
        out.append((f"subgroup{S.order()}", S, phi.corestrict(S), inclusion_hom(S, G)))
    frak_c = L.reduction.frak_c
    incl = inclusion_hom(frak_c, G)
    proj = L.reduction.projection
    down = identity_hom(frak_c)
    for i, rec in enumerate(L.tower.stages[: L.stabilized_at]):
        if i > 0:
            down = rec.connecting.map.then(down)
        out.append((f"stage{rec.stage}", rec.group, proj.then(rec.structural), down.then(incl)))
    return out


def check_universality(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "",
                       cap: int = UNIVERSALITY_CAP) -> CheckReport:
    """Exactly one map from the limit into each subnormal factorization commutes with both triangles."""
    L = _limit(phi, limit)
    if L.limit_group.order() > cap:
        raise CapacityError(f"|Gamma_inf| = {L.limit_group.order()} exceeds the universality cap {cap}", bound=cap)
    rows = []
    ok = True
    for label, M, phi_m, s in _universality_targets(L, phi, cap):
        n = len(commuting_maps(L, M, phi_m, s))
        rows.append({"target": label, "order": M.order(), "commuting_maps": n})
        ok = ok and n == 1
    return _report("universality", instance or _label(phi), ok,
                   {"limit_order": L.limit_group.order(), "targets": rows})


def check_kernel_reduction(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "",
                           max_cosets: int = KERNEL_CLOSURE_COSETS) -> CheckReport:
    """The closure of phi and of the induced map on Gamma/K agree through the natural map."""
    L = _limit(phi, limit)
    red = L.reduction
    K = red.frak_k
    w = {"frak_k_order": K.order()}
    if K.order() == 1:
        w["note"] = "K trivial: Gamma/K = Gamma, both closures coincide"
        return _report("kernel_reduction", instance or _label(phi), True, w)
    src = free_normal_closure(None, None, phi, max_cosets=max_cosets)
    qgroup = red.projection.codomain
    rho = make_hom(qgroup, phi.codomain, [phi(x) for x in phi.domain.generators])
    dst = free_normal_closure(None, qgroup.presentation, rho, max_cosets=max_cosets)
    qgens = qgroup.generators
    eta = comparison_map(src, dst, lambda x: qgens[x], lambda q: q)
    w.update({"closure_order": src.closure_group.order(), "reduced_closure_order": dst.closure_group.order(),
              "comparison_bijective": eta.is_bijective()})
    ok = src.closure_group.order() == dst.closure_group.order() and eta.is_bijective()
    return _report("kernel_reduction", instance or _label(phi), ok, w)


def residual_class(G: PermGroup) -> int:
    """Nilpotency class of G / gamma_inf(G)."""
    terms = lower_central_series(G)
    t = terms[-1].order()
    return next(i for i, T in enumerate(terms) if T.order() == t)


def check_perfect_case(phi: GroupHom, *, limit: LimitResult | None = None, instance: str = "") -> CheckReport:
    """Perfect-case structure.

    ``central_extension`` (Gamma perfect, G normally generated by the image):
    Gamma_2 is perfect, its kernel over G is central and Gamma_3 -> Gamma_2 is
    bijective.  ``central_product`` (C perfect): H = Gamma_inf is the central
    product of its perfect core L and its hypercenter Z, with class(Z) <= c + 1.
    ``kernel_class`` (C perfect): class(ker phi_inf) >= d - c - 1.
    """
    gamma, G = phi.domain, phi.codomain
    gamma_perfect = is_perfect(gamma)
    L = None
    branches = {}
    normally_generated = normal_closure(G, phi.image()).order() == G.order()
    if gamma_perfect and normally_generated:
        T = build_tower(phi, reduce_first=False, max_stages=3, min_stages=3)
        g2 = T.stages[1]
        ker = g2.connecting.map.kernel()
        central = all(k * m == m * k for k in ker.generators for m in g2.group.generators)
        top = T.stages[2].connecting.map
        b = {"gamma2_order": g2.group.order(), "gamma2_perfect": is_perfect(g2.group),
             "kernel_central": central, "gamma3_order": T.stages[2].group.order(),
             "gamma3_to_gamma2_bijective": top.is_bijective()}
        b["ok"] = b["gamma2_perfect"] and central and b["gamma3_to_gamma2_bijective"]
        branches["central_extension"] = b
    else:
        branches["central_extension"] = {"skipped": "needs a perfect domain normally generating the target"}
    L = _limit(phi, limit)
    frak_c = L.reduction.frak_c
    if is_perfect(frak_c):
        H = L.limit_group
        core = derived_series(H)[-1]
        Z = upper_central_series(H)[-1]
        LZ = PermGroup(H.degree, list(core.generators) + list(Z.generators))
        commute = all(a * z == z * a for a in core.generators for z in Z.generators)
        c = residual_class(gamma)
        zc = nilpotency_class(Z)
        b = {"H_order": H.order(), "core_order": core.order(), "hypercenter_order": Z.order(),
             "product_is_H": LZ.order() == H.order(), "core_commutes_with_hypercenter": commute,
             "hypercenter_class": zc, "c": c}
        b["ok"] = b["product_is_H"] and commute and zc is not None and zc <= c + 1
        branches["central_product"] = b
        K = phi.kernel()
        d = residual_class(K)
        e = nilpotency_class(L.into_limit.kernel())
        kb = {"d": d, "c": c, "kernel_class": e}
        # a non-nilpotent kernel has no finite class; the lower bound holds vacuously
        kb["ok"] = e is None or e >= d - c - 1
        branches["kernel_class"] = kb
    else:
        skip = {"skipped": "subnormal closure of the image is not perfect"}
        branches["central_product"] = dict(skip)
        branches["kernel_class"] = dict(skip)
    if not gamma_perfect and "skipped" in branches["central_product"]:
        raise PreconditionError("perfect-case checks need a perfect domain or a perfect subnormal closure")
    ok = all(b.get("ok", True) for b in branches.values())
    return _report("perfect_case", instance or _label(phi), ok, {"branches": branches})


THEOREMS = {
    "nilpotent": check_nilpotent_fixed_point,
    "lcs": check_lcs_quotients,
    "bound": check_finiteness_and_bound,
    "subnormal": check_subnormal_invariance,
    "universality": check_universality,
    "kernel": check_kernel_reduction,
    "perfect": check_perfect_case,
}


def applicable(theorem: str, inst: Instance, limit: LimitResult | None) -> bool:
    phi = inst.phi
    if theorem == "nilpotent":
        return is_nilpotent(phi.domain) and is_nilpotent(phi.codomain)
    if theorem == "subnormal":
        return phi.codomain.order() <= 24
    if theorem == "universality":
        return limit is not None and limit.limit_group.order() <= UNIVERSALITY_CAP
    if theorem == "perfect":
        return is_perfect(phi.domain) or (limit is not None and is_perfect(limit.reduction.frak_c))
    return True


# corpus


def _named(G: PermGroup, name: str) -> PermGroup:
    G.name = name
    return G


def _instances_for(name: str) -> list:
    G = preset(name)
    out = [Instance(f"id {name}", identity_hom(G), ("identity",))]
    for k, N in enumerate(normal_subgroups(G)):
        if N.order() == 1:
            continue
        qd = quotient_data(G, N)
        _named(qd.group, f"{name}/N{N.order()}")
        out.append(Instance(f"{name} -> {name}/N{N.order()}#{k}", qd.projection, ("surjection",)))
    C2 = preset("C2")
    out.append(Instance(f"trivial {name} -> C2", trivial_hom(G, C2), ("trivial",)))
    for i, g in enumerate(G.generators):
        H = PermGroup(G.degree, [g], name=f"<{name}.{i}>")
        if H.order() < G.order():
            out.append(Instance(f"<{name}.{i}> -> {name}", inclusion_hom(H, G), ("inclusion",)))
    return out


def _fixtures() -> list:
    S3, S4, S5, A5 = preset("S3"), preset("S4"), preset("S5"), preset("A5")
    pairs = [
        ("S3 -> S4", PermGroup(4, ["(1 2)", "(1 2 3)"], name="S3"), S4),
        ("A4 -> S4", PermGroup(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4"), S4),
        ("D4 -> S4", PermGroup(4, ["(1 2 3 4)", "(1 3)"], name="D4"), S4),
        ("V4 -> S4", PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"], name="V4"), S4),
        ("<(12)(34)> -> S4", PermGroup(4, ["(1 2)(3 4)"], name="C2"), S4),
        ("<(12)> -> S4", PermGroup(4, ["(1 2)"], name="C2"), S4),
        ("<(12)> -> S3", PermGroup(3, ["(1 2)"], name="C2"), S3),
        ("A3 -> S3", PermGroup(3, ["(1 2 3)"], name="A3"), S3),
        ("A5 -> S5", PermGroup(5, list(A5.generators), name="A5"), S5),
    ]
    out = [Instance(n, inclusion_hom(H, G), ("inclusion", "fixture")) for n, H, G in pairs]
    C2, C3 = preset("C2"), preset("C3")
    out.append(Instance("trivial C2 -> C3", trivial_hom(C2, C3), ("trivial", "fixture")))
    out.append(Instance("id A5", identity_hom(A5), ("identity", "fixture", "perfect")))
    SL = preset("SL25")
    center = PermGroup(SL.degree, [g for g in SL.element_list if all(g * x == x * g for x in SL.generators)])
    qd = quotient_data(SL, center)
    _named(qd.group, "PSL(2,5)")
    out.append(Instance("SL(2,5) -> PSL(2,5)", qd.projection, ("surjection", "fixture", "perfect")))
    return out


CORPORA = ("tiny", "small")


def build_corpus(name: str = "small") -> list:
    """``tiny``: presets of order <= 8.  ``small``: presets of order <= 16, S4 and fixtures."""
    if name == "tiny":
        groups = preset_names(max_order=8)
    elif name == "small":
        groups = preset_names(max_order=16) + ["S4"]
    elif name == "empty":
        return []
    else:
        raise RejectedInputError(f"unknown corpus {name!r}; choose from {CORPORA}")
    out = []
    for g in groups:
        out.extend(_instances_for(g))
    if name == "small":
        out.extend(_fixtures())
    return out


def run_corpus(corpus, theorems=None, *, on_report: Callable | None = None) -> list:
    """Run checkers over instances; capacity errors become ``capacity`` reports."""
    if isinstance(corpus, str):
        corpus = build_corpus(corpus)
    names = list(THEOREMS) if theorems is None else list(theorems)
    for t in names:
        if t not in THEOREMS:
            raise RejectedInputError(f"unknown theorem {t!r}; choose from {sorted(THEOREMS)}")
    reports = []

    def emit(r):
        reports.append(r)
        if on_report is not None:
            on_report(r)

    for inst in corpus:
        try:
            limit = inverse_limit(inst.phi)
        except CapacityError as exc:
            limit = None
            for t in names:
                emit(CheckReport(t, inst.name, CAPACITY, {"error": str(exc)}))
            continue
        for t in names:
            if not applicable(t, inst, limit):
                continue
            try:
                r = THEOREMS[t](inst.phi, limit=limit, instance=inst.name)
            except CapacityError as exc:
                r = CheckReport(t, inst.name, CAPACITY, {"error": str(exc)})
            except PreconditionError as exc:
                r = CheckReport(t, inst.name, SKIP, {"reason": str(exc)})
            emit(r)
    return reports


def summarize(reports) -> dict:
    out = {"total": len(reports), PASS: 0, FAIL: 0, SKIP: 0, CAPACITY: 0, "by_theorem": {}}
    for r in reports:
        out[r.status] += 1
        t = out["by_theorem"].setdefault(r.theorem, {PASS: 0, FAIL: 0, SKIP: 0, CAPACITY: 0})
        t[r.status] += 1
    out["ok"] = out[FAIL] == 0
    return out


def report_lines(reports) -> str:
    return "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in reports)
