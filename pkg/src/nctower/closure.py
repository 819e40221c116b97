"""Free normal closure of a homomorphism ``phi: Gamma -> Q`` as a crossed module over Q.

Two constructions:

* surjective phi: ``Gamma / [Gamma, K]`` with ``K = ker phi``; Q acts by
  conjugation through preimages.
* general phi: the Peiffer quotient of the free product of Q-indexed copies
  of Gamma.  Generator ``(x, q)`` stands for ``c(x)^q``, the boundary sends it
  to ``q^-1 phi(x) q`` and Q acts by ``(x, g)^q = (x, g q)``.  The group is
  realized by coset enumeration over the trivial subgroup, so it acts
  regularly on the coset table rows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .errors import CapacityError, InternalConsistencyError, RejectedInputError
from .fp import Presentation, presentation_for, regular_generating_subset, todd_coxeter
from .perm import (
    GroupHom,
    NormalMap,
    Permutation,
    PermGroup,
    commutator_subgroup,
    identity_hom,
    make_hom,
    normal_closure,
    quotient_data,
)

DEFAULT_MAX_COSETS = 200_000
FAST = "fast"
PEIFFER = "peiffer"


def peiffer_presentation(p_gamma: Presentation, phi: GroupHom, Q: PermGroup | None = None) -> Presentation:
    """Presentation of the free normal closure on generators ``(x, q)``.

    Generator ``(x, q)`` has index ``x * |Q| + position(q) + 1`` where positions
    follow ``Q.element_list``.  Relators: every relator of ``p_gamma`` in every
    copy, then ``(x,g)^-1 (y,h) (x,g) (y, h g^-1 phi(x) g)^-1`` for all x, y, g, h.
    """
    Q = phi.codomain if Q is None else Q
    if p_gamma.generator_count != len(phi.domain.generators):
        raise RejectedInputError("presentation and domain disagree on the number of generators")
    if Q != phi.codomain:
        raise RejectedInputError("Q must be the codomain of phi")
    elems = Q.element_list
    pos = Q.element_index
    nq = len(elems)
    nx = p_gamma.generator_count

    def gen(x: int, qi: int) -> int:
        return x * nq + qi + 1

    labels = tuple(f"{lab}_{qi}" for lab in p_gamma.labels for qi in range(nq))
    rels = []
    for qi in range(nq):
        for r in p_gamma.relators:
            rels.append(tuple(gen(abs(s) - 1, qi) * (1 if s > 0 else -1) for s in r))
    images = [phi(x) for x in phi.domain.generators]
    invs = [g.inverse() for g in elems]
    for x in range(nx):
        conj = [pos[invs[gi] * images[x] * elems[gi]] for gi in range(nq)]
        for y in range(nx):
            for gi in range(nq):
                c = elems[conj[gi]]
                for hi in range(nq):
                    target = pos[elems[hi] * c]
                    rels.append((-gen(x, gi), gen(y, hi), gen(x, gi), -gen(y, target)))
    return Presentation(nx * nq, tuple(rels), labels)


def compact_peiffer_presentation(p_gamma: Presentation, phi: GroupHom, Q: PermGroup | None = None) -> Presentation:
    """Same group as :func:`peiffer_presentation` with far fewer relators.

    Conjugation relators are kept only for the generators ``(x, g)`` with g in
    a set D of coset representatives of the normal closure N of the image
    together with enough elements that the boundaries ``g^-1 phi(x) g`` (g in D)
    generate N.  Every other generator is a conjugate of one of these by a
    word in them, and the boundary is well defined on the quotient, so the
    dropped relators are consequences of the kept ones.
    """
    Q = phi.codomain if Q is None else Q
    if p_gamma.generator_count != len(phi.domain.generators):
        raise RejectedInputError("presentation and domain disagree on the number of generators")
    elems = Q.element_list
    pos = Q.element_index
    nq = len(elems)
    nx = p_gamma.generator_count
    images = [phi(x) for x in phi.domain.generators]
    N = normal_closure(Q, phi.image())
    D = [Q.identity]
    sub = PermGroup(Q.degree, images)
    for g in elems:
        if sub.order() == N.order():
            break
        ts = [y.conj(g) for y in images]
        if any(t not in sub for t in ts):
            D.append(g)
            sub = PermGroup(Q.degree, list(sub.generators) + ts)
    seen = set()
    for g in elems:
        if g in N:
            continue
        key = frozenset(n * g for n in N.element_list)
        if key not in seen:
            seen.add(key)
            D.append(g)

    def gen(x: int, qi: int) -> int:
        return x * nq + qi + 1

    labels = tuple(f"{lab}_{qi}" for lab in p_gamma.labels for qi in range(nq))
    rels = []
    for qi in range(nq):
        for r in p_gamma.relators:
            rels.append(tuple(gen(abs(s) - 1, qi) * (1 if s > 0 else -1) for s in r))
    for x in range(nx):
        for g in D:
            gi = pos[g]
            c = images[x].conj(g)
            for y in range(nx):
                for hi in range(nq):
                    rels.append((-gen(x, gi), gen(y, hi), gen(x, gi), -gen(y, pos[elems[hi] * c])))
    return Presentation(nx * nq, tuple(rels), labels)


@dataclass
class CrossedModuleReport:
    equivariance: bool
    peiffer: bool
    composition: bool
    image_is_normal_closure: bool
    kernel_central: bool | None  # None when Q is not normally generated by the image
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.equivariance
            and self.peiffer
            and self.composition
            and self.image_is_normal_closure
            and self.kernel_central is not False
        )

    def to_json(self) -> dict:
        return {
            "equivariance": self.equivariance,
            "peiffer": self.peiffer,
            "composition": self.composition,
            "image_is_normal_closure": self.image_is_normal_closure,
            "kernel_central": self.kernel_central,
            "ok": self.ok,
            "witness": self.witness,
        }


@dataclass
class ClosureResult:
    """``Gamma --structural--> closure --boundary--> Q`` with Q acting on the closure.

    ``generator_pairs[k] = (x, q)`` records that closure generator k equals
    ``structural(x_gen)^q``; naturality maps between towers are built from it.
    """

    phi: GroupHom
    closure_group: PermGroup
    structural: GroupHom
    boundary: NormalMap
    generator_pairs: tuple
    path: str
    presentation: Presentation | None = None
    report: CrossedModuleReport | None = None

    def element_for(self, x: int, q: Permutation) -> Permutation:
        """The element ``(x, q) = c(x)^q`` of the closure."""
        return self.boundary.act(self.structural.gen_images[x], q)

    @cached_property
    def generator_index(self) -> dict:
        return {
            (x, q): self.element_for(x, q)
            for x in range(len(self.phi.domain.generators))
            for q in self.phi.codomain.element_list
        }

    def kernel_order(self) -> int:
        return self.boundary.map.kernel().order()

    def to_json(self, with_index: bool = True) -> dict:
        out = {
            "path": self.path,
            "domain_order": self.phi.domain.order(),
            "codomain_order": self.phi.codomain.order(),
            "closure_order": self.closure_group.order(),
            "boundary_image_order": self.boundary.map.image().order(),
            "boundary_kernel_order": self.kernel_order(),
            "check_report": self.report.to_json() if self.report else None,
        }
        if with_index:
            out["generator_index"] = [
                {"x": x, "q": q.cycles(), "element": m.cycles()}
                for (x, q), m in sorted(self.generator_index.items(), key=lambda kv: (kv[0][0], kv[0][1]._a))
            ]
        return out


def crossed_module_check(c: ClosureResult) -> CrossedModuleReport:
    phi, n = c.phi, c.boundary
    witness = {}
    eq = n.equivariance_failure()
    if eq:
        witness["equivariance"] = eq
    pf = n.peiffer_failure()
    if pf:
        witness["peiffer"] = pf
    comp = all(n.map(c.structural(x)) == phi(x) for x in phi.domain.generators)
    if not comp:
        witness["composition"] = "boundary o structural != phi on a generator"
    Q = phi.codomain
    ncl = normal_closure(Q, phi.image())
    image_ok = n.map.image() == ncl
    central = None
    if ncl.order() == Q.order():
        ker = n.map.kernel()
        M = c.closure_group
        central = all(k * m == m * k for k in ker.generators for m in M.generators)
        if not central:
            witness["kernel_central"] = "a boundary-kernel generator fails to commute"
    return CrossedModuleReport(eq is None, pf is None, comp, image_ok, central, witness)


def _fast_path(phi: GroupHom) -> ClosureResult:
    gamma, Q = phi.domain, phi.codomain
    K = phi.kernel()
    N = commutator_subgroup(gamma, K, gamma)
    if N.order() == 1:
        M = gamma
        proj = identity_hom(gamma)
    else:
        qd = quotient_data(gamma, N)
        M, proj = qd.group, qd.projection
    boundary_map = make_hom(M, Q, [phi(x) for x in gamma.generators])

    def act(m: Permutation, q: Permutation) -> Permutation:
        return m.conj(proj(phi.preimage(q)))

    one = Q.identity
    pairs = tuple((x, one) for x in range(len(gamma.generators)))
    return ClosureResult(phi, M, proj, NormalMap(boundary_map, act), pairs, FAST)


class _RegularAction:
    """Q-action on a regularly realized Peiffer closure, computed on coset indices."""

    def __init__(self, rows, gens, nx, Q):
        self.rows = rows
        self.gens = gens
        self.nx = nx
        self.Q = Q
        self.nq = Q.order()
        self.pos = Q.element_index
        self.elems = Q.element_list
        self._sigma = {}
        self._elem = {0: Permutation.identity(len(rows))}
        # spanning tree over positive generator columns
        self._tree = {0: None}
        order = [0]
        for c in order:
            for k in range(len(gens)):
                d = rows[c][2 * k]
                if d not in self._tree:
                    self._tree[d] = (c, k)
                    order.append(d)
        self._order = order

    def element(self, coset: int) -> Permutation:
        e = self._elem.get(coset)
        if e is None:
            parent, k = self._tree[coset]
            e = self.element(parent) * self.gens[k]
            self._elem[coset] = e
        return e

    def sigma(self, q: Permutation) -> list:
        s = self._sigma.get(q)
        if s is not None:
            return s
        nq, rows = self.nq, self.rows
        shift = [self.pos[self.elems[g] * q] for g in range(nq)]
        col_map = [(k // nq) * nq + shift[k % nq] for k in range(len(self.gens))]
        s = [-1] * len(rows)
        s[0] = 0
        for c in self._order:
            sc = s[c]
            for k in range(len(self.gens)):
                d = rows[c][2 * k]
                target = rows[sc][2 * col_map[k]]
                if s[d] < 0:
                    s[d] = target
                elif s[d] != target:
                    raise InternalConsistencyError(
                        f"copy-permuting action of {q} is not well defined on the closure"
                    )
        self._sigma[q] = s
        return s

    def __call__(self, m: Permutation, q: Permutation) -> Permutation:
        return self.element(self.sigma(q)[m._a[0]])


def _peiffer_path(phi: GroupHom, p_gamma: Presentation, max_cosets: int) -> ClosureResult:
    Q = phi.codomain
    pres = compact_peiffer_presentation(p_gamma, phi, Q)
    table = todd_coxeter(pres, (), max_cosets)
    if not table.is_complete:
        raise CapacityError(
            f"coset enumeration of the Peiffer presentation overflowed at {max_cosets} cosets",
            bound=max_cosets,
            context={"generators": pres.generator_count, "relators": len(pres.relators)},
        )
    n = len(table.rows)
    gens = [Permutation._raw(tuple(table.rows[c][2 * k] for c in range(n))) for k in range(pres.generator_count)]
    if n and not pres.holds_in(gens):
        raise InternalConsistencyError("Peiffer relators fail on the enumerated table")
    nq = Q.order()
    nx = p_gamma.generator_count
    elems = Q.element_list
    one_pos = Q.element_index[Q.identity]
    copy_one = [x * nq + one_pos for x in range(nx)]
    chosen = regular_generating_subset(table, copy_one)
    M = PermGroup(n, [gens[k] for k in chosen])
    if M.order() != n or not all(g in M for g in gens):
        raise InternalConsistencyError(f"closure table is not regular ({M.order()} != {n} cosets)")
    structural = make_hom(phi.domain, M, [gens[k] for k in copy_one])
    images = [phi(x) for x in phi.domain.generators]
    boundary_map = make_hom(M, Q, [images[k // nq].conj(elems[k % nq]) for k in chosen])
    action = _RegularAction(table.rows, gens, nx, Q)
    for q in Q.generators:
        action.sigma(q)
    pairs = tuple((k // nq, elems[k % nq]) for k in chosen)
    return ClosureResult(phi, M, structural, NormalMap(boundary_map, action), pairs, PEIFFER, pres)


def free_normal_closure(
    gamma: PermGroup | None,
    p_gamma: Presentation | None,
    phi: GroupHom,
    *,
    max_cosets: int = DEFAULT_MAX_COSETS,
    force_peiffer: bool = False,
    check: bool = True,
) -> ClosureResult:
    """Universal factorization ``Gamma -> Gamma^phi -> Q`` with the right map normal."""
    if gamma is not None and gamma != phi.domain:
        raise RejectedInputError("gamma must be the domain of phi")
    if phi.is_surjective() and not force_peiffer:
        result = _fast_path(phi)
    else:
        if p_gamma is None:
            p_gamma = presentation_for(phi.domain)
        if not p_gamma.holds_in(list(phi.domain.generators)):
            raise RejectedInputError("presentation relators do not hold on the domain generators")
        check_t = todd_coxeter(p_gamma, (), max(4 * phi.domain.order(), 16))
        if not check_t.is_complete or len(check_t) != phi.domain.order():
            raise RejectedInputError("presentation does not present the domain (realization order mismatch)")
        result = _peiffer_path(phi, p_gamma, max_cosets)
    if check:
        result.report = crossed_module_check(result)
        if not result.report.ok:
            raise InternalConsistencyError(f"closure failed its invariants: {result.report.witness}")
    return result


def comparison_map(src: ClosureResult, dst: ClosureResult, gamma_map: Callable, q_map: Callable) -> GroupHom:
    """Hom ``src.closure -> dst.closure`` sending ``c(x)^q`` to ``c'(gamma_map(x))^{q_map(q)}``.

    ``gamma_map(x)`` returns an element of dst's domain for a src generator
    index; the induced image is ``dst.structural(.)`` acted on by ``q_map(q)``.
    The result is verified by the graph test.
    """
    images = []
    for x, q in src.generator_pairs:
        base = dst.structural(gamma_map(x))
        images.append(dst.boundary.act(base, q_map(q)))
    return make_hom(src.closure_group, dst.closure_group, images)
