"""Homomorphisms between permutation groups, and normal maps (crossed modules).

A generator assignment ``x_i -> y_i`` defines a homomorphism iff the subgroup
D of ``domain x codomain`` generated by the pairs ``(x_i, y_i)`` has the same
order as the domain.  D is realized on ``n + m`` points (domain points first);
sifting ``(g, 1)`` through a chain of D with the domain points as base prefix
leaves ``(1, h(g)^-1)``, which gives evaluation for free.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

from ..errors import InternalConsistencyError, NotAHomomorphismError, RejectedInputError
from .chain import StabChain
from .group import PermGroup
from .permutation import Permutation, rinv, ris_identity, rmul


TABLE_BOUND = 20_000


def _pair(g: tuple, h: tuple, n: int) -> tuple:
    return g + tuple(x + n for x in h)


class GroupHom:
    """Homomorphism ``domain -> codomain`` given by generator images."""

    def __init__(self, domain: PermGroup, codomain: PermGroup, gen_images: Sequence, *, _trusted=False):
        images = tuple(Permutation.parse(y, codomain.degree) for y in gen_images)
        if len(images) != len(domain.generators):
            raise RejectedInputError(
                f"{len(images)} generator images given for {len(domain.generators)} domain generators"
            )
        for y in images:
            if y not in codomain:
                raise RejectedInputError(f"generator image {y} is not in the codomain")
        self.domain = domain
        self.codomain = codomain
        self.gen_images = images
        if not _trusted:
            if domain.order() <= TABLE_BOUND:
                self.__dict__["_table"] = self._bfs_table(True)
            else:
                self._graph_test()

    # chains of the graph group

    def _graph_gens(self) -> list:
        n = self.domain.degree
        return [_pair(x._a, y._a, n) for x, y in zip(self.domain.generators, self.gen_images)]

    @cached_property
    def _eval_chain(self) -> StabChain:
        n, m = self.domain.degree, self.codomain.degree
        return StabChain(self._graph_gens(), n + m, base_prefix=range(n))

    @cached_property
    def _kernel_chain(self) -> StabChain:
        n, m = self.domain.degree, self.codomain.degree
        return StabChain(self._graph_gens(), n + m, base_prefix=range(n, n + m))

    def _graph_test(self) -> None:
        chain = self._eval_chain
        if chain.order() == self.domain.order():
            return
        n = self.domain.degree
        witness = None
        # a strong generator fixing every domain point has a nontrivial codomain part
        for level in range(len(chain.base)):
            if chain.base[level] >= n:
                for s in chain.strong[level]:
                    if ris_identity(s[:n]):
                        witness = Permutation._raw(tuple(x - n for x in s[n:]))
                        break
                break
        raise NotAHomomorphismError(
            f"generator images do not define a homomorphism: graph group has order "
            f"{chain.order()} != |domain| = {self.domain.order()}"
            + (f"; identity of the domain would map to {witness}" if witness else ""),
            witness=witness,
        )

    def is_verified(self) -> bool:
        """Independent graph-group test (Schreier-Sims on the graph of the assignment)."""
        return self._eval_chain.order() == self.domain.order()

    # evaluation

    def _bfs_table(self, check: bool) -> dict:
        """Element -> image by BFS over the Cayley graph; with ``check`` every edge is verified."""
        one = self.domain.identity
        table = {one: self.codomain.identity}
        queue = [one]
        steps = list(zip(self.domain.generators, self.gen_images))
        for g in queue:
            hg = table[g]
            for x, y in steps:
                gx = g * x
                img = hg * y
                prev = table.get(gx)
                if prev is None:
                    table[gx] = img
                    queue.append(gx)
                elif check and prev != img:
                    raise NotAHomomorphismError(
                        f"generator images do not define a homomorphism: {gx} would map to both "
                        f"{prev} and {img}",
                        witness=prev * img.inverse(),
                    )
        return table

    @cached_property
    def _table(self) -> dict | None:
        """Element -> image for small domains."""
        if self.domain.order() > TABLE_BOUND:
            return None
        return self._bfs_table(False)

    @cached_property
    def _section(self) -> dict | None:
        """Image element -> first domain element (BFS order) mapping to it."""
        t = self._table
        if t is None:
            return None
        sec = {}
        for g, h in t.items():
            sec.setdefault(h, g)
        return sec

    def __call__(self, g: Permutation) -> Permutation:
        t = self._table
        if t is not None:
            h = t.get(g)
            if h is None:
                raise RejectedInputError(f"{g} is not in the domain")
            return h
        n = self.domain.degree
        chain = self._eval_chain
        x = _pair(g._a, tuple(range(self.codomain.degree)), n)
        r, level = chain.sift(x)
        if level < len(chain.base) or not ris_identity(r[:n]):
            raise RejectedInputError(f"{g} is not in the domain")
        return Permutation._raw(rinv(tuple(v - n for v in r[n:])))

    def preimage(self, q: Permutation) -> Permutation:
        """Some domain element mapping to ``q``."""
        sec = self._section
        if sec is not None:
            g = sec.get(q)
            if g is None:
                raise RejectedInputError(f"{q} is not in the image")
            return g
        n, m = self.domain.degree, self.codomain.degree
        chain = self._kernel_chain
        r = q._a
        used = []
        for level in range(m):
            b = chain.base[level]
            u = chain.transversal[level].get(n + r[b - n])
            if u is None:
                raise RejectedInputError(f"{q} is not in the image")
            r = rmul(r, rinv(tuple(v - n for v in u[n:])))
            used.append(u)
        if not ris_identity(r):
            raise RejectedInputError(f"{q} is not in the image")
        acc = chain.identity
        for u in reversed(used):
            acc = rmul(acc, u)
        return Permutation._raw(acc[:n])

    # derived groups

    @cached_property
    def _kernel(self) -> PermGroup:
        n, m = self.domain.degree, self.codomain.degree
        chain = self._kernel_chain
        gens = []
        if len(chain.base) > m:
            gens = [Permutation._raw(s[:n]) for s in chain.strong[m]]
        return PermGroup(n, gens)

    def kernel(self) -> PermGroup:
        return self._kernel

    @cached_property
    def _image(self) -> PermGroup:
        return PermGroup(self.codomain.degree, self.gen_images)

    def image(self) -> PermGroup:
        return self._image

    def is_injective(self) -> bool:
        return self._kernel.order() == 1

    def is_surjective(self) -> bool:
        return self._image.order() == self.codomain.order()

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image_of(self, H: PermGroup) -> PermGroup:
        return PermGroup(self.codomain.degree, [self(g) for g in H.generators])

    def preimage_of(self, S: PermGroup) -> PermGroup:
        """Full preimage of ``S`` (intersected with the image)."""
        gens = list(self._kernel.generators)
        img = self._image
        for s in S.generators:
            if s in img:
                gens.append(self.preimage(s))
        # S may not be generated by elements of the image; fall back to enumeration
        if not all(s in img for s in S.generators):
            gens.extend(self.preimage(s) for s in S if s in img)
        return PermGroup(self.domain.degree, gens)

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite ``other o self`` (apply self first)."""
        if other.domain != self.codomain:
            raise RejectedInputError("composite needs matching codomain/domain")
        return GroupHom(self.domain, other.codomain, [other(y) for y in self.gen_images], _trusted=True)

    def agrees_with(self, other: "GroupHom") -> bool:
        return (
            self.domain == other.domain
            and all(self(x) == other(x) for x in self.domain.generators)
        )

    def restrict(self, H: PermGroup) -> "GroupHom":
        return GroupHom(H, self.codomain, [self(g) for g in H.generators], _trusted=True)

    def corestrict(self, S: PermGroup) -> "GroupHom":
        return GroupHom(self.domain, S, self.gen_images, _trusted=True)

    def __repr__(self) -> str:
        return f"<GroupHom order {self.domain.order()} -> order {self.codomain.order()}>"


def make_hom(domain: PermGroup, codomain: PermGroup, gen_images: Sequence) -> GroupHom:
    """Verified homomorphism; raises NotAHomomorphismError on a bad assignment."""
    return GroupHom(domain, codomain, gen_images)


def identity_hom(G: PermGroup) -> GroupHom:
    return GroupHom(G, G, G.generators, _trusted=True)


def inclusion_hom(H: PermGroup, G: PermGroup) -> GroupHom:
    if not H.is_subgroup(G):
        raise RejectedInputError("inclusion needs H <= G")
    return GroupHom(H, G, H.generators, _trusted=True)


def trivial_hom(domain: PermGroup, codomain: PermGroup) -> GroupHom:
    return GroupHom(domain, codomain, [codomain.identity] * len(domain.generators), _trusted=True)


def kernel(h: GroupHom) -> PermGroup:
    return h.kernel()


def image(h: GroupHom) -> PermGroup:
    return h.image()


class NormalMap:
    """A homomorphism ``n: M -> Q`` with a right action ``(m, q) -> m^q`` of Q on M.

    ``action`` must be a callable on arbitrary elements.  The axioms are
    checked on generators:

    * equivariance  ``n(m^q) = q^-1 n(m) q``
    * Peiffer       ``m^{n(m')} = m'^-1 m m'``
    """

    def __init__(self, map: GroupHom, action: Callable[[Permutation, Permutation], Permutation]):
        self.map = map
        self.action = action

    @property
    def source(self) -> PermGroup:
        return self.map.domain

    @property
    def target(self) -> PermGroup:
        return self.map.codomain

    def act(self, m: Permutation, q: Permutation) -> Permutation:
        return self.action(m, q)

    @cached_property
    def check_generators(self) -> tuple:
        """Short generating set of the source; the axioms are multiplicative, so it suffices."""
        from .subgroups import small_generating_set

        return tuple(small_generating_set(self.source))

    def closure_failure(self):
        """First generator pair whose action leaves M."""
        M = self.source
        for m in self.check_generators:
            for q in self.target.generators:
                if self.action(m, q) not in M:
                    return {"m": m.cycles(), "q": q.cycles()}
        return None

    def equivariance_failure(self):
        n = self.map
        for m in self.check_generators:
            for q in self.target.generators:
                if n(self.action(m, q)) != n(m).conj(q):
                    return {"m": m.cycles(), "q": q.cycles()}
        return None

    def peiffer_failure(self):
        n = self.map
        gens = self.check_generators
        for m in gens:
            for m2 in gens:
                if self.action(m, n(m2)) != m.conj(m2):
                    return {"m": m.cycles(), "m2": m2.cycles()}
        return None

    def action_is_by_automorphisms(self) -> bool:
        """Each target generator acts as an endomorphism of M (graph test on a short generating set)."""
        M = self.source
        S = PermGroup(M.degree, self.check_generators)
        for q in self.target.generators:
            imgs = [self.action(m, q) for m in S.generators]
            try:
                GroupHom(S, M, imgs)
            except NotAHomomorphismError:
                return False
        return True

    def is_valid(self) -> bool:
        return (
            self.closure_failure() is None
            and self.action_is_by_automorphisms()
            and self.equivariance_failure() is None
            and self.peiffer_failure() is None
        )

    def then(self, other: "NormalMap") -> GroupHom:
        return self.map.then(other.map)


def conjugation_normal_map(N: PermGroup, G: PermGroup) -> NormalMap:
    """Inclusion of a normal subgroup as a normal map (action by conjugation)."""
    if not N.is_normal_in(G):
        raise RejectedInputError("subgroup is not normal")
    return NormalMap(inclusion_hom(N, G), lambda m, q: m.conj(q))


def check_hom_exhaustively(h: GroupHom) -> bool:
    """h(ab) = h(a)h(b) over all pairs, via element-wise images (small domains only)."""
    elems = h.domain.element_list
    img = {g: h(g) for g in elems}
    return all(img[a * b] == img[a] * img[b] for a in elems for b in elems)


def _ensure(cond: bool, message: str) -> None:
    if not cond:
        raise InternalConsistencyError(message)
