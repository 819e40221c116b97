"""Deterministic Schreier-Sims stabilizer chains on raw 0-based tuples."""
from __future__ import annotations

from typing import Iterator, Sequence

from .permutation import rinv, ridentity, ris_identity, rmul


def _first_moved(g: tuple) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class StabChain:
    """Base and strong generating set for the group generated by ``gens``.

    ``base_prefix`` points are placed first in the base, in order, even when
    redundant (their basic orbit is then a singleton).  Hom evaluation relies
    on that to sift a product group along one factor first.

    Attributes
    ----------
    base : list[int]
    strong : list[list[tuple]]
        ``strong[i]`` generates the pointwise stabilizer of ``base[:i]``.
    transversal : list[dict[int, tuple]]
        ``transversal[i][b]`` maps ``base[i]`` to ``b``.
    """

    def __init__(self, gens: Sequence[tuple], degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.identity = ridentity(degree)
        seen = set()
        uniq = []
        for g in gens:
            if g not in seen and not ris_identity(g):
                seen.add(g)
                uniq.append(g)
        self.base: list[int] = list(base_prefix)
        for g in uniq:
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))
        self.strong = [
            [g for g in uniq if all(g[b] == b for b in self.base[:i])] for i in range(len(self.base))
        ]
        self.transversal = [self._orbit(i) for i in range(len(self.base))]
        self._inverse = [dict() for _ in self.base]
        self._schreier_sims()
        self._inverse = [{b: rinv(u) for b, u in t.items()} for t in self.transversal]

    def _orbit(self, level: int) -> dict:
        point = self.base[level]
        trans = {point: self.identity}
        queue = [point]
        gens = self.strong[level]
        for b in queue:
            ub = trans[b]
            for s in gens:
                c = s[b]
                if c not in trans:
                    trans[c] = rmul(ub, s)
                    queue.append(c)
        return trans

    def _strip_from(self, g: tuple, start: int) -> tuple[tuple, int]:
        base, trans = self.base, self.transversal
        for level in range(start, len(base)):
            u = trans[level].get(g[base[level]])
            if u is None:
                return g, level
            g = rmul(g, rinv(u))
        return g, len(base)

    def _schreier_sims(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            trans = self.transversal[i]
            for beta, ub in list(trans.items()):
                for s in self.strong[i]:
                    sg = rmul(rmul(ub, s), rinv(trans[s[beta]]))
                    if ris_identity(sg):
                        continue
                    h, j = self._strip_from(sg, i + 1)
                    if j == len(self.base):
                        if ris_identity(h):
                            continue
                        self.base.append(_first_moved(h))
                        self.strong.append([])
                        self.transversal.append({})
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(h)
                        self.transversal[level] = self._orbit(level)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    # queries

    def order(self) -> int:
        out = 1
        for t in self.transversal:
            out *= len(t)
        return out

    def sift(self, g: tuple) -> tuple[tuple, int]:
        """Strip ``g`` through the chain; returns (residue, level reached)."""
        base, trans, inv = self.base, self.transversal, self._inverse
        for level in range(len(base)):
            b = g[base[level]]
            if b not in trans[level]:
                return g, level
            g = rmul(g, inv[level][b])
        return g, len(base)

    def contains(self, g: tuple) -> bool:
        if len(g) != self.degree:
            return False
        h, level = self.sift(g)
        return level == len(self.base) and ris_identity(h)

    def factor(self, g: tuple) -> list[tuple] | None:
        """Transversal factors ``[u_k, ..., u_0]`` with ``g = u_k * ... * u_0``, or None."""
        base, trans, inv = self.base, self.transversal, self._inverse
        factors = []
        for level in range(len(base)):
            b = g[base[level]]
            if b not in trans[level]:
                return None
            factors.append(trans[level][b])
            g = rmul(g, inv[level][b])
        if not ris_identity(g):
            return None
        factors.reverse()
        return factors

    def elements(self) -> Iterator[tuple]:
        """Every group element exactly once, in a fixed order."""
        levels = [list(t.values()) for t in self.transversal]

        def rec(level: int, acc: tuple):
            if level < 0:
                yield acc
                return
            for u in levels[level]:
                yield from rec(level - 1, rmul(acc, u))

        yield from rec(len(levels) - 1, self.identity)

    def strong_generators(self) -> list[tuple]:
        return list(self.strong[0]) if self.strong else []
