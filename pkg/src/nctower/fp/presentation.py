"""Finite presentations, their JSON form, and presentations derived from permutation groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import CapacityError, RejectedInputError
from ..perm import Permutation, PermGroup
from .words import Word, evaluate, format_word, free_reduce, inverse, parse_word

CAYLEY_BOUND = 360


def default_labels(n: int) -> tuple:
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"x{i + 1}" for i in range(n))


@dataclass(frozen=True)
class Presentation:
    """``<x_1..x_n | relators>``; relators are stored freely reduced.

    Empty relators are kept (they can arise from a relator scheme that is
    trivial for some index choices) so that relator counts stay predictable.
    """

    generator_count: int
    relators: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        n = self.generator_count
        rels = []
        for r in self.relators:
            r = free_reduce(r)
            if any(abs(s) > n for s in r):
                raise RejectedInputError(f"relator {r} uses a generator outside 1..{n}")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))
        labels = tuple(self.labels) if self.labels else default_labels(n)
        if len(labels) != n:
            raise RejectedInputError("label count does not match generator count")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def parse(cls, gens: Sequence[str], relators: Sequence[str]) -> "Presentation":
        labels = tuple(gens)
        return cls(len(labels), tuple(parse_word(r, labels) for r in relators), labels)

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        try:
            return cls.parse(obj["gens"], obj.get("relators", []))
        except (KeyError, TypeError) as exc:
            raise RejectedInputError(f"presentation JSON needs 'gens' and 'relators': {exc}") from None

    def to_json(self) -> dict:
        return {
            "gens": list(self.labels),
            "relators": [format_word(r, self.labels) for r in self.relators],
        }

    def with_relators(self, extra: Sequence[Word]) -> "Presentation":
        return Presentation(self.generator_count, self.relators + tuple(extra), self.labels)

    def holds_in(self, gens: Sequence[Permutation]) -> bool:
        """Every relator evaluates to the identity on ``gens``."""
        if len(gens) != self.generator_count:
            return False
        if not gens:
            return True
        one = Permutation.identity(gens[0].degree)
        return all(evaluate(r, gens, one).is_identity() for r in self.relators)


def element_words(G: PermGroup, bound: int = 10**5) -> dict:
    """Shortlex-ish words for every element (BFS over the Cayley graph)."""
    if G.order() > bound:
        raise CapacityError(f"group of order {G.order()} exceeds word-table bound {bound}", bound=bound)
    one = G.identity
    words = {one: ()}
    queue = [one]
    steps = []
    for i, x in enumerate(G.generators):
        steps.append((i + 1, x))
        steps.append((-(i + 1), x.inverse()))
    for g in queue:
        w = words[g]
        for s, x in steps:
            h = g * x
            if h not in words:
                words[h] = w + (s,)
                queue.append(h)
    return words


def word_for(G: PermGroup, g: Permutation) -> Word:
    return element_words(G)[g]


def presentation_on_generators(G: PermGroup) -> Presentation:
    """Presentation on G's own generators read off a spanning tree of the Cayley graph.

    Relators are ``w_g x w_{gx}^-1`` for every element g and generator x; the
    tree edges reduce to the empty word and are dropped.
    """
    words = element_words(G)
    rels = []
    seen = set()
    for g, w in words.items():
        for i, x in enumerate(G.generators):
            r = free_reduce(w + (i + 1,) + inverse(words[g * x]))
            if r and r not in seen:
                seen.add(r)
                rels.append(r)
    return Presentation(len(G.generators), tuple(rels))


def cayley_presentation(G: PermGroup, bound: int = CAYLEY_BOUND) -> tuple:
    """One generator per non-identity element; one relator ``x y z^-1`` per product.

    Returns ``(presentation, elements)`` where ``elements[i]`` is the group
    element named by generator ``i + 1``.
    """
    if G.order() > bound:
        raise CapacityError(
            f"Cayley presentation of a group of order {G.order()} exceeds the bound {bound}",
            bound=bound,
        )
    elems = [g for g in G.element_list if not g.is_identity()]
    index = {g: i + 1 for i, g in enumerate(elems)}
    rels = []
    for x in elems:
        for y in elems:
            z = x * y
            word = (index[x], index[y]) + ((-index[z],) if z in index else ())
            rels.append(word)
    return Presentation(len(elems), tuple(rels)), elems


def presentation_for(G: PermGroup) -> Presentation:
    """Attached presentation if G carries one, else the spanning-tree presentation."""
    if G.presentation is not None:
        return G.presentation
    return presentation_on_generators(G)
