"""Finite permutation groups with a stabilizer chain built on construction."""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from ..errors import RejectedInputError
from .chain import StabChain
from .permutation import Permutation, ridentity


class PermGroup:
    """Group generated by permutations of {1..degree}.

    Equality is equality of element sets (same degree, same order, mutual
    containment).  ``presentation`` optionally records a presentation on
    exactly these generators, in order; the closure module prefers it over
    derived presentations.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable = (),
        *,
        name: str | None = None,
        presentation=None,
    ):
        if degree < 0:
            raise RejectedInputError("degree must be non-negative")
        gens = tuple(Permutation.parse(g, degree) for g in generators)
        self._degree = degree
        self._gens = gens
        self.name = name
        self.presentation = presentation
        self._chain = StabChain([g._a for g in gens], degree)
        self._order = self._chain.order()

    # construction helpers

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [])

    @classmethod
    def from_json(cls, obj: dict) -> "PermGroup":
        try:
            degree = int(obj["degree"])
            gens = obj.get("generators", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise RejectedInputError(f"group JSON needs 'degree' and 'generators': {exc}") from None
        return cls(degree, gens, name=obj.get("name"))

    def to_json(self) -> dict:
        out = {"degree": self._degree, "generators": [list(g.images) for g in self._gens]}
        if self.name:
            out["name"] = self.name
        return out

    # basic data

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple:
        return self._gens

    @property
    def chain(self) -> StabChain:
        return self._chain

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    @property
    def identity(self) -> Permutation:
        return Permutation._raw(ridentity(self._degree))

    def __contains__(self, g) -> bool:
        return isinstance(g, Permutation) and self._chain.contains(g._a)

    def contains(self, g: Permutation) -> bool:
        return g in self

    def __iter__(self) -> Iterator[Permutation]:
        for a in self._chain.elements():
            yield Permutation._raw(a)

    @cached_property
    def element_list(self) -> tuple:
        return tuple(self)

    @cached_property
    def element_index(self) -> dict:
        return {g: i for i, g in enumerate(self.element_list)}

    def is_trivial(self) -> bool:
        return self._order == 1

    def is_subgroup(self, other: "PermGroup") -> bool:
        """True if ``self <= other``."""
        return (
            self._degree == other._degree
            and other._order % self._order == 0
            and all(g in other for g in self._gens)
        )

    def is_abelian(self) -> bool:
        gens = self._gens
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_normal_in(self, other: "PermGroup") -> bool:
        if not self.is_subgroup(other):
            return False
        return all(g.conj(x) in self for g in self._gens for x in other._gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self._degree == other._degree
            and self._order == other._order
            and all(g in self for g in other._gens)
        )

    def __hash__(self) -> int:
        return hash((self._degree, self._order))

    def key(self) -> frozenset:
        """Hashable element-set key (enumerates the group)."""
        return frozenset(g._a for g in self.element_list)

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"<PermGroup {label}order {self._order}, degree {self._degree}, {len(self._gens)} gens>"

    def with_presentation(self, presentation) -> "PermGroup":
        out = PermGroup.__new__(PermGroup)
        out.__dict__.update(self.__dict__)
        out.presentation = presentation
        return out


def group_from(degree: int, gens: Sequence[Permutation], name: str | None = None) -> PermGroup:
    return PermGroup(degree, gens, name=name)
