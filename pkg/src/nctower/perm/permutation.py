"""Permutations on {1..n}.

Elements act on the right: ``i^(p*q) = (i^p)^q``, so ``p * q`` means "first p,
then q".  Conjugation is ``m^q = q^-1 m q`` and commutators are
``[a, b] = a^-1 b^-1 a b``.

Internally the image array is stored 0-based in a tuple (``_a``); every public
surface (``images``, cycle strings, JSON) is 1-based.
"""
from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Sequence

from ..errors import RejectedInputError

# Raw tuple helpers.  These are the hot path for Schreier-Sims and friends.


def rmul(p: tuple, q: tuple) -> tuple:
    """Product p*q of raw 0-based tuples (p applied first)."""
    return tuple([q[x] for x in p])


def rinv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def ridentity(n: int) -> tuple:
    return tuple(range(n))


def ris_identity(p: tuple) -> bool:
    return all(i == x for i, x in enumerate(p))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """Immutable permutation of {1..degree}.

    >>> p = Permutation.from_cycles("(1 2 3)", 3)
    >>> p.images
    (2, 3, 1)
    >>> (p * p).cycles()
    '(1 3 2)'
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Sequence[int]):
        a = tuple(int(x) - 1 for x in images)
        if sorted(a) != list(range(len(a))):
            raise RejectedInputError(f"image array {list(images)} is not a bijection on 1..{len(a)}")
        self._a = a
        self._hash = hash(a)

    @classmethod
    def _raw(cls, a: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._a = a
        p._hash = hash(a)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(ridentity(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse a product of cycles such as ``"(1 2)(3 4)"``.

        Cycles are multiplied left to right.  ``"()"``, ``""``, ``"e"`` and
        ``"1"`` are the identity.
        """
        stripped = text.strip()
        if stripped in ("e", "1", "id"):
            stripped = ""
        leftover = _CYCLE_RE.sub("", stripped).strip()
        if leftover:
            raise RejectedInputError(f"could not parse cycle string {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            body = body.replace(",", " ").split()
            if not body:
                continue
            cyc = [int(x) for x in body]
            if min(cyc) < 1:
                raise RejectedInputError(f"points are 1-based, got {text!r}")
            if len(set(cyc)) != len(cyc):
                raise RejectedInputError(f"repeated point in cycle {text!r}")
            cycles.append(cyc)
        top = max((max(c) for c in cycles), default=0)
        if degree is None:
            degree = top
        elif top > degree:
            raise RejectedInputError(f"cycle string {text!r} moves point {top} > degree {degree}")
        a = list(range(degree))
        for cyc in cycles:
            step = list(range(degree))
            for i, x in enumerate(cyc):
                step[x - 1] = cyc[(i + 1) % len(cyc)] - 1
            a = [step[x] for x in a]
        return cls._raw(tuple(a))

    @classmethod
    def parse(cls, spec, degree: int | None = None) -> "Permutation":
        """Accept a 1-based image list, a cycle string, or a Permutation."""
        if isinstance(spec, Permutation):
            p = spec
        elif isinstance(spec, str):
            p = cls.from_cycles(spec, degree)
        else:
            p = cls(list(spec))
        if degree is not None and p.degree != degree:
            raise RejectedInputError(f"permutation {p} has degree {p.degree}, expected {degree}")
        return p

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._a)

    def __call__(self, point: int) -> int:
        return self._a[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._a) != len(self._a):
            raise RejectedInputError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation._raw(rmul(self._a, other._a))

    def inverse(self) -> "Permutation":
        return Permutation._raw(rinv(self._a))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Permutation.identity(self.degree)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self, q: "Permutation") -> "Permutation":
        """Right conjugate ``q^-1 * self * q``."""
        return q.inverse() * self * q

    def comm(self, other: "Permutation") -> "Permutation":
        """Commutator ``[self, other] = self^-1 other^-1 self other``."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return ris_identity(self._a)

    def order(self) -> int:
        out = 1
        seen = [False] * len(self._a)
        for i in range(len(self._a)):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self._a[j]
                length += 1
            out = out * length // gcd(out, length)
        return out

    def cycles(self) -> str:
        seen = set()
        parts = []
        for i in range(len(self._a)):
            if i in seen or self._a[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self._a[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self._a[j]
            parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
        return "".join(parts) or "()"

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._a == other._a

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._a < other._a

    def __repr__(self) -> str:
        return f"Permutation({self.cycles()!r}, degree={self.degree})"

    __str__ = cycles


def perms_from(specs: Iterable, degree: int) -> list[Permutation]:
    return [Permutation.parse(s, degree) for s in specs]
