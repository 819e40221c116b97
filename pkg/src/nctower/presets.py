"""Named small groups, shipped in code, with presentations on their generators where known."""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .errors import RejectedInputError
from .fp import Presentation, perm_realization, todd_coxeter
from .perm import Permutation, PermGroup


def _shift(p: Permutation, offset: int, degree: int) -> Permutation:
    a = list(range(degree))
    for i, x in enumerate(p._a):
        a[i + offset] = x + offset
    return Permutation._raw(tuple(a))


def direct_product(*groups: PermGroup, name: str | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        gens.extend(_shift(g, offset, degree) for g in G.generators)
        offset += G.degree
    return PermGroup(degree, gens, name=name)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise RejectedInputError("cyclic group needs n >= 1")
    gen = Permutation._raw(tuple((i + 1) % n for i in range(n)))
    return PermGroup(n, [gen], name=f"C{n}", presentation=Presentation.parse(["a"], [f"a^{n}"]))


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n on n points."""
    if n < 3:
        raise RejectedInputError("dihedral group needs n >= 3 (use C2, V4 for smaller)")
    r = Permutation._raw(tuple((i + 1) % n for i in range(n)))
    s = Permutation._raw(tuple((-i) % n for i in range(n)))
    pres = Presentation.parse(["r", "s"], [f"r^{n}", "s^2", "(r s)^2"])
    return PermGroup(n, [r, s], name=f"D{n}", presentation=pres)


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1), [Permutation.identity(max(n, 1))], name=f"S{n}",
                         presentation=Presentation.parse(["a"], ["a"]))
    if n == 2:
        return PermGroup(2, ["(1 2)"], name="S2", presentation=Presentation.parse(["a"], ["a^2"]))
    a = Permutation.from_cycles("(" + " ".join(str(i) for i in range(1, n + 1)) + ")", n)
    b = Permutation.from_cycles("(1 2)", n)
    rels = [f"a^{n}", "b^2", f"(a b)^{n - 1}"]
    rels += [f"(b a^-{j} b a^{j})^2" for j in range(2, n // 2 + 1)]
    return PermGroup(n, [a, b], name=f"S{n}", presentation=Presentation.parse(["a", "b"], rels))


def alternating(n: int) -> PermGroup:
    if n == 3:
        return PermGroup(3, ["(1 2 3)"], name="A3", presentation=Presentation.parse(["a"], ["a^3"]))
    if n == 4:
        pres = Presentation.parse(["a", "b"], ["a^3", "b^2", "(a b)^3"])
        return PermGroup(4, ["(1 2 3)", "(1 2)(3 4)"], name="A4", presentation=pres)
    if n == 5:
        pres = Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^5"])
        return PermGroup(5, ["(1 2)(3 4)", "(1 3 5)"], name="A5", presentation=pres)
    gens = [Permutation.from_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return PermGroup(n, gens, name=f"A{n}")


def from_presentation(gens, rels, name: str) -> PermGroup:
    """Regular permutation realization of a small finitely presented group."""
    p = Presentation.parse(gens, rels)
    t = todd_coxeter(p, (), 10_000)
    G, _ = perm_realization(t, p)
    G.name = name
    return G


def special_linear_2(p: int) -> PermGroup:
    """SL(2, p) acting on the nonzero row vectors of F_p^2."""
    vecs = [v for v in itertools.product(range(p), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}

    def perm(m):
        (a, b), (c, d) = m
        return Permutation._raw(
            tuple(index[((x * a + y * c) % p, (x * b + y * d) % p)] for x, y in vecs)
        )

    return PermGroup(len(vecs), [perm(((1, 1), (0, 1))), perm(((0, p - 1), (1, 0)))], name=f"SL(2,{p})")


_FACTORIES = {
    "V4": lambda: PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"], name="V4",
                            presentation=Presentation.parse(["a", "b"], ["a^2", "b^2", "(a b)^2"])),
    "Q8": lambda: PermGroup(8, ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], name="Q8",
                            presentation=Presentation.parse(["a", "b"], ["a^4", "a^2 b^-2", "b^-1 a b a"])),
    "Q16": lambda: from_presentation(["a", "b"], ["a^8", "a^4 b^-2", "b^-1 a b a"], "Q16"),
    "SD16": lambda: from_presentation(["a", "b"], ["a^8", "b^2", "b a b a^-3"], "SD16"),
    "M16": lambda: from_presentation(["a", "b"], ["a^8", "b^2", "b a b a^-5"], "M16"),
    "Dic3": lambda: from_presentation(["a", "b"], ["a^6", "a^3 b^-2", "b^-1 a b a"], "Dic3"),
    "SL23": lambda: special_linear_2(3),
    "SL25": lambda: special_linear_2(5),
    "C2xC4": lambda: direct_product(cyclic(2), cyclic(4), name="C2xC4"),
    "C2xC6": lambda: direct_product(cyclic(2), cyclic(6), name="C2xC6"),
    "C2xC8": lambda: direct_product(cyclic(2), cyclic(8), name="C2xC8"),
    "C3xC3": lambda: direct_product(cyclic(3), cyclic(3), name="C3xC3"),
    "C4xC4": lambda: direct_product(cyclic(4), cyclic(4), name="C4xC4"),
    "C2xC2xC2": lambda: direct_product(cyclic(2), cyclic(2), cyclic(2), name="C2xC2xC2"),
    "C2xC2xC4": lambda: direct_product(cyclic(2), cyclic(2), cyclic(4), name="C2xC2xC4"),
    "C2xD4": lambda: direct_product(cyclic(2), dihedral(4), name="C2xD4"),
    "C2xQ8": lambda: direct_product(cyclic(2), preset("Q8"), name="C2xQ8"),
    "C2xS3": lambda: direct_product(cyclic(2), symmetric(3), name="C2xS3"),
}

_ALIASES = {"K4": "V4", "C2xC2": "V4", "Z2xZ2": "V4", "2A5": "SL25", "Q12": "Dic3"}

_PATTERNS = [
    (re.compile(r"^[CZ](\d+)$"), cyclic),
    (re.compile(r"^Z/(\d+)$"), cyclic),
    (re.compile(r"^D(\d+)$"), dihedral),
    (re.compile(r"^S(\d+)$"), symmetric),
    (re.compile(r"^A(\d+)$"), alternating),
]

MAX_PRESET_DEGREE = 8


@lru_cache(maxsize=None)
def preset(name: str) -> PermGroup:
    """Resolve a preset name such as ``"S3"``, ``"C12"``, ``"D4"`` (order 8), ``"Q8"``."""
    key = _ALIASES.get(name, name)
    if key in _FACTORIES:
        return _FACTORIES[key]()
    for pattern, factory in _PATTERNS:
        m = pattern.match(key)
        if m:
            n = int(m.group(1))
            if factory in (symmetric, alternating) and n > MAX_PRESET_DEGREE:
                break
            if factory is cyclic and n > 64:
                break
            if factory is alternating and n < 3:
                break
            G = factory(n)
            G.name = name
            return G
    raise RejectedInputError(f"unknown preset group {name!r}")


def preset_names(max_order: int | None = None) -> list:
    """Names of the built-in groups used by the corpus (fixed order)."""
    names = [f"C{n}" for n in range(1, 17)]
    names += ["V4", "S3", "C2xC4", "C2xC2xC2", "D4", "Q8", "C3xC3", "D5", "C2xC6", "A4", "D6",
              "Dic3", "D7", "C2xC8", "C4xC4", "C2xC2xC4", "C2xD4", "C2xQ8", "D8", "Q16", "SD16", "M16",
              "S4", "SL23", "A5", "SL25", "S5", "S6"]
    if max_order is None:
        return names
    return [n for n in names if preset(n).order() <= max_order]
