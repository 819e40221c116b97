"""Coset enumeration (Felsch or HLT) and regular permutation realizations.

Columns are ``2*i`` for generator ``i`` and ``2*i + 1`` for its inverse.
Felsch fills the first empty entry and then chases every deduction through
the cyclic conjugates of the relators, so it rarely defines many more cosets
than the index.  HLT (no lookahead) scans every relator at every coset.
Coincidences are resolved by union-find with the smaller index surviving.  A
completed table is compacted and renumbered in BFS order, so equal inputs
give identical tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import RejectedInputError
from ..perm import Permutation, PermGroup
from .presentation import Presentation
from .words import Word, evaluate

COMPLETE = "complete"
OVERFLOW = "overflow"
FELSCH = "felsch"
HLT = "hlt"


@dataclass(frozen=True)
class CosetTable:
    """Rows are cosets, columns generators and inverses; -1 marks an undefined entry."""

    rows: tuple
    generator_count: int
    status: str
    cosets_defined: int = 0

    @property
    def is_complete(self) -> bool:
        return self.status == COMPLETE

    def __len__(self) -> int:
        return len(self.rows)

    def act(self, coset: int, word: Word) -> int:
        for s in word:
            col = 2 * (s - 1) if s > 0 else 2 * (-s - 1) + 1
            coset = self.rows[coset][col]
            if coset < 0:
                return -1
        return coset

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cosets": len(self.rows),
            "cosets_defined": self.cosets_defined,
            "rows": [list(r) for r in self.rows],
        }


def _columns(word: Word) -> list:
    return [2 * (s - 1) if s > 0 else 2 * (-s - 1) + 1 for s in word]


class _Enumerator:
    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.table = [[-1] * ncols]
        self.parent = [0]
        self.live = 1
        self.defined = 1
        self.deductions = None  # list when running Felsch

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, col: int) -> bool:
        if self.live >= self.max_cosets:
            return False
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.defined += 1
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        if self.deductions is not None:
            self.deductions.append((c, col))
        return True

    def merge(self, k: int, l: int, queue: list) -> None:
        a, b = self.rep(k), self.rep(l)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for col in range(self.ncols):
                d = row[col]
                if d < 0:
                    continue
                inv = col ^ 1
                table[d][inv] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if table[mu][col] >= 0:
                    self.merge(nu, table[mu][col], queue)
                elif table[nu][inv] >= 0:
                    self.merge(mu, table[nu][inv], queue)
                else:
                    table[mu][col] = nu
                    table[nu][inv] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, col))

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def scan_and_fill(self, c: int, word: list, inv: list) -> bool:
        """Trace ``word`` from ``c``, defining cosets as needed.  False on overflow."""
        table = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return True
            while j >= i:
                nxt = table[b][inv[j]]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return True
            if i == j:
                table[f][word[i]] = b
                table[b][inv[i]] = f
                return True
            if not self.define(f, word[i]):
                return False


    def scan(self, c: int, word: list, inv: list) -> None:
        """Felsch scan of ``word`` at ``c``: deduce a single missing entry, or merge."""
        table = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while i <= j:
            nxt = table[f][word[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            nxt = table[b][inv[j]]
            if nxt < 0:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][word[i]] = b
            table[b][inv[i]] = f
            self.deductions.append((f, word[i]))

    def process(self, by_col: list) -> None:
        stack = self.deductions
        while stack:
            c, col = stack.pop()
            if self.parent[c] != c:
                continue
            for word, inv in by_col[col]:
                self.scan(c, word, inv)
                if self.parent[c] != c:
                    break
            d = self.table[c][col]
            if d >= 0 and self.parent[d] == d:
                for word, inv in by_col[col ^ 1]:
                    self.scan(d, word, inv)
                    if self.parent[d] != d:
                        break


def _cyclic_index(rel_cols: list, ncols: int) -> list:
    """For each column, the cyclic conjugates of relators and inverses starting with it."""
    by_col = [[] for _ in range(ncols)]
    seen = set()
    for cols, inv in rel_cols:
        back = [c ^ 1 for c in reversed(cols)]
        for w in (cols, back):
            for k in range(len(w)):
                rot = tuple(w[k:] + w[:k])
                if rot in seen:
                    continue
                seen.add(rot)
                by_col[rot[0]].append((list(rot), [c ^ 1 for c in rot]))
    return by_col


def todd_coxeter(
    p: Presentation,
    subgroup_words: Sequence[Word] = (),
    max_cosets: int = 100_000,
    strategy: str = FELSCH,
) -> CosetTable:
    """Enumerate the right cosets of ``<subgroup_words>`` in the group presented by ``p``.

    Returns a table with ``status == "overflow"`` (and partial rows) if more
    than ``max_cosets`` cosets would be live at once.
    """
    if strategy not in (FELSCH, HLT):
        raise RejectedInputError(f"unknown enumeration strategy {strategy!r}")
    if max_cosets < 1:
        raise RejectedInputError("max_cosets must be at least 1")
    ncols = 2 * p.generator_count
    seen = set()
    relators = []
    for r in p.relators:
        if r and r not in seen:
            seen.add(r)
            relators.append(r)
    relators.sort(key=len)
    rel_cols = [(_columns(r), [c ^ 1 for c in _columns(r)]) for r in relators]
    en = _Enumerator(ncols, max_cosets)

    def overflow() -> CosetTable:
        return CosetTable(_snapshot(en), p.generator_count, OVERFLOW, en.defined)

    if strategy == FELSCH:
        return _felsch(p, en, subgroup_words, rel_cols, overflow)

    for w in subgroup_words:
        if w:
            cols = _columns(w)
            if not en.scan_and_fill(0, cols, [c ^ 1 for c in cols]):
                return overflow()
    c = 0
    while c < len(en.table):
        if en.alive(c):
            for cols, inv in rel_cols:
                if not en.alive(c):
                    break
                if not en.scan_and_fill(c, cols, inv):
                    return overflow()
            if en.alive(c):
                row = en.table[c]
                for col in range(ncols):
                    if row[col] < 0:
                        if not en.define(c, col):
                            return overflow()
        c += 1
    return CosetTable(_standardize(en), p.generator_count, COMPLETE, en.defined)


def _felsch(p, en, subgroup_words, rel_cols, overflow) -> CosetTable:
    ncols = en.ncols
    by_col = _cyclic_index(rel_cols, ncols)
    en.deductions = []
    for w in subgroup_words:
        if w:
            cols = _columns(w)
            if not en.scan_and_fill(0, cols, [c ^ 1 for c in cols]):
                return overflow()
            en.process(by_col)
    # relators with no letters in common with a deduction still have to hold at coset 0
    for cols, inv in rel_cols:
        if not en.scan_and_fill(0, cols, inv):
            return overflow()
        en.process(by_col)
    c = 0
    while c < len(en.table):
        if en.parent[c] == c:
            row = en.table[c]
            for col in range(ncols):
                if en.parent[c] != c:
                    break
                if row[col] < 0:
                    if not en.define(c, col):
                        return overflow()
                    en.process(by_col)
        c += 1
    return CosetTable(_standardize(en), p.generator_count, COMPLETE, en.defined)


def _snapshot(en: _Enumerator) -> tuple:
    return tuple(tuple(r) for c, r in enumerate(en.table) if en.parent[c] == c)


def _standardize(en: _Enumerator) -> tuple:
    """Drop dead cosets and renumber live ones in BFS order from coset 0."""
    table = en.table
    order = [0]
    new = {0: 0}
    for c in order:
        for d in table[c]:
            d = en.rep(d)
            if d not in new:
                new[d] = len(order)
                order.append(d)
    return tuple(tuple(new[en.rep(d)] for d in table[c]) for c in order)


def perm_realization(t: CosetTable, p: Presentation) -> tuple:
    """Regular permutation group from a complete table over the trivial subgroup.

    Returns ``(group, images)`` with ``images[i]`` the permutation of generator i.
    """
    if not t.is_complete:
        raise RejectedInputError("coset table is not complete")
    if t.generator_count != p.generator_count:
        raise RejectedInputError("coset table and presentation disagree on generator count")
    n = len(t.rows)
    images = []
    for i in range(p.generator_count):
        images.append(Permutation._raw(tuple(t.rows[c][2 * i] for c in range(n))))
    if n and not p.holds_in(images):
        raise RejectedInputError("relators do not hold on the realized generators")
    G = PermGroup(n, images)
    if G.order() != n:
        raise RejectedInputError(
            f"table is not regular (group order {G.order()} != {n} cosets); was it enumerated over a nontrivial subgroup?"
        )
    return G.with_presentation(p), images


def regular_generating_subset(t: CosetTable, preferred: Sequence[int] = ()) -> list:
    """Indices of generators that already generate the group of a regular table.

    ``preferred`` indices are taken first (kept only if they enlarge the
    subgroup); membership is read off the orbit of coset 0.
    """
    rows = t.rows
    n = len(rows)
    chosen: list = []
    orbit = {0}

    def grow(cols):
        frontier = list(orbit)
        for c in frontier:
            for col in cols:
                d = rows[c][col]
                if d not in orbit:
                    orbit.add(d)
                    frontier.append(d)

    order = list(preferred) + [k for k in range(t.generator_count) if k not in set(preferred)]
    for k in order:
        if len(orbit) == n:
            break
        if rows[0][2 * k] in orbit:
            continue
        chosen.append(k)
        orbit.clear()
        orbit.add(0)
        grow([2 * i for i in chosen])
    return chosen


def realize(p: Presentation, max_cosets: int = 100_000) -> tuple:
    """Shortcut: enumerate over the trivial subgroup and realize; None table on overflow."""
    t = todd_coxeter(p, (), max_cosets)
    if not t.is_complete:
        return None, t
    return perm_realization(t, p), t


def relators_close(t: CosetTable, p: Presentation) -> bool:
    """Every relator traces from every coset back to itself."""
    return all(t.act(c, r) == c for c in range(len(t.rows)) for r in p.relators)


__all__ = ["CosetTable", "todd_coxeter", "perm_realization", "realize", "relators_close", "evaluate",
           "regular_generating_subset"]
