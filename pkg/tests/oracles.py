"""Brute-force reference implementations on raw 0-based image tuples.

Nothing here touches the stabilizer chain or the coset enumerator: groups
are plain Python sets closed under composition.
"""
from __future__ import annotations

import itertools


def mul(p, q):
    # p first, then q
    return tuple(q[x] for x in p)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conj(h, g):
    return mul(mul(inv(g), h), g)


def comm(a, b):
    return mul(mul(inv(a), inv(b)), mul(a, b))


def identity(n):
    return tuple(range(n))


def close(gens, n):
    """Element set generated by ``gens`` (BFS on right multiplication)."""
    one = identity(n)
    gens = [tuple(g) for g in gens]
    seen = {one}
    queue = [one]
    for g in queue:
        for x in gens:
            h = mul(g, x)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def elements(G):
    return close([g._a for g in G.generators], G.degree)


def as_set(H):
    return frozenset(g._a for g in H)


def normal_closure(G_elems, H_elems, n):
    return close({conj(h, g) for h in H_elems for g in G_elems}, n)


def commutator(A, B, n):
    return close({comm(a, b) for a in A for b in B}, n)


def center(G_elems):
    return frozenset(z for z in G_elems if all(mul(z, g) == mul(g, z) for g in G_elems))


def lower_central(G_elems, n):
    """gamma_1, gamma_2, ... up to and including the first repeat or the trivial group."""
    out = [G_elems]
    while len(out[-1]) > 1:
        nxt = commutator(G_elems, out[-1], n)
        out.append(nxt)
        if nxt == out[-2]:
            break
    return out


def upper_central(G_elems):
    """Z_0 = 1, Z_1, ... up to G or the first repeat."""
    n = len(next(iter(G_elems)))
    out = [frozenset({identity(n)})]
    while len(out[-1]) < len(G_elems):
        Z = out[-1]
        nxt = frozenset(g for g in G_elems if all(comm(g, x) in Z for x in G_elems))
        out.append(nxt)
        if nxt == Z:
            break
    return out


def is_hom_table(domain_elems, image_of):
    return all(image_of[mul(a, b)] == mul(image_of[a], image_of[b]) for a in domain_elems for b in domain_elems)


def extend_hom(domain_gens, images, n, m):
    """Element table of the assignment, or None when it is not a homomorphism (exhaustive)."""
    one, one_m = identity(n), identity(m)
    table = {one: one_m}
    queue = [one]
    pairs = list(zip(domain_gens, images))
    for g in queue:
        for x, y in pairs:
            h = mul(g, x)
            img = mul(table[g], y)
            if h not in table:
                table[h] = img
                queue.append(h)
            elif table[h] != img:
                return None
    return table


def hom_count(domain_gens, n, codomain_elems, m):
    """Number of homomorphisms by trying every generator-image tuple."""
    count = 0
    for imgs in itertools.product(sorted(codomain_elems), repeat=len(domain_gens)):
        if extend_hom(domain_gens, imgs, n, m) is not None:
            count += 1
    return count


def is_subnormal(H, G, n):
    cur = G
    while True:
        nxt = normal_closure(cur, H, n)
        if nxt == cur:
            return cur == H
        cur = nxt
