"""Todd-Coxeter enumeration on a few presentations.

Felsch-style enumeration is the default; HLT is available for comparison.
"""
from nctower import preset
from nctower.fp import HLT, Presentation, cayley_presentation, parse_word, perm_realization, todd_coxeter

for name, gens, rels in [
    ("S3", ["a", "b"], ["a^3", "b^2", "(a b)^2"]),
    ("Q8", ["a", "b"], ["a^4", "a^2 b^-2", "b^-1 a b a"]),
    ("A5", ["a", "b"], ["a^2", "b^3", "(a b)^5"]),
]:
    p = Presentation.parse(gens, rels)
    felsch = todd_coxeter(p)
    hlt = todd_coxeter(p, strategy=HLT)
    print(f"{name}: {len(felsch)} cosets ({felsch.cosets_defined} defined, Felsch), "
          f"{len(hlt)} ({hlt.cosets_defined} defined, HLT)")

# index of a subgroup: <b> in S3 has 3 cosets
p = Presentation.parse(["a", "b"], ["a^3", "b^2", "(a b)^2"])
print("[S3 : <b>] =", len(todd_coxeter(p, [parse_word("b", p.labels)])))

# the regular representation read off a complete table
G, images = perm_realization(todd_coxeter(p), p)
print("realized on", G.degree, "points, order", G.order())

# round trip through the Cayley presentation of A4
A4 = preset("A4")
cp, elems = cayley_presentation(A4)
print("A4 Cayley presentation:", cp.generator_count, "generators,", len(cp.relators), "relators ->",
      len(todd_coxeter(cp)), "cosets")

# overflow is a status, not an exception
print("capped at 10:", todd_coxeter(Presentation.parse(["a", "b"], ["a^2", "b^3", "(a b)^5"]), (), 10).status)
