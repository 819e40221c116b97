"""Permutation groups: orders, series, quotients and the homomorphism test.

Run with ``python3 demos/01_permutation_engine.py``.
"""
from nctower import NotAHomomorphismError, preset
from nctower.perm import (
    PermGroup,
    center,
    is_subnormal,
    lower_central_series,
    make_hom,
    normal_subgroups,
    quotient_data,
    upper_central_series,
)

S4 = preset("S4")
print("S4:", S4.order(), "elements on", S4.degree, "points")

# normal subgroups come out sorted by order
print("normal subgroup orders:", [N.order() for N in normal_subgroups(S4)])

# S4 is solvable but not nilpotent: gamma_i stops at A4, Z_i at 1
print("lower central:", [H.order() for H in lower_central_series(S4)])
print("upper central:", [H.order() for H in upper_central_series(S4)])

D4 = preset("D4")
print("D4 lower central:", [H.order() for H in lower_central_series(D4)], "center", center(D4).order())

# quotient by V4 acts on the 6 cosets; it is S3
V = PermGroup(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
q = quotient_data(S4, V)
print("S4/V4 has order", q.group.order(), "and kernel", q.projection.kernel().order())

# a transposition-generated subgroup is not subnormal in S4, a double transposition is
print("<(1 2)> subnormal:", bool(is_subnormal(PermGroup(4, ["(1 2)"]), S4)))
cert = is_subnormal(PermGroup(4, ["(1 2)(3 4)"]), S4)
print("<(1 2)(3 4)> subnormal:", bool(cert), "chain orders", [C.order() for C in cert.chain])

# generator images are checked before anything is built
S3, C2 = preset("S3"), preset("C2")
sign = make_hom(S3, C2, ["e", "(1 2)"])
print("sign kernel:", sign.kernel().order())
try:
    make_hom(S3, C2, ["(1 2)", "(1 2)"])
except NotAHomomorphismError as exc:
    print("rejected:", exc)
