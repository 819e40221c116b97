"""The free normal closure of a homomorphism, by both constructions."""
from nctower import free_normal_closure, preset
from nctower.perm import PermGroup, inclusion_hom, make_hom, trivial_hom

cases = {
    "trivial C2 -> C3": trivial_hom(preset("C2"), preset("C3")),
    "<(1 2)> -> S3": inclusion_hom(PermGroup(3, ["(1 2)"]), preset("S3")),
    "C4 -> C2": make_hom(preset("C4"), preset("C2"), ["(1 2)"]),
    "S3 -> S4": inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4")),
}

for label, phi in cases.items():
    res = free_normal_closure(None, None, phi)
    rep = res.report
    print(f"{label}: closure order {res.closure_group.order()} via {res.path}, "
          f"boundary image {res.boundary.map.image().order()}, kernel {res.kernel_order()}, "
          f"kernel central: {rep.kernel_central}")

# a surjection can go either way; the orders agree
phi = cases["C4 -> C2"]
fast = free_normal_closure(None, None, phi)
peiffer = free_normal_closure(None, None, phi, force_peiffer=True)
print("C4 -> C2 fast", fast.closure_group.order(), "Peiffer", peiffer.closure_group.order())

# with a trivial boundary the Peiffer identity forces an abelian closure
res = free_normal_closure(None, None, cases["trivial C2 -> C3"])
print("trivial C2 -> C3 closure abelian:", res.closure_group.is_abelian())
