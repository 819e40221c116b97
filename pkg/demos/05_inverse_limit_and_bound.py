"""Limits of reduced towers and the bound |Gamma/K| g(|C|)."""
from nctower import bound_g, inverse_limit, preset
from nctower.perm import PermGroup, identity_hom, inclusion_hom, make_hom, trivial_hom

print("g(t):", {t: bound_g(t) for t in (1, 2, 4, 6, 8, 24)})

cases = {
    "trivial C2 -> C2": trivial_hom(preset("C2"), preset("C2")),
    "C4 -> C2": make_hom(preset("C4"), preset("C2"), ["(1 2)"]),
    "id S3": identity_hom(preset("S3")),
    "A3 -> S3": inclusion_hom(PermGroup(3, ["(1 2 3)"]), preset("S3")),
    "S3 -> S4": inclusion_hom(PermGroup(4, ["(1 2)", "(1 2 3)"]), preset("S4")),
}
for label, phi in cases.items():
    L = inverse_limit(phi)
    js = L.to_json()
    print(f"{label}: |Gamma_inf| = {js['limit_order']} at stage {js['stabilized_at']} "
          f"(tower {js['tower_orders']}), bound {js['bound']:.6g}, phi_inf bijective {js['into_limit_bijective']}")
