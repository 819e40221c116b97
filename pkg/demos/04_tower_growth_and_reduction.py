"""Normal closures towers before and after reduction."""
from nctower import build_tower, preset, reduce
from nctower.perm import trivial_hom

C2, C3 = preset("C2"), preset("C3")

# unreduced towers of trivial maps
for label, phi in [("C2 -> C2", trivial_hom(C2, C2)), ("C2 -> C3", trivial_hom(C2, C3))]:
    T = build_tower(phi, reduce_first=False, max_stages=3)
    print(f"trivial {label}, unreduced: orders {T.orders()} ({T.message})")

# the C2 -> C2 tower stops growing at stage 3: Gamma_3 is again C2 x C2
# reduction replaces phi by Gamma/K -> C, here C2 -> 1
psi, red = reduce(trivial_hom(C2, C2))
print("reduced map:", psi.domain.order(), "->", psi.codomain.order(), red.to_json())
T = build_tower(trivial_hom(C2, C2))
print("reduced tower:", T.orders(), T.message)
