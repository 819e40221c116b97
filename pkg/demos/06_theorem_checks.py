"""Theorem checkers, one instance at a time and over the tiny corpus."""
from collections import Counter

from nctower import preset
from nctower.perm import PermGroup, inclusion_hom, make_hom
from nctower.verify import THEOREMS, run_corpus, summarize

phi = inclusion_hom(PermGroup(4, ["(1 2)(3 4)"]), preset("S4"))
for name in ("lcs", "bound", "subnormal", "universality"):
    r = THEOREMS[name](phi)
    print(f"{r.theorem}: {r.status}")

r = THEOREMS["nilpotent"](make_hom(preset("Q8"), preset("C2"), ["(1 2)", "e"]))
print("Q8 -> C2:", r.status, r.witness)

r = THEOREMS["perfect"](inclusion_hom(PermGroup(5, list(preset("A5").generators)), preset("S5")))
print("A5 -> S5 branches:", {k: v.get("ok", v.get("skipped")) for k, v in r.witness["branches"].items()})

reports = run_corpus("tiny")
print(summarize(reports)["by_theorem"])
print(Counter(r.status for r in reports))
