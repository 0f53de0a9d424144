"""Walkthrough: k over a quotient of the fiber product ring.

R = k[x,y]/(xy) is the fiber product k[x] x_k k[y].  We resolve the
residue field, factor its Poincare series through Rbar = R/(x - y), lift
the resolution of k over Rbar back to R, and then see that the quotient
map nevertheless admits no section.

Run:  python3 demos/fiber_product_walkthrough.py
"""

from semifiber import (GF, LiftingProblem, ModulePresentation,
                       alternating_complex, check_lifting,
                       minimal_free_resolution, new_algebra,
                       poincare_factorization_test, section_search)

F = GF(32003)

R = new_algebra(("x", "y"), relations=("x*y",), field=F, name="R")
print("R =", R)

_, betti = minimal_free_resolution(ModulePresentation.residue_field(R), 4, 8)
print("Betti numbers of k over R:", betti.totals())

print()
print("Poincare factorization through Rbar = R/(x - y):")
v = poincare_factorization_test(R, ["x - y"], 4)
for key in ("P_k_R", "P_k_Rbar", "P_Rbar_R", "convolution"):
    print(f"  {key:12s} {v.certificate[key]}")
print("  verdict:", v.state, "-", v.reason)

print()
print("Lifting the resolution of k over Rbar:")
problem = LiftingProblem(R, ["x - y"], 4, 8)
for entries in (["x", "y"], ["y", "x"], ["x"]):
    L = alternating_complex(R, entries, 4)
    verdict = check_lifting(problem, L)
    print(f"  candidate {entries}: {verdict.state} - {verdict.reason}")

print()
print("Section search for pi: R -> Rbar:")
_, pi = R.quotient(["x - y"])
res = section_search(pi, 6)
print("  outcome:", res.outcome)
print("  certificate trace:")
for step in res.certificate.trace:
    print("   ", step)
print("  replay check:", res.certificate.replay())
