"""The three equivalent conditions, positive and negative.

Positive: T = k[t]/(t^3) -> R = k[x,y]/(x^3, y^2), t -> x.  R is T-flat
(certified by the periodicity criterion), and the harness finds all three
conditions satisfied: the resolution of k over R/(x) lifts, the inclusion
retracts, and R decomposes as a semi-fiber product over T.

Negative: the weighted cusp R = k[x,y]/(x^2 - y^3) over its subalgebra
k[y].  The two necessary conditions are silent, but no retraction exists,
so k over R/(y) is not liftable.

Run:  python3 demos/main_theorem_demo.py
"""

from semifiber import (GF, AlgebraMorphism, cor44_hypothesis_check,
                       main_theorem_harness, new_algebra,
                       thm_minimal_generator_test)

F = GF(32003)

print("== positive case ==")
R = new_algebra(("x", "y"), relations=("x^3", "y^2"), field=F, name="R")
T = new_algebra(("t",), relations=("t^3",), field=F, name="T")
print("R =", R)
print("T =", T, " with t -> x")
print("periodicity check:", cor44_hypothesis_check(R, "x", 2))
incl = AlgebraMorphism(T, R, [R.element("x")]).verify()
rep = main_theorem_harness(incl, bound=6, n=3)
print("(i)  lifting:      ", rep.lifting.state, "-", rep.lifting.reason)
print("(ii) retraction:   ", rep.retraction)
print("(iii) decomposition:", rep.decomposition.state, "-", rep.decomposition.reason)
print("consistent:", rep.consistent)

print()
print("== negative case: the weighted cusp ==")
C = new_algebra(("x", "y"), weights=(3, 2), relations=("x^2 - y^3",),
                truncation=12, field=F, name="C")
Tw = new_algebra(("t",), weights=(2,), truncation=12, field=F, name="Tw")
print("C =", C)
print("necessary condition:", thm_minimal_generator_test(C, ["y"]).state)
incl2 = AlgebraMorphism(Tw, C, [C.element("y")]).verify()
rep2 = main_theorem_harness(incl2, bound=12, n=3)
print("(i)  lifting:      ", rep2.lifting.state, "-", rep2.lifting.reason)
print("(ii) retraction:   ", rep2.retraction)
print("(iii) decomposition:", rep2.decomposition.state)
print("consistent:", rep2.consistent)
