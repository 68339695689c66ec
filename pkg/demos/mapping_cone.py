"""The mapping cone that kills the star classes, and its checks.

Each star class alpha_ijk gets a cycle a_ijk and a 2-chain abar_ijk with
d(abar) = a - alpha.  The coproduct of abar carries a correction term H_ijk,
and its sign is forced by the coderivation law.  This script runs the
checks for a few grapes, then flips that sign to show it breaks.

    python demos/mapping_cone.py
"""
import grapeshot.grapes_theory as gt
from grapeshot import MappingCone, build_graph, decompose_grapes, elementary_grape
from grapeshot.coalgebra import check_element

two_grapes = build_graph(["a", "u", "w", "b"],
                         [("s1", "a", "u"), ("s2", "u", "w"), ("s3", "w", "b"),
                          ("lu", "u", "u"), ("lw", "w", "w")])

for name, g in [("G_0,3", elementary_grape(0, 3)), ("G_1,1", elementary_grape(1, 1)),
                ("G_2,1", elementary_grape(2, 1)), ("two grapes", two_grapes)]:
    rep = gt.verify_formality(decompose_grapes(g), 3)
    print(f"{name:>10}: " + ", ".join(f"{c} {r['status']}" for c, r in sorted(rep.items())))

gs = decompose_grapes(elementary_grape(0, 3))
cone = MappingCone(gs)
ab = cone.abar_element("v", (1, 2, 3))
print()
print("d(abar) =", cone.complex.format_chain(cone.complex.boundary_element(ab)))
print("axioms on abar:", check_element(cone.complex, ab))

orig = gt.cone_h_terms
gt.cone_h_terms = lambda *a: [(-c, l, r) for c, l, r in orig(*a)]
try:
    flipped = MappingCone(gs)
    print("with the correction sign flipped:",
          check_element(flipped.complex, flipped.abar_element("v", (1, 2, 3))))
finally:
    gt.cone_h_terms = orig
