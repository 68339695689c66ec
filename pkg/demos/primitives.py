"""Coproducts and primitive classes.

Shows the coshuffle on a few chains, the primitive subspace computed two ways
(brute-force kernel and the predicted span), and a wedge of two primitive
classes that fails to be primitive.

    python demos/primitives.py
"""
from grapeshot import (HomologyCoalgebra, SwiatkowskiComplex, build_graph, classify_primitives,
                       coshuffle, decompose_grapes, elementary_grape)
from grapeshot.coalgebra import is_primitive_class
from grapeshot.grapes_theory import predicted_primitives, primitive_span_matches
from grapeshot.swiatkowski import wedge


def tensor_str(cx, T):
    terms = [f"{c:+d} {cx.format_element(a)} (x) {cx.format_element(b)}"
             for (a, b), c in sorted(T.items(), key=lambda t: str(t[0]))]
    return "  ".join(terms)


two_grapes = build_graph(["a", "u", "w", "b"],
                         [("s1", "a", "u"), ("s2", "u", "w"), ("s3", "w", "b"),
                          ("lu", "u", "u"), ("lw", "w", "w")])

cx = SwiatkowskiComplex(two_grapes)
hh = cx.unit()._replace(locals=(cx.half("s1:1"), cx.half("s3:0")))
print("coshuffle of", cx.format_element(hh))
print("  ", tensor_str(cx, coshuffle(cx, {hh: 1})))
e2 = cx.element({"s2": 2})
print("coshuffle of", cx.format_element(e2))
print("  ", tensor_str(cx, coshuffle(cx, {e2: 1})))
print()

g11 = elementary_grape(1, 1)
gs = decompose_grapes(g11)
hc = HomologyCoalgebra(g11, "rat")
print("primitives of G_1,1 (degree, weight): kernel dim / predicted")
for k in range(5):
    for i in range(2):
        n = hc.cx.betti(i, k)
        ker = hc.primitive_kernel(i, k)
        pred = classify_primitives(gs, i, k, hc.cx)
        names = [label for label, _ in predicted_primitives(gs, i, k, hc.cx)]
        ok = primitive_span_matches(pred, ker, n)
        print(f"  ({i},{k}) betti {n}: kernel {len(ker)}, spans agree: {ok}  {names}")
print()

gs = decompose_grapes(two_grapes)
hc = HomologyCoalgebra(two_grapes, "rat")
cx = hc.cx
x = next(c for label, c in predicted_primitives(gs, 1, 1, cx) if label.endswith("@u"))
y = next(c for label, c in predicted_primitives(gs, 1, 1, cx) if label.endswith("@w"))
xy = wedge(cx, x, y)
print("loop classes at u and w are primitive:",
      is_primitive_class(hc, 1, 1, cx.coords(x, 1, 1)),
      is_primitive_class(hc, 1, 1, cx.coords(y, 1, 1)))
print("their wedge is primitive:", is_primitive_class(hc, 2, 2, cx.coords(xy, 2, 2)))
