"""Betti tables for a few small graphs, with the closed form and the cube-complex oracle.

    python demos/homology_tables.py
"""
from grapeshot import (SwiatkowskiComplex, betti_closed_form, build_graph, cross_check,
                       elementary_grape, theta_graph)


def k33():
    a, b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    return build_graph(a + b, [(f"x{i}{j}", f"a{i}", f"b{j}")
                               for i in (1, 2, 3) for j in (1, 2, 3)])


def show_table(name, g, max_weight):
    cx = SwiatkowskiComplex(g)
    print(f"{name}: rows are degrees, columns weights 0..{max_weight}")
    for i in range(cx.max_degree + 1):
        cells = []
        for k in range(max_weight + 1):
            h = cx.homology(i, k)
            cells.append(f"{h.betti}" + "".join(f"+Z/{t}" for t in h.torsion))
        print(f"  H{i}: " + " ".join(f"{c:>6}" for c in cells))


print("first homology of elementary grapes against the closed form")
for l, m in [(1, 1), (0, 3), (2, 1), (3, 0)]:
    cx = SwiatkowskiComplex(elementary_grape(l, m))
    got = [cx.betti(1, k) for k in range(7)]
    want = [betti_closed_form(l, m, k) for k in range(7)]
    print(f"  G_{l},{m}: {got}  {'ok' if got == want else 'MISMATCH ' + str(want)}")
print()

show_table("theta graph", theta_graph(), 5)
print()

# K_{3,3} is not planar and its two-point space already has 2-torsion
show_table("K_3,3", k33(), 2)
rep = cross_check(k33(), 2)
print("  cube-complex oracle at weight 2:", rep["status"],
      [d["oracle"] for d in rep["degrees"]])
