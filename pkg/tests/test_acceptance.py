"""Acceptance criteria 1-9.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
is one test that records a ``criterion N: PASS/FAIL`` line, printed in the
terminal summary.  Run this file directly to print the lines without pytest.
"""
import random
import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parent))

from grapeshot import (HomologyCoalgebra, SwiatkowskiComplex, betti_closed_form,
                       classify_primitives, cross_check, decompose_grapes, elementary_grape,
                       theta_graph, verify_coalgebra_axioms, verify_formality,
                       verify_sl_isomorphism)
from grapeshot.coalgebra import d_squared_zero, is_primitive_class
from grapeshot.grapes_theory import predicted_primitives, primitive_span_matches
from grapeshot.linalg import matmul
from grapeshot.swiatkowski import chain_add, wedge

from conftest import (ACCEPTANCE_LINES, double_loop_grapes, three_grapes, two_grapes,
                      whiskered_bigon)

ELEMENTARY = [(1, 1), (2, 1), (1, 2), (0, 3), (1, 3), (2, 2), (2, 0), (3, 0)]


def h_tree():
    from grapeshot import build_graph
    return build_graph(["u", "w", "a", "b", "c", "d"],
                       [("m", "u", "w"), ("x", "u", "a"), ("y", "u", "b"),
                        ("z", "w", "c"), ("t", "w", "d")])


def axiom_graphs():
    out = [(f"G{l}{m}", elementary_grape(l, m)) for l, m in ELEMENTARY]
    return out + [("theta", theta_graph()), ("whiskered_bigon", whiskered_bigon())]


def primitivity_grapes():
    out = [(f"G{l}{m}", elementary_grape(l, m)) for l, m in ELEMENTARY]
    return out + [("two_grapes", two_grapes()), ("double_loop_grapes", double_loop_grapes())]


# ------------------------------------------------------------------ criteria

def criterion_1():
    bad = []
    for l, m in ELEMENTARY:
        cx = SwiatkowskiComplex(elementary_grape(l, m))
        for k in range(7):
            for i in range(cx.max_degree + 1):
                h = cx.homology(i, k)
                want = 1 if i == 0 else betti_closed_form(l, m, k) if i == 1 else 0
                if h.betti != want or h.torsion:
                    bad.append((l, m, i, k, h.betti, want, h.torsion))
    return not bad, f"{len(ELEMENTARY)} graphs, k<=6" + (f", mismatches {bad[:3]}" if bad else "")


def criterion_2():
    bad = []
    n = 0
    for name, g in axiom_graphs():
        cx = SwiatkowskiComplex(g)
        rep = verify_coalgebra_axioms(cx, 4, cx.max_degree)
        n += rep["coderivation"]["checked"]
        bad += [(name, a, r.get("counterexample")) for a, r in rep.items() if r["status"] != "pass"]
    return not bad, f"{n} basis elements" + (f", failures {bad[:3]}" if bad else "")


def criterion_3():
    bad = []
    slices = 0
    for name, g in axiom_graphs():
        cx = SwiatkowskiComplex(g)
        kmax = 6 if name.startswith("G") else 4
        if not d_squared_zero(cx, cx.max_degree, kmax):
            bad.append(name)
        for k in range(kmax + 1):
            for i in range(2, cx.max_degree + 1):
                slices += 1
                prod = matmul(cx.boundary_matrix(i - 1, k), cx.boundary_matrix(i, k))
                if any(any(r) for r in prod):
                    bad.append((name, i, k))
    return not bad, f"{slices} composable slice pairs plus elementwise check" + (
        f", failures {bad}" if bad else "")


def criterion_4():
    bad = []
    cases = [("two_grapes", two_grapes()), ("double_loop_grapes", double_loop_grapes()),
             ("three_grapes", three_grapes()), ("G20", elementary_grape(2, 0))]
    for name, g in cases:
        gs = decompose_grapes(g)
        cx = SwiatkowskiComplex(g)
        for k in range(6):
            for r in verify_sl_isomorphism(gs, k, cx):
                if r.status != "pass":
                    bad.append((name, r.degree, k, r.sl_count, r.betti))
    return not bad, "2-3 essential vertices plus bare G20, k<=5" + (
        f", failures {bad[:3]}" if bad else "")


def criterion_5(trials=None):
    bad = []
    slices = 0
    for name, g in primitivity_grapes():
        gs = decompose_grapes(g)
        hc = HomologyCoalgebra(g, "rat")
        cx = hc.cx
        for k in range(5):
            for i in range(cx.max_degree + 1):
                slices += 1
                n = cx.betti(i, k)
                pred = classify_primitives(gs, i, k, cx)
                ker = hc.primitive_kernel(i, k)
                if not primitive_span_matches(pred, ker, n):
                    bad.append((name, i, k))
                if trials is not None:
                    trials.append((name, g, i, k))
    return not bad, f"{slices} slices" + (f", mismatches {bad[:3]}" if bad else "")


def local_primitives(gs, cx, v, k):
    return [c for label, c in predicted_primitives(gs, 1, k, cx) if label.endswith("@" + v)]


def wedge_is_nonprimitive(g, data_draw):
    gs = decompose_grapes(g)
    hc = HomologyCoalgebra(g, "rat")
    cx = hc.cx
    u, w = list(gs.labels)[:2]
    k1 = data_draw(st.integers(1, 3))
    k2 = data_draw(st.integers(1, 4 - k1))
    xs, ys = local_primitives(gs, cx, u, k1), local_primitives(gs, cx, w, k2)
    if not xs or not ys:
        return None

    def combo(chains, k):
        cs = data_draw(st.lists(st.integers(-2, 2), min_size=len(chains),
                                max_size=len(chains)))
        z = {}
        for c, ch in zip(cs, chains):
            z = chain_add(z, ch, c)
        if any(cx.coords(z, 1, k)):
            return z
        # a zero class is not a test case; fall back to the first nonzero spanning chain
        return next(ch for ch in chains if any(cx.coords(ch, 1, k)))

    x, y = combo(xs, k1), combo(ys, k2)
    assert is_primitive_class(hc, 1, k1, cx.coords(x, 1, k1))
    assert is_primitive_class(hc, 1, k2, cx.coords(y, 1, k2))
    xy = wedge(cx, x, y)
    vec = cx.coords(xy, 2, k1 + k2)
    return any(vec) and not is_primitive_class(hc, 2, k1 + k2, vec)


def criterion_6(examples=40):
    results = []
    graphs = [two_grapes(), double_loop_grapes(), three_grapes()]

    @settings(max_examples=examples, deadline=None, derandomize=True,
              suppress_health_check=list(HealthCheck))
    @given(st.sampled_from(graphs), st.data())
    def prop(g, data):
        r = wedge_is_nonprimitive(g, data.draw)
        if r is not None:
            results.append(r)
            assert r

    try:
        prop()
    except AssertionError:
        return False, f"a primitive wedge was found after {len(results)} wedges"
    return bool(results), f"{len(results)} random wedges, all non-primitive"


def criterion_7():
    bad = []
    cases = [("G03", elementary_grape(0, 3)), ("G11", elementary_grape(1, 1)),
             ("G21", elementary_grape(2, 1)), ("two_grapes", two_grapes())]
    for name, g in cases:
        rep = verify_formality(decompose_grapes(g), 4)
        bad += [(name, c) for c, r in rep.items() if r["status"] != "pass"]
    return not bad, "G03, G11, G21, two_grapes at K=4" + (f", failures {bad}" if bad else "")


def criterion_8():
    bad = []
    cases = [(f"G{l}{m}", elementary_grape(l, m)) for l, m in [(1, 1), (2, 1), (0, 3), (2, 0)]]
    cases += [("theta", theta_graph()), ("whiskered_bigon", whiskered_bigon()),
              ("two_grapes", two_grapes()), ("h_tree", h_tree())]
    for name, g in cases:
        assert len(g.edges) <= 5
        for k in range(4):
            if cross_check(g, k)["status"] != "pass":
                bad.append((name, k))
    return not bad, f"{len(cases)} graphs, k<=3" + (f", mismatches {bad}" if bad else "")


def criterion_9(trials=5):
    slices = []
    criterion_5(slices)
    bad = []
    moved = 0
    rng = random.Random(20260917)
    for name, g, i, k in slices:
        hc = HomologyCoalgebra(g)
        base = hc.comultiplication(i, k)
        orig = hc.cx.homology(i, k).representatives
        changed = False
        for _ in range(trials):
            reps = hc.perturbed_representatives(i, k, rng)
            changed = changed or reps != orig
            if hc.comultiplication(i, k, reps) != base:
                bad.append((name, i, k))
                break
        moved += changed
    # top-degree slices have no boundaries, so their representatives cannot move
    return not bad, f"{len(slices)} slices x {trials} trials, {moved} with moved cycles" + (
        f", changed {bad[:3]}" if bad else "")


LIMITS = {1: 60, 2: 120, 3: None, 4: 120, 5: 120, 6: None, 7: 120, 8: 300, 9: None}
CRITERIA = {n: globals()[f"criterion_{n}"] for n in LIMITS}


def run_criterion(n):
    t = time.perf_counter()
    ok, detail = CRITERIA[n]()
    dt = time.perf_counter() - t
    limit = LIMITS[n]
    in_time = limit is None or dt < limit
    status = "PASS" if ok and in_time else "FAIL"
    bound = f" < {limit} s" if limit else ""
    line = f"criterion {n}: {status} ({detail}; {dt:.1f} s{bound})"
    return ok and in_time, line


@pytest.mark.parametrize("n", sorted(LIMITS))
def test_criterion(n):
    ok, line = run_criterion(n)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n in sorted(LIMITS):
        ok, line = run_criterion(n)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
