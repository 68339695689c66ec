"""Star and loop classes, the Star-Loop basis, primitives and the closed form.

Everything here works on a :class:`~grapeshot.graph_core.GrapesStructure`
together with the Swiatkowski complex of the same graph.  Local indices
(h_1, h_2, ... and e_1, e_2, ...) follow the labels in the structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import DegenerateGraph, IndexOutOfRange
from .linalg import determinant, rank_q, same_column_span
from .polyring import binomial_splits, mono_from_pairs, mono_str, r0_homogeneous_basis
from .coalgebra import (coshuffle, d_squared_zero, kunneth_coords, tensor_wedge,
                        verify_coalgebra_axioms)
from .swiatkowski import (LocalGen, LocalPiece, SwiatkowskiComplex, chain_add,
                          monomial_times, poly_times, wedge)


# ------------------------------------------------------------------ classes

@dataclass(frozen=True)
class StarClass:
    vertex: str
    indices: tuple
    chain: dict


@dataclass(frozen=True)
class LoopClass:
    vertex: str
    r: int
    chain: dict


def _complex(gs, cx):
    return cx if cx is not None else SwiatkowskiComplex(gs.graph)


def star_chain(gs, cx, v, i, j, k):
    lab = gs.labels[v]
    n = lab.valence
    if not 1 <= i < j < k <= n:
        raise IndexOutOfRange(f"star indices {(i, j, k)} outside 1..{n} at {v}")
    hs = [cx.half(lab.half_edges[x - 1]) for x in (i, j, k)]
    es = [lab.graph_edge(x) for x in (i, j, k)]
    out = {}
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        term = {cx.unit()._replace(locals=(hs[b],)): 1,
                cx.unit()._replace(locals=(hs[c],)): -1}
        out = chain_add(out, monomial_times(cx, {es[a]: 1}, term))
    return out


def star_class(gs, v, i, j, k, cx=None):
    """alpha^v_{ijk} = e(h_i)(h_j - h_k) + e(h_j)(h_k - h_i) + e(h_k)(h_i - h_j)."""
    cx = _complex(gs, cx)
    return StarClass(v, (i, j, k), star_chain(gs, cx, v, i, j, k))


def loop_chain(gs, cx, v, r):
    lab = gs.labels[v]
    if not 1 <= r <= len(lab.loops):
        raise IndexOutOfRange(f"loop index {r} outside 1..{len(lab.loops)} at {v}")
    i = lab.loops[r - 1]
    first, second = lab.half_edges[i - 1], lab.half_edges[i]
    u = cx.unit()
    return {u._replace(locals=(cx.half(second),)): 1,
            u._replace(locals=(cx.half(first),)): -1}


def loop_class(gs, v, r, cx=None):
    """beta^v_r = h_{i+1} - h_i for the r-th loop (first half-edge h_i)."""
    cx = _complex(gs, cx)
    return LoopClass(v, r, loop_chain(gs, cx, v, r))


# ------------------------------------------------------------------ SL basis

@dataclass(frozen=True)
class SLChoice:
    vertex: str
    kind: str            # "star" or "loop"
    index: tuple         # (1, j, k) for a star, (r,) for a loop
    monomial: tuple      # sorted (edge, exponent) pairs over graph edges

    @property
    def weight(self):
        return sum(e for _, e in self.monomial) + (2 if self.kind == "star" else 1)

    def __str__(self):
        if self.kind == "star":
            core = "alpha_{%d%d%d}" % self.index
        else:
            core = f"beta_{self.index[0]}"
        pre = "" if not self.monomial else mono_str(self.monomial) + "*"
        return f"{pre}{core}@{self.vertex}"

    def _replace_mono(self, monomial):
        return SLChoice(self.vertex, self.kind, self.index, monomial)


@dataclass(frozen=True)
class SLGenerator:
    root_power: int
    choices: tuple       # SLChoice per non-unit vertex, in vertex order

    @property
    def degree(self):
        return len(self.choices)

    @property
    def weight(self):
        return self.root_power + sum(c.weight for c in self.choices)

    def describe(self, root_edge):
        parts = []
        if self.root_power:
            parts.append(root_edge if self.root_power == 1 else f"{root_edge}^{self.root_power}")
        parts += [str(c) for c in self.choices]
        return " * ".join(parts) or "1"


def _monos(edges, d):
    """Monomials of degree d in the given edge ids (as sorted pair tuples)."""
    out = []
    for combo in combinations_with_replacement(edges, d):
        out.append(mono_from_pairs((e, 1) for e in combo))
    return out


def star_loop_options(gs, v, w):
    """SL choices at an essential vertex with local weight exactly w."""
    if gs.sporadic:
        return _sporadic_options(gs, v, w)
    lab = gs.labels[v]
    out = []
    firsts = [x for x in range(2, lab.valence + 1) if lab.is_first(x)]
    for a in range(len(firsts)):
        for b in range(a + 1, len(firsts)):
            j, k = firsts[a], firsts[b]
            jp, kp = lab.edge_of[j - 1], lab.edge_of[k - 1]
            banned = {1} | set(range(jp + 1, kp))
            allowed = [lab.edges[x - 1] for x in range(1, len(lab.edges) + 1) if x not in banned]
            for p in _monos(allowed, w - 2) if w >= 2 else []:
                out.append(SLChoice(v, "star", (1, j, k), p))
    allowed = list(lab.edges[1:])
    for r in range(1, len(lab.loops) + 1):
        for q in _monos(allowed, w - 1) if w >= 1 else []:
            out.append(SLChoice(v, "loop", (r,), q))
    return out


def sl_basis(gs, i, k):
    """All Star-Loop generators of degree i and weight k."""
    verts = list(gs.labels)
    per_vertex = {v: {w: star_loop_options(gs, v, w) for w in range(1, k + 1)}
                  for v in verts}
    out = []

    def rec(pos, chosen, wt):
        if len(chosen) > i:
            return
        if pos == len(verts):
            if len(chosen) == i:
                a = k - wt
                if gs.sporadic and i > 0:
                    if a == 0:
                        out.append(SLGenerator(0, tuple(chosen)))
                else:
                    out.append(SLGenerator(a, tuple(chosen)))
            return
        rec(pos + 1, chosen, wt)
        v = verts[pos]
        for w in range(1, k - wt + 1):
            for ch in per_vertex[v][w]:
                chosen.append(ch)
                rec(pos + 1, chosen, wt + w)
                chosen.pop()

    rec(0, [], 0)
    return out


def choice_chain(gs, cx, ch):
    if ch.kind == "star":
        base = _star_for_choice(gs, cx, ch)
    else:
        base = loop_chain(gs, cx, ch.vertex, ch.index[0])
    return monomial_times(cx, dict(ch.monomial), base)


def sl_external_product(gs, gen, cx=None):
    """Chain e0^a * wedge over vertices of (p alpha) or (q beta)."""
    cx = _complex(gs, cx)
    chain = monomial_times(cx, {gs.root[1]: gen.root_power}, {cx.unit(): 1})
    for ch in gen.choices:
        chain = wedge(cx, chain, choice_chain(gs, cx, ch))
    return chain


@dataclass
class SLDegreeReport:
    degree: int
    weight: int
    sl_count: int
    betti: int
    invertible: bool
    unimodular: bool

    @property
    def status(self):
        return "pass" if self.sl_count == self.betti and self.invertible else "fail"


def verify_sl_isomorphism(gs, k, cx=None, max_degree=None):
    """Per degree: SL count vs Betti and invertibility of the coordinate matrix."""
    cx = _complex(gs, cx)
    top = len(gs.labels) if max_degree is None else max_degree
    reports = []
    for i in range(top + 1):
        gens = sl_basis(gs, i, k)
        betti = cx.betti(i, k)
        cols = [cx.coords(sl_external_product(gs, g, cx), i, k) for g in gens]
        inv = uni = False
        if len(gens) == betti:
            if betti == 0:
                inv = uni = True
            else:
                det = determinant([[cols[j][r] for j in range(betti)] for r in range(betti)])
                inv = det != 0
                uni = abs(det) == 1
        reports.append(SLDegreeReport(i, k, len(gens), betti, inv, uni))
    return reports


# ------------------------------------------------------------------ closed form

def betti_closed_form(l, m, k):
    """Rank of H_1 of the k-point configuration space of Gamma_{l,m}."""
    if l < 0 or m < 0 or 2 * l + m < 3:
        raise DegenerateGraph(f"Gamma_{{{l},{m}}} has no essential vertex")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 0
    n = k + l + m - 2
    return (2 * l + m - 2) * comb(n, l + m - 1) - comb(n, l + m - 2) + 1


# ------------------------------------------------------------------ primitives

def admissible_stars(gs, v):
    """Index triples (1, j, k) of the star classes that enter the SL basis."""
    if gs.sporadic:
        return sorted({ch.index for w in (2,) for ch in _sporadic_options(gs, v, w)
                       if ch.kind == "star"})
    lab = gs.labels[v]
    firsts = [x for x in range(2, lab.valence + 1) if lab.is_first(x)]
    return [(1, j, k) for a, j in enumerate(firsts) for k in firsts[a + 1:]]


def predicted_primitives(gs, i, k, cx=None):
    """``(label, chain)`` pairs spanning the predicted primitives of H_i(B_k)."""
    cx = _complex(gs, cx)
    edges = list(gs.graph.edge_ids)
    e0 = gs.root[1]
    if i == 0:
        return [(f"{e0}*empty", {cx.element({e0: 1}): 1})] if k == 1 else []
    if i != 1:
        return []
    out = []
    for v in gs.labels:
        gammas = [(2, "alpha_{%d%d%d}@%s" % (t + (v,)), _star_chain_for(gs, cx, v, t))
                  for t in admissible_stars(gs, v)]
        gammas += [(1, f"beta_{r}@{v}", loop_chain(gs, cx, v, r))
                   for r in range(1, len(gs.labels[v].loops) + 1)]
        for wt, name, gamma in gammas:
            if k - wt < 0:
                continue
            for p in r0_homogeneous_basis(edges, e0, k - wt):
                label = name if p.degree() == 0 else f"({p})*{name}"
                out.append((label, poly_times(cx, p, gamma)))
    return out


def predicted_primitive_chains(gs, i, k, cx=None):
    """Chains spanning the predicted primitive subspace of H_i(B_k)."""
    return [c for _, c in predicted_primitives(gs, i, k, cx)]


def classify_primitives(gs, i, k, cx=None):
    """Homology coordinate vectors spanning the predicted primitives."""
    cx = _complex(gs, cx)
    return [cx.coords(c, i, k) for c in predicted_primitive_chains(gs, i, k, cx)]


def primitive_span_matches(predicted, kernel, dim):
    """Dimension and subspace equality over Q of two lists of vectors."""
    pr = rank_q(predicted, dim) if predicted else 0
    kr = rank_q(kernel, dim) if kernel else 0
    return pr == kr and same_column_span(predicted, kernel, dim)


# ------------------------------------------------------------------ sporadic

def _star_chain_for(gs, cx, v, triple):
    return star_chain(gs, cx, v, *triple)


def _star_for_choice(gs, cx, ch):
    return star_chain(gs, cx, ch.vertex, *ch.index)


def _sporadic_options(gs, v, w):
    """SL choices for a bouquet of loops.

    Every loop takes an arbitrary monomial.  Stars use the first half-edges
    of two distinct loops other than the first one, with p free of the loops
    strictly between them but otherwise unrestricted.
    """
    lab = gs.labels[v]
    edges = list(lab.edges)
    firsts = [x for x in lab.loops if x > 1]
    out = []
    for a in range(len(firsts)):
        for b in range(a + 1, len(firsts)):
            j, k = firsts[a], firsts[b]
            jp, kp = lab.edge_of[j - 1], lab.edge_of[k - 1]
            banned = set(range(jp + 1, kp))
            allowed = [edges[x - 1] for x in range(1, len(edges) + 1) if x not in banned]
            for p in _monos(allowed, w - 2) if w >= 2 else []:
                out.append(SLChoice(v, "star", (1, j, k), p))
    for r in range(1, len(lab.loops) + 1):
        for q in _monos(edges, w - 1) if w >= 1 else []:
            out.append(SLChoice(v, "loop", (r,), q))
    return out


# ------------------------------------------------------------------ mapping cone

def cone_h_terms(gs, cx, v, triple):
    """H_{ijk} as [(coef, left code, right code)] on the local piece at v."""
    lab = gs.labels[v]
    codes = [cx.half(lab.half_edges[x - 1])[1] for x in triple]
    out = []
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        out.append((1, codes[a], codes[b]))
        out.append((-1, codes[a], codes[c]))
    return out


def _cone_pieces(gs, base):
    pieces = []
    for piece in base.pieces:
        v = piece.vertex
        gens = [LocalGen(g.name, g.degree, g.weight, list(g.boundary), list(g.coproduct))
                for g in piece.gens]
        if v in gs.labels:
            lab = gs.labels[v]
            n = lab.valence
            for triple in combinations(range(1, n + 1), 3):
                tag = "%d,%d,%d" % triple
                ca = len(gens)
                gens.append(LocalGen(f"a[{v}]({tag})", 1, 2, [], [(1, ca, None), (1, None, ca)]))
                cb = len(gens)
                halves = [base.half(lab.half_edges[x - 1])[1] for x in triple]
                epos = [base.edge_pos[lab.graph_edge(x)] for x in triple]
                bd = [(1, (), ca)]
                for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
                    bd.append((-1, (epos[a],), halves[b]))
                    bd.append((1, (epos[a],), halves[c]))
                cop = [(1, cb, None), (1, None, cb)]
                # the correction enters with a minus sign: coderivation forces it
                cop += [(-c, l, r) for c, l, r in cone_h_terms(gs, base, v, triple)]
                gens.append(LocalGen(f"abar[{v}]({tag})", 2, 2, bd, cop))
        pieces.append(LocalPiece(v, gens))
    return pieces


class MappingCone:
    """S with an acyclic pair (a_ijk, abar_ijk) added for every star triple.

    ``complex`` is the cone as a :class:`SwiatkowskiComplex`; basis elements
    of the original complex ``base`` are basis elements of the cone too.
    """

    def __init__(self, gs, base=None, ring="int"):
        self.gs = gs
        self.base = base if base is not None else SwiatkowskiComplex(gs.graph, ring=ring)
        self.complex = SwiatkowskiComplex(self.base.graph, pieces=_cone_pieces(gs, self.base),
                                          ring=ring, smooth=False)

    def a_element(self, v, triple):
        return self.complex.element(None, [(v, "a[%s](%d,%d,%d)" % ((v,) + tuple(triple)))])

    def abar_element(self, v, triple):
        return self.complex.element(None, [(v, "abar[%s](%d,%d,%d)" % ((v,) + tuple(triple)))])

    def is_cone_element(self, b):
        return any(self.complex.pieces[p].gens[c].name.startswith(("a[", "abar["))
                   for p, c in b.locals)

    def choice_chain(self, ch):
        cx = self.complex
        if ch.kind == "star":
            base = {self.a_element(ch.vertex, ch.index): 1}
        else:
            base = loop_chain(self.gs, cx, ch.vertex, ch.index[0])
        return monomial_times(cx, dict(ch.monomial), base)

    def sl_image(self, gen):
        """p alpha_1jk -> p a_1jk, q beta -> q beta, wedged and times e0^a."""
        cx = self.complex
        chain = monomial_times(cx, {self.gs.root[1]: gen.root_power}, {cx.unit(): 1})
        for ch in gen.choices:
            chain = wedge(cx, chain, self.choice_chain(ch))
        return chain

    def sl_coproduct(self, gen):
        """Algebraic coproduct of an SL generator: every star and loop factor primitive."""
        cx = self.complex
        u = cx.unit()
        poly = {self.gs.root[1]: gen.root_power}
        T = {(u, u): 1}
        for ch in gen.choices:
            for e, x in ch.monomial:
                poly[e] = poly.get(e, 0) + x
            core = self.choice_chain(ch._replace_mono(()))
            prim = {}
            for b, c in core.items():
                prim[(b, u)] = prim.get((b, u), 0) + c
                prim[(u, b)] = prim.get((u, b), 0) + c
            T = tensor_wedge(cx, T, prim)
        mono = tuple(poly.get(e, 0) for e in cx.edges)
        out = {}
        for left, right, c in binomial_splits(mono):
            lm = {cx.edges[i]: x for i, x in enumerate(left) if x}
            rm = {cx.edges[i]: x for i, x in enumerate(right) if x}
            for (a, b), v in T.items():
                for a2, x in monomial_times(cx, lm, {a: 1}).items():
                    for b2, y in monomial_times(cx, rm, {b: 1}).items():
                        key = (a2, b2)
                        out[key] = out.get(key, 0) + c * v * x * y
        return {k: v for k, v in out.items() if v}


def build_mapping_cone(gs, base=None):
    return MappingCone(gs, base)


def _square_invertible(cols, n):
    if len(cols) != n:
        return False
    if n == 0:
        return True
    return determinant([[cols[j][r] for j in range(n)] for r in range(n)]) != 0


def verify_formality(gs, max_weight, cone=None):
    """Checks on the mapping cone; returns {check: {"status", ...}}."""
    cone = cone or MappingCone(gs)
    S, C = cone.base, cone.complex
    report = {}
    report["cone_d_squared"] = {"status": "pass" if d_squared_zero(C, C.max_degree, max_weight)
                                else "fail"}
    elems = [b for k in range(max_weight + 1) for i in range(C.max_degree + 1)
             for b in C.basis(i, k) if cone.is_cone_element(b)]
    ax = verify_coalgebra_axioms(C, max_weight, C.max_degree, elements=elems)
    report["cone_axioms"] = {"status": "pass" if all(a["status"] == "pass" for a in ax.values())
                             else "fail", "axioms": ax}

    incl, sl, comult = [], [], []
    for k in range(max_weight + 1):
        for i in range(C.max_degree + 1):
            bs, bc = S.betti(i, k) if i <= S.max_degree else 0, C.betti(i, k)
            cols = [C.coords(z, i, k) for z in S.homology(i, k).representatives] if bs else []
            ok = bs == bc and _square_invertible(cols, bc)
            incl.append({"slice": [i, k], "betti_s": bs, "betti_cone": bc, "ok": ok})
            gens = sl_basis(gs, i, k) if i <= len(gs.labels) else []
            cols = [C.coords(cone.sl_image(g), i, k) for g in gens]
            sl.append({"slice": [i, k], "sl_count": len(gens), "betti_cone": bc,
                       "ok": _square_invertible(cols, bc)})
            for g in gens:
                lhs = kunneth_coords(C, coshuffle(C, cone.sl_image(g)))
                alg = kunneth_coords(C, cone.sl_coproduct(g))
                via_s = kunneth_coords(C, coshuffle(S, sl_external_product(gs, g, S)))
                if not (lhs == alg == via_s):
                    comult.append({"slice": [i, k], "generator": g.describe(gs.root[1])})
    report["inclusion_iso"] = {"status": "pass" if all(r["ok"] for r in incl) else "fail",
                               "slices": incl}
    report["sl_iso"] = {"status": "pass" if all(r["ok"] for r in sl) else "fail", "slices": sl}
    report["comultiplication"] = {"status": "fail" if comult else "pass", "mismatches": comult}
    return report
