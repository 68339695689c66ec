"""The reduced Swiatkowski complex of a graph, sliced by (degree, weight).

A basis element is an edge monomial (exponent vector over the graph's edges,
in edge order) together with at most one local generator per local vertex.
Local vertices are the vertices of valence at least 3, plus the vertex of a
lone loop, which must keep its factor for the circle to have the right
homology.  The local generators are the vertex itself (degree 0, weight 1)
and its half-edges (degree 1, weight 1), with d(h) = e(h) - v.

The same machinery runs any complex of the form R[E] (x) wedge of local
pieces; :mod:`grapeshot.grapes_theory` adds mapping-cone generators this way.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import GraphError
from .graph_core import has_bivalent_vertex, smooth_bivalent
from .linalg import reduce_chain_complex, smith_normal_form  # noqa: F401  (re-export)


class SBasisElement(NamedTuple):
    monomial: tuple     # exponents, one per edge in edge order
    locals: tuple       # ((piece index, generator code), ...) sorted by piece


@dataclass
class LocalGen:
    name: str
    degree: int
    weight: int
    boundary: list      # [(coef, edges added (tuple of edge positions), code or None)]
    coproduct: list     # [(coef, left code or None, right code or None)]


@dataclass
class LocalPiece:
    vertex: str
    gens: list

    def code(self, name):
        for i, g in enumerate(self.gens):
            if g.name == name:
                return i
        raise KeyError(name)


def swiatkowski_piece(g, v, edge_pos):
    gens = [LocalGen(f"v[{v}]", 0, 1, [], [])]
    for h in g.rotation[v]:
        e = g.half_edges[h].edge
        gens.append(LocalGen(f"h[{h}]", 1, 1, [(1, (edge_pos[e],), None), (-1, (), 0)], []))
    for i, gen in enumerate(gens):
        gen.coproduct = [(1, i, None), (1, None, i)]
    return LocalPiece(v, gens)


def local_vertices(g):
    out = []
    for v in g.vertices:
        val = g.valence(v)
        if val >= 3 or (val == 2 and g.loop_count(v) == 1):
            out.append(v)
    return out


@dataclass
class HomologyPresentation:
    degree: int
    weight: int
    betti: int
    torsion: list
    representatives: list    # chains: dict SBasisElement -> coef


def _monomials(n, d):
    """Exponent vectors of total degree d in n variables, lex-descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials(n - 1, d - a):
            yield (a,) + rest


class SwiatkowskiComplex:
    """Bigraded complex with cached bases, boundaries and per-weight homology.

    ``ring`` is ``"int"`` (homology over Z, torsion reported) or ``"rat"``
    (Betti numbers over Q, torsion ignored).
    """

    def __init__(self, g, pieces=None, ring="int", smooth=True):
        if smooth and has_bivalent_vertex(g):
            g = smooth_bivalent(g)
        if any(g.valence(v) == 0 for v in g.vertices):
            raise GraphError("isolated vertices are not supported")
        self.graph = g
        self.ring = ring
        self.edges = list(g.edge_ids)
        self.edge_pos = {e: i for i, e in enumerate(self.edges)}
        self.nvars = len(self.edges)
        if pieces is None:
            pieces = [swiatkowski_piece(g, v, self.edge_pos) for v in local_vertices(g)]
        self.pieces = pieces
        self.piece_index = {p.vertex: i for i, p in enumerate(pieces)}
        self._basis = {}
        self._index = {}
        self._reduced = {}
        self._bcache = {}
        self.max_degree = sum(max(gen.degree for gen in p.gens) for p in pieces)

    # ---------------------------------------------------------------- elements
    def unit(self):
        return SBasisElement((0,) * self.nvars, ())

    def gen(self, vertex, name):
        return (self.piece_index[vertex], self.pieces[self.piece_index[vertex]].code(name))

    def element(self, monomial=None, gens=()):
        """Build a basis element from {edge: exp} and [(vertex, generator name)]."""
        mono = [0] * self.nvars
        for e, a in (monomial or {}).items():
            mono[self.edge_pos[e]] += a
        locs = tuple(sorted(self.gen(v, n) for v, n in gens))
        return SBasisElement(tuple(mono), locs)

    def half(self, h):
        he = self.graph.half_edges[h]
        return self.gen(he.vertex, f"h[{h}]")

    def degree(self, b):
        return sum(self.pieces[p].gens[c].degree for p, c in b.locals)

    def weight(self, b):
        return sum(b.monomial) + sum(self.pieces[p].gens[c].weight for p, c in b.locals)

    def bidegree(self, b):
        return self.degree(b), self.weight(b)

    def format_element(self, b):
        parts = []
        for e, a in zip(self.edges, b.monomial):
            if a:
                parts.append(e if a == 1 else f"{e}^{a}")
        mono = "*".join(parts)
        gens = "^".join(self.pieces[p].gens[c].name for p, c in b.locals)
        if mono and gens:
            return f"{mono}*{gens}"
        return mono or gens or "1"

    def format_chain(self, chain):
        items = sorted(chain.items(), key=lambda bc: self.format_element(bc[0]))
        out = []
        for b, c in items:
            s = self.format_element(b)
            term = s if abs(c) == 1 else f"{abs(c)}*{s}"
            out.append((("-" if c < 0 else "") if not out else ("- " if c < 0 else "+ ")) + term)
        return " ".join(out) or "0"

    # ---------------------------------------------------------------- bases
    def _local_choices(self):
        out = []
        for i, p in enumerate(self.pieces):
            out.append([None] + [(i, c) for c in range(len(p.gens))])
        return out

    def basis(self, i, k):
        key = (i, k)
        if key not in self._basis:
            combos = []

            def rec(pos, locs, deg, wt):
                if deg > i or wt > k:
                    return
                if pos == len(self.pieces):
                    if deg == i:
                        combos.append((tuple(locs), wt))
                    return
                rec(pos + 1, locs, deg, wt)
                for c, gen in enumerate(self.pieces[pos].gens):
                    locs.append((pos, c))
                    rec(pos + 1, locs, deg + gen.degree, wt + gen.weight)
                    locs.pop()

            rec(0, [], 0, 0)
            out = []
            for locs, wt in combos:
                for mono in _monomials(self.nvars, k - wt):
                    out.append(SBasisElement(mono, locs))
            self._basis[key] = out
            self._index[key] = {b: j for j, b in enumerate(out)}
        return self._basis[key]

    def index(self, i, k):
        self.basis(i, k)
        return self._index[(i, k)]

    def enumerate_basis(self, i, k):
        return list(self.basis(i, k))

    # ---------------------------------------------------------------- boundary
    def boundary_element(self, b):
        hit = self._bcache.get(b)
        if hit is not None:
            return hit
        out = {}
        sign = 1
        locs = b.locals
        for pos, (p, c) in enumerate(locs):
            gen = self.pieces[p].gens[c]
            for coef, add, c2 in gen.boundary:
                mono = list(b.monomial)
                for e in add:
                    mono[e] += 1
                if c2 is None:
                    nl = locs[:pos] + locs[pos + 1:]
                else:
                    nl = locs[:pos] + ((p, c2),) + locs[pos + 1:]
                nb = SBasisElement(tuple(mono), nl)
                v = out.get(nb, 0) + sign * coef
                if v:
                    out[nb] = v
                else:
                    del out[nb]
            if gen.degree % 2:
                sign = -sign
        self._bcache[b] = out
        return out

    def boundary(self, chain):
        out = {}
        for b, c in chain.items():
            for nb, a in self.boundary_element(b).items():
                v = out.get(nb, 0) + c * a
                if v:
                    out[nb] = v
                else:
                    out.pop(nb, None)
        return out

    def boundary_columns(self, i, k):
        """Columns (dict row -> coef) of d: (i, k) -> (i-1, k)."""
        if i == 0:
            return [{} for _ in self.basis(0, k)]
        rows = self.index(i - 1, k)
        cols = []
        for b in self.basis(i, k):
            cols.append({rows[nb]: c for nb, c in self.boundary_element(b).items()})
        return cols

    def boundary_matrix(self, i, k):
        """Dense matrix of d_(i,k): rows index basis(i-1,k), columns basis(i,k)."""
        cols = self.boundary_columns(i, k)
        nrows = len(self.basis(i - 1, k)) if i > 0 else 0
        M = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for r, c in col.items():
                M[r][j] = c
        return M

    # ---------------------------------------------------------------- homology
    def top_degree(self, k):
        d = 0
        while d < self.max_degree and self.basis(d + 1, k):
            d += 1
        return d

    def reduced(self, k):
        if k not in self._reduced:
            top = self.top_degree(k)
            cells = [len(self.basis(d, k)) for d in range(top + 1)]
            bd = [self.boundary_columns(d, k) for d in range(top + 1)]
            self._reduced[k] = reduce_chain_complex(cells, bd)
        return self._reduced[k]

    def homology(self, i, k):
        if i > self.max_degree or not self.basis(i, k):
            return HomologyPresentation(i, k, 0, [], [])
        red = self.reduced(k)
        if i > red.top:
            return HomologyPresentation(i, k, 0, [], [])
        h = red.homology[i]
        basis = self.basis(i, k)
        reps = [{basis[j]: c for j, c in r.items()} for r in h.representatives]
        torsion = list(h.torsion) if self.ring == "int" else []
        return HomologyPresentation(i, k, h.betti, torsion, reps)

    def betti(self, i, k):
        return self.homology(i, k).betti

    def coords(self, chain, i=None, k=None):
        """Homology coordinates of a homogeneous cycle (or any chain)."""
        if not chain:
            return [0] * (self.betti(i, k) if i is not None else 0)
        if i is None:
            i, k = self.bidegree(next(iter(chain)))
        if i > self.max_degree or not self.basis(i, k) or i > self.reduced(k).top:
            return []
        idx = self.index(i, k)
        return self.reduced(k).coords(i, {idx[b]: c for b, c in chain.items()})

    def cell_coords(self, b):
        i, k = self.bidegree(b)
        red = self.reduced(k)
        if i > red.top:
            return {}
        return red.cell_coords(i, self.index(i, k)[b])

    def table(self, max_degree, max_weight):
        """Rows (i, k, betti, torsion) for i <= max_degree, k <= max_weight."""
        rows = []
        for k in range(max_weight + 1):
            for i in range(max_degree + 1):
                h = self.homology(i, k)
                rows.append((i, k, h.betti, h.torsion))
        return rows


# ------------------------------------------------------------------ chains

def chain_add(a, b, scale=1):
    out = dict(a)
    for x, c in b.items():
        v = out.get(x, 0) + scale * c
        if v:
            out[x] = v
        else:
            out.pop(x, None)
    return out


def chain_scale(a, s):
    return {x: s * c for x, c in a.items()} if s else {}


def wedge(cx, a, b):
    """Product of chains with disjoint local supports (Koszul signs)."""
    out = {}
    for x, c1 in a.items():
        for y, c2 in b.items():
            z, s = wedge_elements(cx, x, y)
            if s:
                v = out.get(z, 0) + s * c1 * c2
                if v:
                    out[z] = v
                else:
                    out.pop(z, None)
    return out


def wedge_elements(cx, x, y):
    """x * y as (element, sign); sign 0 if both carry a generator at one vertex."""
    mono = tuple(a + b for a, b in zip(x.monomial, y.monomial))
    px = {p for p, _ in x.locals}
    if any(p in px for p, _ in y.locals):
        return None, 0
    tagged = [(p, c, 0, n) for n, (p, c) in enumerate(x.locals)]
    tagged += [(p, c, 1, n) for n, (p, c) in enumerate(y.locals)]
    # sign of sorting the concatenation, counting odd generators only
    sign = 1
    for a in range(len(tagged)):
        for b in range(a + 1, len(tagged)):
            if tagged[a][0] > tagged[b][0]:
                da = cx.pieces[tagged[a][0]].gens[tagged[a][1]].degree
                db = cx.pieces[tagged[b][0]].gens[tagged[b][1]].degree
                if da % 2 and db % 2:
                    sign = -sign
    locs = tuple(sorted((p, c) for p, c, _, _ in tagged))
    return SBasisElement(mono, locs), sign


def monomial_times(cx, exps, chain):
    """Multiply a chain by an edge monomial given as {edge: exponent}."""
    add = [0] * cx.nvars
    for e, a in exps.items():
        add[cx.edge_pos[e]] += a
    return {SBasisElement(tuple(x + y for x, y in zip(b.monomial, add)), b.locals): c
            for b, c in chain.items()}


def poly_times(cx, poly, chain):
    out = {}
    for m, c in poly.terms.items():
        out = chain_add(out, monomial_times(cx, dict(m), chain), c)
    return out


# ------------------------------------------------------------------ module API

def enumerate_basis(g, i, k):
    return SwiatkowskiComplex(g).enumerate_basis(i, k)


def boundary_matrix(g, i, k):
    return SwiatkowskiComplex(g).boundary_matrix(i, k)


def homology(g, i, k, ring="int"):
    return SwiatkowskiComplex(g, ring=ring).homology(i, k)
