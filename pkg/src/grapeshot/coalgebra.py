"""The coshuffle comultiplication on Swiatkowski chains and on homology.

On a basis element ``E^a g_1 ... g_m`` (local generators in vertex order)
the coproduct is ``sha*(E^a)`` times the product of the local coproducts,
multiplied out in the tensor square with the Koszul rule
``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd``.  Tensor chains are dicts
keyed by pairs of basis elements.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import TorsionPresent
from .linalg import nullspace_q
from .polyring import binomial_splits
from .swiatkowski import SBasisElement, SwiatkowskiComplex, wedge_elements


def _acc(out, key, v):
    if v:
        v += out.get(key, 0)
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def coshuffle_element(cx, b):
    cache = cx.__dict__.setdefault("_sha_cache", {})
    hit = cache.get(b)
    if hit is not None:
        return hit
    terms = {}
    for left, right, c in binomial_splits(b.monomial):
        terms[(left, (), right, (), 0)] = c
    for p, code in b.locals:
        gen = cx.pieces[p].gens[code]
        nxt = {}
        for (lm, ll, rm, rl, rdeg), c in terms.items():
            for coef, lc, rc in gen.coproduct:
                sign = coef
                nll, nrl, nrdeg = ll, rl, rdeg
                if lc is not None:
                    dx = cx.pieces[p].gens[lc].degree
                    if dx % 2 and rdeg % 2:
                        sign = -sign
                    nll = ll + ((p, lc),)
                if rc is not None:
                    nrl = rl + ((p, rc),)
                    nrdeg = rdeg + cx.pieces[p].gens[rc].degree
                _acc(nxt, (lm, nll, rm, nrl, nrdeg), sign * c)
        terms = nxt
    out = {}
    for (lm, ll, rm, rl, _), c in terms.items():
        _acc(out, (SBasisElement(lm, ll), SBasisElement(rm, rl)), c)
    cache[b] = out
    return out


def coshuffle(cx, chain):
    """Sha*_S of a chain (dict basis element -> coef) as a tensor chain."""
    out = {}
    for b, c in chain.items():
        for k, v in coshuffle_element(cx, b).items():
            _acc(out, k, c * v)
    return out


def tensor_boundary(cx, T):
    """(d (x) 1 + 1 (x) d) with the Koszul sign on the second term."""
    out = {}
    for (a, b), c in T.items():
        for x, v in cx.boundary_element(a).items():
            _acc(out, (x, b), c * v)
        s = -1 if cx.degree(a) % 2 else 1
        for y, v in cx.boundary_element(b).items():
            _acc(out, (a, y), s * c * v)
    return out


def tensor_wedge(cx, S, T):
    """Product in the tensor square: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd."""
    out = {}
    for (a, b), x in S.items():
        db = cx.degree(b) % 2
        for (c, d), y in T.items():
            s = -1 if db and cx.degree(c) % 2 else 1
            l, u = wedge_elements(cx, a, c)
            r, w = wedge_elements(cx, b, d)
            if u and w:
                _acc(out, (l, r), s * x * y * u * w)
    return out


def tensor_swap(cx, T):
    out = {}
    for (a, b), c in T.items():
        s = -1 if (cx.degree(a) * cx.degree(b)) % 2 else 1
        _acc(out, (b, a), s * c)
    return out


def counit(cx, b):
    return 1 if b == cx.unit() else 0


def _sha_left(cx, T):
    out = {}
    for (a, b), c in T.items():
        for (x, y), v in coshuffle_element(cx, a).items():
            _acc(out, (x, y, b), c * v)
    return out


def _sha_right(cx, T):
    out = {}
    for (a, b), c in T.items():
        for (x, y), v in coshuffle_element(cx, b).items():
            _acc(out, (a, x, y), c * v)
    return out


def check_element(cx, b):
    """The four axioms on one basis element; returns {axiom: bool}."""
    sha = coshuffle_element(cx, b)
    res = {}
    res["cocommutativity"] = tensor_swap(cx, sha) == sha
    res["coassociativity"] = _sha_left(cx, sha) == _sha_right(cx, sha)
    left, right = {}, {}
    for (x, y), c in sha.items():
        _acc(left, y, counit(cx, x) * c)
        _acc(right, x, counit(cx, y) * c)
    res["counit"] = left == {b: 1} and right == {b: 1}
    res["coderivation"] = coshuffle(cx, cx.boundary_element(b)) == tensor_boundary(cx, sha)
    return res


AXIOMS = ("cocommutativity", "coassociativity", "counit", "coderivation")


def verify_coalgebra_axioms(g_or_cx, max_weight, max_degree, elements=None):
    """Exact check of the DGCA axioms on every basis element in the bounds."""
    cx = g_or_cx if isinstance(g_or_cx, SwiatkowskiComplex) else SwiatkowskiComplex(g_or_cx)
    report = {a: {"status": "pass", "checked": 0} for a in AXIOMS}
    if elements is None:
        elements = [b for k in range(max_weight + 1)
                    for i in range(min(max_degree, cx.max_degree) + 1)
                    for b in cx.basis(i, k)]
    for b in elements:
        for axiom, ok in check_element(cx, b).items():
            entry = report[axiom]
            entry["checked"] += 1
            if not ok and entry["status"] == "pass":
                entry["status"] = "fail"
                entry["counterexample"] = cx.format_element(b)
    return report


def d_squared_zero(cx, max_degree, max_weight):
    """True if d(d(b)) = 0 for every basis element in the bounds."""
    for k in range(max_weight + 1):
        for i in range(2, min(max_degree, cx.max_degree) + 1):
            for b in cx.basis(i, k):
                if cx.boundary(cx.boundary_element(b)):
                    return False
    return True


# ------------------------------------------------------------------ homology

def kunneth_coords(cx, T):
    """Class of a tensor cycle in Kunneth coordinates.

    Returns ``{((i1, k1), (i2, k2)): {a * b2 + b: coef}}`` using the chain
    projection onto homology on each tensor factor; zero entries dropped.
    """
    out = {}
    for (a, b), c in T.items():
        ca = cx.cell_coords(a)
        if not ca:
            continue
        cb = cx.cell_coords(b)
        if not cb:
            continue
        sa, sb = cx.bidegree(a), cx.bidegree(b)
        vec = out.setdefault((sa, sb), {})
        nb = cx.betti(*sb)
        for x, u in ca.items():
            for y, w in cb.items():
                _acc(vec, x * nb + y, c * u * w)
    return {key: vec for key, vec in out.items() if vec}


class ShaMatrix:
    """Sha*_H on one slice H_i(B_k) in Kunneth coordinates.

    ``blocks[((i1, k1), (i2, k2))]`` is a list of columns, one per basis
    class of H_i(B_k); each column is a flat list indexed by ``a * b2 + b``
    for classes ``a`` of H_{i1}(B_{k1}) and ``b`` of H_{i2}(B_{k2}).
    """

    def __init__(self, degree, weight, betti, blocks, dims):
        self.degree = degree
        self.weight = weight
        self.betti = betti
        self.blocks = blocks
        self.dims = dims

    def __eq__(self, other):
        return isinstance(other, ShaMatrix) and self.blocks == other.blocks

    def to_dict(self):
        return {f"H{a[0]}(B{a[1]}) x H{b[0]}(B{b[1]})": cols
                for (a, b), cols in sorted(self.blocks.items())}


class HomologyCoalgebra:
    """Comultiplication on homology of one graph, computed slice by slice."""

    def __init__(self, g_or_cx, ring="int"):
        self.cx = (g_or_cx if isinstance(g_or_cx, SwiatkowskiComplex)
                   else SwiatkowskiComplex(g_or_cx, ring=ring))
        self.ring = ring

    def unit_class(self):
        """Coordinates of [empty configuration] in H_0(B_0)."""
        return self.cx.coords({self.cx.unit(): 1}, 0, 0)

    def _check_torsion(self, i, k):
        if self.ring != "int":
            return
        for k1 in range(k + 1):
            for i1 in range(i + 1):
                h = self.cx.homology(i1, k1)
                if h.torsion:
                    raise TorsionPresent(i1, k1, h.torsion)

    def comultiplication(self, i, k, representatives=None):
        cx = self.cx
        self._check_torsion(i, k)
        h = cx.homology(i, k)
        reps = h.representatives if representatives is None else representatives
        blocks = {}
        for j, z in enumerate(reps):
            for key, vec in kunneth_coords(cx, coshuffle(cx, z)).items():
                if key not in blocks:
                    size = cx.betti(*key[0]) * cx.betti(*key[1])
                    blocks[key] = [[0] * size for _ in reps]
                for pos, v in vec.items():
                    blocks[key][j][pos] += v
        blocks = {key: cols for key, cols in blocks.items()
                  if any(any(c) for c in cols)}
        dims = {key: (cx.betti(*key[0]), cx.betti(*key[1])) for key in blocks}
        return ShaMatrix(i, k, h.betti, blocks, dims)

    def reduced_coproduct_matrix(self, i, k, representatives=None):
        """Rows of x -> Sha_H(x) - x (x) [unit] - [unit] (x) x over all blocks."""
        sha = self.comultiplication(i, k, representatives)
        n = sha.betti
        u = self.unit_class()[0]
        blocks = {key: [list(c) for c in cols] for key, cols in sha.blocks.items()}
        here, zero = (i, k), (0, 0)
        for key in ((here, zero), (zero, here)):
            cols = blocks.setdefault(key, [[0] * n for _ in range(n)])
            for j in range(n):
                cols[j][j] -= u
        rows = []
        for key in sorted(blocks):
            cols = blocks[key]
            for r in range(len(cols[0]) if cols else 0):
                rows.append([cols[j][r] for j in range(n)])
        return rows

    def primitive_kernel(self, i, k):
        """Basis (homology coordinate vectors over Q) of the primitive classes."""
        n = self.cx.betti(i, k)
        if n == 0:
            return []
        rows = self.reduced_coproduct_matrix(i, k)
        return nullspace_q(rows, n)

    def perturbed_representatives(self, i, k, rng=None, scale=3):
        """Representatives plus random boundaries (same homology classes)."""
        rng = rng or random.Random(0)
        cx = self.cx
        h = cx.homology(i, k)
        above = cx.basis(i + 1, k) if i + 1 <= cx.max_degree else []
        out = []
        for z in h.representatives:
            z2 = dict(z)
            if above:
                for _ in range(3):
                    b = rng.choice(above)
                    c = rng.randint(-scale, scale)
                    for x, v in cx.boundary_element(b).items():
                        _acc(z2, x, c * v)
            out.append(z2)
        return out


def homology_comultiplication(g, i, k, ring="int"):
    return HomologyCoalgebra(g, ring).comultiplication(i, k)


def primitive_kernel(g, i, k):
    return HomologyCoalgebra(g, "rat").primitive_kernel(i, k)


def is_primitive_class(hc, i, k, vec):
    """True if the class with coordinates ``vec`` in H_i(B_k) is primitive."""
    rows = hc.reduced_coproduct_matrix(i, k)
    return all(sum(Fraction(r[j]) * vec[j] for j in range(len(vec))) == 0 for r in rows)
