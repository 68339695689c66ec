"""Exact integer and rational linear algebra for chain complexes.

Matrices here are small dense lists of rows.  The large boundary operators
are handled by :func:`reduce_chain_complex`, which performs elementary
reductions on unit pivots (a pair of cells ``x``, ``y`` with ``<dx, y> = +-1``
can be cancelled without changing integral homology) and only hands the
leftover, typically tiny, complex to the Smith normal form.

>>> snf = smith_normal_form([[2, 4], [6, 8]])
>>> snf.diagonal
[2, 4]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


# ------------------------------------------------------------------ dense SNF

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in a]
    for i, row in enumerate(a):
        oi = out[i]
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


@dataclass
class SNF:
    """``U @ M @ V`` is diagonal with entries ``diagonal`` (positive, dividing)."""
    diagonal: list
    U: list
    V: list
    U_inv: list
    V_inv: list
    shape: tuple

    @property
    def rank(self):
        return len(self.diagonal)


def smith_normal_form(M, shape=None):
    """Smith normal form with unimodular transforms (minimal-pivot strategy)."""
    A = [list(r) for r in M]
    m = len(A) if shape is None else shape[0]
    n = (len(A[0]) if A else 0) if shape is None else shape[1]
    if not A:
        A = [[0] * n for _ in range(m)]
    U, Ui, V, Vi = identity(m), identity(m), identity(n), identity(n)

    def row_add(i, j, c):          # row_i += c * row_j
        if not c:
            return
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui_[k] += c * Uj[k]
        for r in Ui:
            if r[i]:
                r[j] -= c * r[i]

    def col_add(i, j, c):          # col_i += c * col_j
        if not c:
            return
        for r in A:
            if r[j]:
                r[i] += c * r[j]
        for r in V:
            if r[j]:
                r[i] += c * r[j]
        Vi_, Vj = Vi[j], Vi[i]
        for k in range(n):
            if Vj[k]:
                Vi_[k] -= c * Vj[k]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    row_add(i, t, -q)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    col_add(j, t, -q)
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remainder into the pivot and retry
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            row_neg(t)
        diag.append(A[t][t])
        t += 1
    return SNF(diag, U, V, Ui, Vi, (m, n))


# ------------------------------------------------------------------ rationals

def rref(rows, ncols=None):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    R = [[Fraction(x) for x in r] for r in rows]
    ncols = ncols if ncols is not None else (len(R[0]) if R else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank_q(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace_q(rows, ncols):
    """Basis (list of column vectors) of {x : rows @ x = 0} over Q."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -R[r][f]
        basis.append(x)
    return basis


def solve_q(cols, b, nrows):
    """One x with sum_j x_j cols[j] = b over Q, or None if inconsistent."""
    n = len(cols)
    aug = [[cols[j][r] for j in range(n)] + [b[r]] for r in range(nrows)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = R[r][n]
    return x


def transpose(rows, ncols=None):
    ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return [[r[j] for r in rows] for j in range(ncols)]


def same_column_span(a, b, nrows):
    """True if the column vectors in ``a`` and ``b`` span the same Q-space."""
    ra = rank_q(a, nrows) if a else 0
    rb = rank_q(b, nrows) if b else 0
    rab = rank_q(list(a) + list(b), nrows) if (a or b) else 0
    return ra == rb == rab


def determinant(rows):
    n = len(rows)
    R = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            det = -det
        det *= R[c][c]
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] / R[c][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return det


# ------------------------------------------------------------------ reduction

@dataclass
class DegreeHomology:
    degree: int
    betti: int
    torsion: list
    representatives: list = field(default_factory=list)   # dicts cell -> coef


class ReducedComplex:
    """Homology of a based free chain complex, with cycle lifts and projections.

    ``cells[d]`` is the number of cells in degree d; ``boundary[d][j]`` maps a
    row index in degree d-1 to the coefficient of the j-th d-cell's boundary.
    After construction, ``homology[d]`` holds betti, torsion and integral
    representatives, and :meth:`coords` evaluates a d-chain on the free part
    of homology (a chain map to homology, so boundaries evaluate to zero).
    """

    def __init__(self, cells, boundary, track=True):
        self.top = len(cells) - 1
        self.counts = list(cells)
        self.offset = [0]
        for c in cells:
            self.offset.append(self.offset[-1] + c)
        self.track = track
        self._reduce(boundary)

    # ids are global integers; degree of id found via offsets
    def _deg(self, gid):
        lo, hi = 0, self.top
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.offset[mid] <= gid:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def _reduce(self, boundary):
        off = self.offset
        bnd, cob = {}, {}
        for d in range(self.top + 1):
            cols = boundary[d] if d < len(boundary) else []
            base, below = off[d], (off[d - 1] if d else 0)
            for j in range(self.counts[d]):
                gid = base + j
                col = {below + i: c for i, c in (cols[j].items() if j < len(cols) else ()) if c}
                bnd[gid] = col
                for r in col:
                    cob.setdefault(r, set()).add(gid)
        lift, proj, rev = {}, {}, {}
        track = self.track
        alive = set(bnd)
        for d in range(self.top, 0, -1):
            todo = [off[d] + j for j in range(self.counts[d])]
            progress = True
            while progress:
                progress = False
                for x in todo:
                    if x not in alive:
                        continue
                    bx = bnd[x]
                    best = None
                    for y, c in bx.items():
                        if c == 1 or c == -1:
                            sz = len(cob.get(y, ()))
                            if best is None or sz < best[0]:
                                best = (sz, y)
                    if best is None:
                        continue
                    y = best[1]
                    c = bx[y]
                    progress = True
                    rest = {u: a for u, a in bx.items() if u != y}
                    # boundaries of cells hitting y
                    for z in list(cob.get(y, ())):
                        if z == x:
                            continue
                        bz = bnd[z]
                        lam = bz[y] * c          # = bz[y] / c since c = +-1
                        del bz[y]
                        for u, a in rest.items():
                            v = bz.get(u, 0) - lam * a
                            if v:
                                if u not in bz:
                                    cob.setdefault(u, set()).add(z)
                                bz[u] = v
                            elif u in bz:
                                del bz[u]
                                cob[u].discard(z)
                        if track:
                            lz = lift.get(z)
                            if lz is None:
                                lz = lift[z] = {z: 1}
                            for u, a in lift.get(x, {x: 1}).items():
                                v = lz.get(u, 0) - lam * a
                                if v:
                                    lz[u] = v
                                else:
                                    lz.pop(u, None)
                    # remove x and y
                    for w in cob.pop(x, ()):
                        del bnd[w][x]
                    for u in bx:
                        cob[u].discard(x)
                    for u in bnd[y]:
                        cob[u].discard(y)
                    cob.pop(y, None)
                    del bnd[x], bnd[y]
                    alive.discard(x)
                    alive.discard(y)
                    lift.pop(x, None)
                    lift.pop(y, None)
                    if track:
                        sub = {u: -c * a for u, a in rest.items()}
                        for o in list(rev.pop(y, ())) + [y]:
                            po = proj.get(o)
                            if po is None:
                                po = proj[o] = {o: 1}
                            k = po.pop(y, 0)
                            if not k:
                                continue
                            for u, a in sub.items():
                                v = po.get(u, 0) + k * a
                                if v:
                                    po[u] = v
                                    if u != o:
                                        rev.setdefault(u, set()).add(o)
                                else:
                                    po.pop(u, None)
                        for o in list(rev.pop(x, ())) + [x]:
                            po = proj.get(o)
                            if po is None:
                                proj[o] = {}
                            else:
                                po.pop(x, None)
        self._small_homology(bnd, alive, lift, proj)

    def _small_homology(self, bnd, alive, lift, proj):
        off = self.offset
        crit = [sorted(g for g in alive if off[d] <= g < off[d + 1])
                for d in range(self.top + 1)]
        index = [{g: i for i, g in enumerate(cs)} for cs in crit]
        mats = [None]
        for d in range(1, self.top + 1):
            rows = [[0] * len(crit[d]) for _ in crit[d - 1]]
            for j, g in enumerate(crit[d]):
                for u, c in bnd[g].items():
                    rows[index[d - 1][u]][j] = c
            mats.append(rows)
        self.homology = []
        self._functional = []
        for d in range(self.top + 1):
            n = len(crit[d])
            # kernel of the outgoing map
            if d >= 1 and any(any(r) for r in mats[d]):
                s_out = smith_normal_form(mats[d], (len(crit[d - 1]), n))
                r_out = s_out.rank
                K = [row[r_out:] for row in s_out.V]          # n x z
                Kinv = s_out.V_inv[r_out:]                      # z x n
            else:
                K = identity(n)
                Kinv = identity(n)
            z = len(Kinv)
            # incoming map in kernel coordinates
            if d < self.top and any(any(r) for r in mats[d + 1]):
                Min = matmul(Kinv, mats[d + 1])
                s_in = smith_normal_form(Min, (z, len(crit[d + 1])))
                P, Pinv, diag = s_in.U, s_in.U_inv, s_in.diagonal
            else:
                P, Pinv, diag = identity(z), identity(z), []
            s = len(diag)
            torsion = [x for x in diag if x != 1]
            basis = matmul(K, Pinv)                              # n x z
            reps = []
            for col in range(s, z):
                vec = {}
                for i in range(n):
                    a = basis[i][col]
                    if a:
                        for u, b in lift.get(crit[d][i], {crit[d][i]: 1}).items():
                            v = vec.get(u - off[d], 0) + a * b
                            if v:
                                vec[u - off[d]] = v
                            else:
                                vec.pop(u - off[d], None)
                reps.append(vec)
            F = matmul(P, Kinv)[s:]                               # betti x n
            self.homology.append(DegreeHomology(d, z - s, torsion, reps))
            self._functional.append((F, index[d]))
        self._proj = proj
        self._cache = {}

    def betti(self, d):
        return self.homology[d].betti if 0 <= d <= self.top else 0

    def cell_coords(self, d, j):
        """Homology coordinates of the j-th d-cell, as a sparse dict."""
        key = (d, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not self.track:
            raise RuntimeError("complex was reduced without tracking")
        gid = self.offset[d] + j
        F, index = self._functional[d]
        po = self._proj.get(gid, {gid: 1})
        out = {}
        for u, a in po.items():
            i = index.get(u)
            if i is None:
                continue
            for r, row in enumerate(F):
                if row[i]:
                    out[r] = out.get(r, 0) + a * row[i]
        out = {r: v for r, v in out.items() if v}
        self._cache[key] = out
        return out

    def coords(self, d, chain):
        """Homology coordinates (list) of a d-chain given as {cell index: coef}."""
        vec = [0] * self.betti(d)
        for j, c in chain.items():
            for r, v in self.cell_coords(d, j).items():
                vec[r] += c * v
        return vec


def reduce_chain_complex(cells, boundary, track=True):
    return ReducedComplex(cells, boundary, track)
