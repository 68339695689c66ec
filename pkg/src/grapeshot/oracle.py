"""Brute-force homology of unordered configuration spaces of a graph.

The discretized configuration space of a subdivided graph is a cube
complex: a d-cube is a set of k closed cells (vertices and edges) with
pairwise disjoint closures, exactly d of which are edges.  With every edge
cut into k+1 segments this complex is homotopy equivalent to B_k, so its
homology is an independent check on the Swiatkowski pipeline.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph_core import build_graph
from .linalg import reduce_chain_complex
from .swiatkowski import SwiatkowskiComplex


def subdivide_for(g, k):
    """Cut every edge into k+1 segments."""
    n = k + 1
    vertices = list(g.vertices)
    edges = []
    for e in g.edge_ids:
        u, w = g.endpoints(e)
        path = [u] + [f"{e}#{j}" for j in range(1, n)] + [w]
        vertices += path[1:-1]
        for j in range(n):
            edges.append((f"{e}.{j}", path[j], path[j + 1]))
    return build_graph(vertices, edges)


@dataclass
class CubeComplex:
    k: int
    cell_names: list                  # vertex ids, then edge ids
    cubes: list                       # cubes[d] = sorted tuples of cell indices
    boundary: list = field(default_factory=list)   # boundary[d][j] = {row: coef}

    @property
    def counts(self):
        return [len(c) for c in self.cubes]


def discretized_config_complex(g, k):
    """Cube complex of k-point configurations on an already subdivided graph."""
    verts = list(g.vertices)
    vid = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    closure = [frozenset([i]) for i in range(nv)]
    ends = []
    for e in g.edge_ids:
        u, w = g.endpoints(e)
        closure.append(frozenset([vid[u], vid[w]]))
        ends.append((vid[u], vid[w]))
    ncell = len(closure)

    by_dim = {}

    def rec(start, chosen, used):
        if len(chosen) == k:
            d = sum(1 for c in chosen if c >= nv)
            by_dim.setdefault(d, []).append(tuple(chosen))
            return
        for c in range(start, ncell):
            if closure[c] & used:
                continue
            chosen.append(c)
            rec(c + 1, chosen, used | closure[c])
            chosen.pop()

    rec(0, [], frozenset())
    top = max(by_dim) if by_dim else 0
    cubes = [sorted(by_dim.get(d, [])) for d in range(top + 1)]
    index = [{c: j for j, c in enumerate(cs)} for cs in cubes]
    boundary = [[{} for _ in cubes[0]]]
    for d in range(1, top + 1):
        cols = []
        for cube in cubes[d]:
            col = {}
            edges_in = [c for c in cube if c >= nv]
            for pos, c in enumerate(edges_in):
                sign = -1 if pos % 2 else 1
                tail, head = ends[c - nv]
                rest = [x for x in cube if x != c]
                for end, s in ((head, sign), (tail, -sign)):
                    face = tuple(sorted(rest + [end]))
                    row = index[d - 1][face]
                    col[row] = col.get(row, 0) + s
            cols.append({r: v for r, v in col.items() if v})
        boundary.append(cols)
    names = verts + list(g.edge_ids)
    return CubeComplex(k, names, cubes, boundary)


def boundary_squared_zero(cc):
    for d in range(2, len(cc.cubes)):
        for col in cc.boundary[d]:
            acc = {}
            for r, c in col.items():
                for r2, c2 in cc.boundary[d - 1][r].items():
                    acc[r2] = acc.get(r2, 0) + c * c2
            if any(acc.values()):
                return False
    return True


def cube_betti(cc):
    """[(betti, torsion)] per dimension, over the integers."""
    red = reduce_chain_complex(cc.counts, cc.boundary, track=False)
    return [(red.homology[d].betti, list(red.homology[d].torsion))
            for d in range(len(cc.cubes))]


def oracle_homology(g, k):
    return cube_betti(discretized_config_complex(subdivide_for(g, k), k))


def cross_check(g, k):
    """Compare cube-complex and Swiatkowski homology at weight k in every degree."""
    cube = oracle_homology(g, k)
    cx = SwiatkowskiComplex(g)
    top = max(len(cube) - 1, cx.max_degree)
    rows = []
    ok = True
    for d in range(top + 1):
        ob, ot = cube[d] if d < len(cube) else (0, [])
        h = cx.homology(d, k) if d <= cx.max_degree else None
        sb, st = (h.betti, list(h.torsion)) if h else (0, [])
        match = ob == sb and sorted(ot) == sorted(st)
        ok = ok and match
        rows.append({"degree": d, "oracle": [ob, ot], "swiatkowski": [sb, st], "match": match})
    return {"weight": k, "status": "pass" if ok else "fail", "degrees": rows}
