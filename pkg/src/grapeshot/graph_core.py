"""Finite multigraphs with half-edges and rotation systems.

A half-edge is named ``"<edge>:<side>"`` where side 0 sits at the first
listed endpoint and side 1 at the second.  A loop therefore has both of its
half-edges at the same vertex.

>>> g = build_graph(["v", "u"], [("e1", "v", "u"), ("e2", "v", "v")])
>>> [h.id for h in g.half_edges_at("v")]
['e1:0', 'e2:0', 'e2:1']
>>> g.valence("v"), g.essential_vertices()
(3, ('v',))
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import GraphError, NoEssentialVertex, NotAGrape


@dataclass(frozen=True)
class HalfEdge:
    id: str
    edge: str
    vertex: str
    side: int


def half_edge_id(edge, side):
    return f"{edge}:{side}"


class Graph:
    """Immutable multigraph: ordered vertices, ordered edges, rotation."""

    def __init__(self, vertices, edges, rotation=None):
        self.vertices = tuple(str(v) for v in vertices)
        self.edges = tuple((str(e), str(u), str(w)) for e, u, w in edges)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.edge_index = {e: i for i, e in enumerate(ids)}
        self._ends = {}
        self.half_edges = {}
        incident = {v: [] for v in self.vertices}
        for e, u, w in self.edges:
            for side, x in ((0, u), (1, w)):
                if x not in self.vertex_index:
                    raise GraphError(f"edge {e!r} names undeclared vertex {x!r}")
                h = HalfEdge(half_edge_id(e, side), e, x, side)
                self.half_edges[h.id] = h
                incident[x].append(h.id)
            self._ends[e] = (u, w)
        if rotation is None:
            rot = incident
        else:
            rot = {}
            for v in self.vertices:
                given = [str(h) for h in rotation.get(v, incident[v])]
                if sorted(given) != sorted(incident[v]):
                    raise GraphError(
                        f"rotation at {v!r} must list exactly {sorted(incident[v])}")
                rot[v] = given
            extra = set(map(str, rotation)) - set(self.vertices)
            if extra:
                raise GraphError(f"rotation names unknown vertices {sorted(extra)}")
        self.rotation = MappingProxyType({v: tuple(rot[v]) for v in self.vertices})

    # basic queries
    @property
    def edge_ids(self):
        return tuple(e for e, _, _ in self.edges)

    def endpoints(self, e):
        return self._ends[e]

    def is_loop(self, e):
        u, w = self._ends[e]
        return u == w

    def other_end(self, h):
        """Half-edge at the opposite end of the edge of ``h``."""
        he = self.half_edges[h]
        return half_edge_id(he.edge, 1 - he.side)

    def half_edges_at(self, v):
        return tuple(self.half_edges[h] for h in self.rotation[v])

    def valence(self, v):
        return len(self.rotation[v])

    def essential_vertices(self):
        return tuple(v for v in self.vertices if self.valence(v) >= 3)

    def leaves(self):
        return tuple(v for v in self.vertices if self.valence(v) == 1)

    def loop_count(self, v):
        return sum(1 for e, u, w in self.edges if u == w == v)

    def neighbours(self, v):
        out = []
        for h in self.rotation[v]:
            he = self.half_edges[h]
            out.append((he.edge, self.half_edges[self.other_end(h)].vertex))
        return out

    def first_betti(self):
        return len(self.edges) - len(self.vertices) + len(self.components())

    def components(self):
        seen, comps = set(), []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for _, y in self.neighbours(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp, key=self.vertex_index.get))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    # serialisation
    def to_dict(self, root=None):
        out = {
            "vertices": list(self.vertices),
            "edges": [list(t) for t in self.edges],
            "rotation": {v: list(r) for v, r in self.rotation.items()},
        }
        if root is not None:
            out["root"] = list(root)
        return out

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and dict(self.rotation) == dict(other.rotation))

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)}, edges={[list(e) for e in self.edges]})"


def build_graph(vertices, edges, rotation=None):
    """Validate and build a :class:`Graph`; rotation defaults to edge order."""
    return Graph(vertices, edges, rotation)


def graph_from_dict(data):
    """Parse the JSON graph format.  Returns ``(graph, root or None)``."""
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = []
        for item in data["edges"]:
            if len(item) != 3:
                raise GraphError(f"edge entry {item!r} must be [id, u, v]")
            edges.append(tuple(str(x) for x in item))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"missing or malformed field: {exc}") from None
    rotation = data.get("rotation")
    if rotation is not None:
        rotation = {str(v): [str(h) for h in hs] for v, hs in rotation.items()}
    g = Graph(vertices, edges, rotation)
    root = data.get("root")
    if root is not None:
        if len(root) != 2:
            raise GraphError("root must be [vertex, edge]")
        root = (str(root[0]), str(root[1]))
    return g, root


def load_graph(path):
    """Read a graph JSON file; JSON syntax errors surface as GraphError."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return graph_from_dict(data)


# ---------------------------------------------------------------- families

def elementary_grape(l, m):
    """Gamma_{l,m}: one vertex ``v`` with ``m`` leaf edges then ``l`` loops."""
    vertices = ["v"] + [f"u{i}" for i in range(1, m + 1)]
    edges = [(f"e{i}", "v", f"u{i}") for i in range(1, m + 1)]
    edges += [(f"e{m + j}", "v", "v") for j in range(1, l + 1)]
    return Graph(vertices, edges)


def interval_graph():
    return Graph(["a", "b"], [("e", "a", "b")])


def circle_graph():
    return Graph(["v"], [("e", "v", "v")])


def theta_graph():
    return Graph(["a", "b"], [("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])


def star_tree(arms):
    return elementary_grape(0, arms)


# ---------------------------------------------------------------- smoothing

def smooth_bivalent(g):
    """Remove every valence-2 vertex by merging its two edges.

    The merged edge keeps the id of whichever of the two comes first in edge
    order.  A vertex whose two half-edges belong to one loop is already
    minimal and is kept, so a cycle of bivalent vertices ends as one loop.
    """
    ends = {e: [u, w] for e, u, w in g.edges}
    order = list(g.edge_ids)
    rot = {v: [(g.half_edges[h].edge, g.half_edges[h].side) for h in g.rotation[v]]
           for v in g.vertices}
    vertices = list(g.vertices)
    rank = {e: i for i, e in enumerate(order)}
    changed = True
    while changed:
        changed = False
        for w in vertices:
            hs = rot[w]
            if len(hs) != 2 or hs[0][0] == hs[1][0]:
                continue
            (e, s), (f, t) = sorted(hs, key=lambda x: rank[x[0]])
            b = ends[f][1 - t]
            # edge e now runs from its far end to the far end of f
            ends[e][s] = b
            rot[b] = [(e, s) if x == (f, 1 - t) else x for x in rot[b]]
            del ends[f], rot[w]
            order.remove(f)
            vertices.remove(w)
            changed = True
            break
    edges = [(e, ends[e][0], ends[e][1]) for e in order]
    rotation = {v: [half_edge_id(e, s) for e, s in rot[v]] for v in vertices}
    return Graph(vertices, edges, rotation)


def has_bivalent_vertex(g):
    """True when some valence-2 vertex is not a lone loop vertex."""
    for v in g.vertices:
        hs = g.rotation[v]
        if len(hs) == 2 and g.half_edges[hs[0]].edge != g.half_edges[hs[1]].edge:
            return True
    return False


# ---------------------------------------------------------------- cycles

def circumference(g):
    """Largest number of edges in a simple cycle (loops count 1, forests 0)."""
    n = len(g.vertices)
    adj = [[] for _ in range(n)]
    best = 0
    for idx, (e, u, w) in enumerate(g.edges):
        a, b = g.vertex_index[u], g.vertex_index[w]
        if a == b:
            best = 1
            continue
        adj[a].append((idx, b))
        adj[b].append((idx, a))

    def walk(s, u, length, visited, last):
        nonlocal best
        for e, w in adj[u]:
            if e == last:
                continue
            if w == s:
                best = max(best, length + 1)
            elif w > s and w not in visited:
                visited.add(w)
                walk(s, w, length + 1, visited, e)
                visited.discard(w)

    for s in range(n):
        walk(s, s, 0, {s}, None)
    return best


def topological_circumference(g):
    return circumference(smooth_bivalent(g))


# ---------------------------------------------------------------- grapes

@dataclass(frozen=True)
class LocalLabels:
    """Labels at one essential vertex, all indices 1-based.

    ``half_edges[i-1]`` is the graph half-edge playing h_i, ``edge_of[i-1]``
    the local edge index of h_i, ``edges[j-1]`` the graph edge playing e_j,
    and ``loops[r-1]`` the index i of the first half-edge of loop r.
    """
    vertex: str
    half_edges: tuple
    second: tuple
    edge_of: tuple
    edges: tuple
    loops: tuple

    @property
    def valence(self):
        return len(self.half_edges)

    def is_first(self, i):
        return not self.second[i - 1]

    def graph_edge(self, i):
        """Graph edge of the half-edge h_i."""
        return self.edges[self.edge_of[i - 1] - 1]


@dataclass(frozen=True)
class GrapesStructure:
    graph: Graph
    stem: Graph
    loops: dict
    root: tuple
    labels: dict
    sporadic: bool
    parent_edge: dict
    rotation_fixes: tuple = field(default=())

    @property
    def essential(self):
        return tuple(self.labels)

    def stem_valence(self, v):
        return self.stem.valence(v)

    def edge_map(self, v):
        """Local edge label index -> graph edge id at vertex v."""
        return {j + 1: e for j, e in enumerate(self.labels[v].edges)}

    def reassemble(self):
        """Stem plus ``loops[v]`` loops at each vertex, as a graph."""
        loop_edges = [t for t in self.graph.edges if t[1] == t[2]]
        per_vertex = {v: 0 for v in self.graph.vertices}
        for _, u, _ in loop_edges:
            per_vertex[u] += 1
        assert per_vertex == {v: self.loops.get(v, 0) for v in self.graph.vertices}
        return Graph(self.stem.vertices, list(self.stem.edges) + loop_edges)


def _pair_loops(seq, g):
    """Make the two halves of every loop adjacent, moving second halves forward."""
    out, placed = [], set()
    for h in seq:
        if h in placed:
            continue
        out.append(h)
        placed.add(h)
        he = g.half_edges[h]
        if g.is_loop(he.edge):
            mate = g.other_end(h)
            out.append(mate)
            placed.add(mate)
    return out


def _label_vertex(g, v, start):
    rot = list(g.rotation[v])
    i0 = rot.index(start)
    seq = rot[i0:] + rot[:i0]
    paired = _pair_loops(seq, g)
    fixed = paired != seq
    second, edge_of, edges, loops = [], [], [], []
    for pos, h in enumerate(paired):
        e = g.half_edges[h].edge
        is_second = pos > 0 and g.half_edges[paired[pos - 1]].edge == e
        second.append(is_second)
        if is_second:
            edge_of.append(edge_of[-1])
        else:
            edges.append(e)
            edge_of.append(len(edges))
            if g.is_loop(e):
                loops.append(pos + 1)
    lab = LocalLabels(v, tuple(paired), tuple(second), tuple(edge_of),
                      tuple(edges), tuple(loops))
    return lab, fixed


def _sporadic_start(g, v):
    rot = list(g.rotation[v])
    n = len(rot)
    for s in range(n):
        seq = rot[s:] + rot[:s]
        if all(g.half_edges[seq[2 * i]].edge == g.half_edges[seq[2 * i + 1]].edge
               for i in range(n // 2)):
            return seq[0]
    return rot[0]


def decompose_grapes(g, root=None):
    """Stem tree, loop counts, root and local labels of a bunch of grapes.

    ``g`` must be connected with no bivalent vertex (see :func:`smooth_bivalent`).
    """
    if has_bivalent_vertex(g):
        raise GraphError("graph has bivalent vertices; smooth it first")
    if not g.is_connected():
        raise NotAGrape("graph is not connected")
    if circumference(g) >= 2:
        raise NotAGrape("topological circumference is at least 2")
    essential = g.essential_vertices()
    if not essential:
        raise NoEssentialVertex("graph has no essential vertex")
    loops = {v: g.loop_count(v) for v in g.vertices}
    stem_edges = [t for t in g.edges if t[1] != t[2]]
    stem_rot = {v: [h for h in g.rotation[v]
                    if not g.is_loop(g.half_edges[h].edge)] for v in g.vertices}
    stem = Graph(g.vertices, stem_edges, stem_rot)
    sporadic = not stem_edges
    fixes = []
    labels = {}
    if sporadic:
        (v,) = essential
        start = _sporadic_start(g, v)
        lab, fixed = _label_vertex(g, v, start)
        if fixed:
            fixes.append(v)
        e0 = lab.edges[0]
        if root is not None:
            if root[0] != v or not g.is_loop(root[1]) or root[1] not in g.edge_index:
                raise GraphError(f"root {root!r} must be the vertex and one of its loops")
            e0 = root[1]
            # restart the labels at the chosen loop
            for h in lab.half_edges:
                if g.half_edges[h].edge == e0:
                    lab, fixed = _label_vertex(g, v, h)
                    break
        labels[v] = lab
        return GrapesStructure(g, stem, loops, (v, e0), labels, True, {v: e0},
                               tuple(fixes))

    if root is None:
        root = _default_root(g, stem)
    v0, e0 = root
    if e0 not in g.edge_index or g.is_loop(e0) or v0 not in g.endpoints(e0):
        raise GraphError(f"root {root!r} must be a stem edge and one of its endpoints")
    parent = {v0: e0}
    queue = [v0]
    while queue:
        x = queue.pop(0)
        for h in stem.rotation[x]:
            e = stem.half_edges[h].edge
            y = stem.half_edges[stem.other_end(h)].vertex
            if y not in parent:
                parent[y] = e
                queue.append(y)
    for v in essential:
        pe = parent[v]
        start = next(h for h in g.rotation[v] if g.half_edges[h].edge == pe)
        lab, fixed = _label_vertex(g, v, start)
        if fixed:
            fixes.append(v)
        labels[v] = lab
    return GrapesStructure(g, stem, loops, (v0, e0), labels, False, parent,
                           tuple(fixes))


def _default_root(g, stem):
    for key in (g.valence, stem.valence):
        for e, u, w in stem.edges:
            for x in (u, w):
                if key(x) == 1:
                    return (x, e)
    raise NotAGrape("stem has no leaf")  # unreachable for a finite tree


def fourteen_vertex_grape():
    """A 14-vertex bunch of grapes: a stem tree with loops hung on seven of its vertices."""
    stem = [(1, 0), (0, 13), (0, 2), (0, 3), (3, 7), (3, 4), (4, 5), (4, 6),
            (7, 12), (7, 11), (7, 8), (8, 10), (8, 9)]
    loops = {13: 3, 1: 1, 2: 1, 7: 1, 9: 1, 11: 1, 12: 1}
    edges = [(f"s{a}_{b}", str(a), str(b)) for a, b in stem]
    for v, n in sorted(loops.items()):
        edges += [(f"l{v}_{j}", str(v), str(v)) for j in range(1, n + 1)]
    return Graph([str(i) for i in range(14)], edges)
