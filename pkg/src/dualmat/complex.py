"""Directed 2-dimensional walk-complexes.

A complex has vertices, directed edges and faces; a face is a closed walk
given as a sequence of ``(edge, sign)`` traversals, ``+1`` meaning the edge
is run from tail to head. Simplicial complexes are the special case where
every face is a triangle.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import exact

FORMAT_TAG = "sc2/1"


class ComplexError(ValueError):
    """Invalid complex data; ``ident`` names the offending cell when there is one."""

    def __init__(self, message: str, ident: str | None = None):
        super().__init__(message if ident is None else f"{message}: {ident}")
        self.ident = ident


Traversal = tuple[str, int]


@dataclass(frozen=True)
class Complex2:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    faces: tuple[tuple[str, tuple[Traversal, ...]], ...]
    _edge: dict = field(init=False, repr=False, compare=False)
    _face: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple((str(e), str(t), str(h)) for e, t, h in self.edges))
        object.__setattr__(
            self,
            "faces",
            tuple((str(f), tuple((str(e), int(s)) for e, s in walk)) for f, walk in self.faces),
        )
        object.__setattr__(self, "_edge", {e: (t, h) for e, t, h in self.edges})
        object.__setattr__(self, "_face", {f: w for f, w in self.faces})
        self._validate()

    # -- validation ---------------------------------------------------------
    def _validate(self) -> None:
        vset = set()
        for v in self.vertices:
            if v in vset:
                raise ComplexError("duplicate vertex id", v)
            vset.add(v)
        if len(self._edge) != len(self.edges):
            seen = set()
            for e, _, _ in self.edges:
                if e in seen:
                    raise ComplexError("duplicate edge id", e)
                seen.add(e)
        for e, t, h in self.edges:
            for x in (t, h):
                if x not in vset:
                    raise ComplexError(f"edge {e} references unknown vertex", x)
        if len(self._face) != len(self.faces):
            seen = set()
            for f, _ in self.faces:
                if f in seen:
                    raise ComplexError("duplicate face id", f)
                seen.add(f)
        used = set()
        for f, walk in self.faces:
            if not walk:
                raise ComplexError("empty face walk", f)
            for e, s in walk:
                if e not in self._edge:
                    raise ComplexError(f"face {f} references unknown edge", e)
                if s not in (1, -1):
                    raise ComplexError(f"face {f} has a sign other than +-1", f)
                used.add(e)
            for i, t in enumerate(walk):
                nxt = walk[(i + 1) % len(walk)]
                if self.end(t) != self.start(nxt):
                    raise ComplexError("non-closed walk", f)
        for e, _, _ in self.edges:
            if e not in used:
                raise ComplexError("edge with no incident face", e)

    # -- basic accessors ----------------------------------------------------
    def ends(self, e: str) -> tuple[str, str]:
        return self._edge[e]

    def walk(self, f: str) -> tuple[Traversal, ...]:
        return self._face[f]

    def start(self, t: Traversal) -> str:
        tail, head = self._edge[t[0]]
        return tail if t[1] > 0 else head

    def end(self, t: Traversal) -> str:
        tail, head = self._edge[t[0]]
        return head if t[1] > 0 else tail

    @property
    def edge_ids(self) -> list[str]:
        return [e for e, _, _ in self.edges]

    @property
    def face_ids(self) -> list[str]:
        return [f for f, _ in self.faces]

    def is_loop_edge(self, e: str) -> bool:
        t, h = self._edge[e]
        return t == h

    @property
    def simplicial_flag(self) -> bool:
        edge_sets = set()
        for _, walk in self.faces:
            if len(walk) != 3:
                return False
            es = frozenset(e for e, _ in walk)
            vs = {self.start(t) for t in walk}
            if len(es) != 3 or len(vs) != 3:
                return False
            if es in edge_sets:
                return False
            edge_sets.add(es)
        return True

    def traversals(self, e: str) -> list[tuple[str, int]]:
        """Traversals of edge ``e`` as ``(face, position)`` pairs in declared order."""
        return self._traversal_index()[e]

    def _traversal_index(self) -> dict:
        cached = self.__dict__.get("_trav")
        if cached is None:
            cached = defaultdict(list)
            for f, walk in self.faces:
                for i, (e, _) in enumerate(walk):
                    cached[e].append((f, i))
            cached = dict(cached)
            object.__setattr__(self, "_trav", cached)
        return cached

    def faces_at_edge(self, e: str) -> list[str]:
        return list(dict.fromkeys(f for f, _ in self.traversals(e)))

    def edges_at_vertex(self, v: str) -> list[str]:
        return [e for e, t, h in self.edges if v in (t, h)]

    def faces_at_vertex(self, v: str) -> list[str]:
        out = []
        for f, walk in self.faces:
            if any(self.start(t) == v for t in walk):
                out.append(f)
        return out

    def corners(self, v: str) -> list[tuple[str, int]]:
        """Face-corners at ``v``: ``(f, i)`` is the corner between traversals i and i+1."""
        out = []
        for f, walk in self.faces:
            for i, t in enumerate(walk):
                if self.end(t) == v:
                    out.append((f, i))
        return out

    def __len__(self) -> int:
        return len(self.faces)


# -- (de)serialisation ---------------------------------------------------------

def complex_to_dict(c: Complex2) -> dict:
    return {
        "format": FORMAT_TAG,
        "vertices": list(c.vertices),
        "edges": [[e, t, h] for e, t, h in c.edges],
        "faces": [[f, [[e, s] for e, s in walk]] for f, walk in c.faces],
    }


def serialize_complex(c: Complex2) -> str:
    return json.dumps(complex_to_dict(c), sort_keys=True, indent=1)


def complex_from_dict(data: Mapping) -> Complex2:
    if not isinstance(data, Mapping):
        raise ComplexError("complex JSON must be an object")
    fmt = data.get("format", FORMAT_TAG)
    if fmt != FORMAT_TAG:
        raise ComplexError("unsupported format tag", str(fmt))
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [(str(e), str(t), str(h)) for e, t, h in data["edges"]]
        faces = [(str(f), [(str(e), int(s)) for e, s in walk]) for f, walk in data["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"malformed complex JSON ({exc})") from exc
    return Complex2(vertices, edges, faces)


def parse_complex(text: str) -> Complex2:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"malformed syntax: {exc}") from exc
    return complex_from_dict(data)


# -- link graphs --------------------------------------------------------------

@dataclass(frozen=True)
class LinkGraph:
    owner: str
    nodes: tuple[str, ...]
    # link id (face, corner index) -> (node entered by, node left by)
    links: tuple[tuple[tuple[str, int], str, str], ...]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for key, a, b in self.links:
            g.add_edge(a, b, key=key)
        return g


def link_graph(c: Complex2, v: str) -> LinkGraph:
    if v not in c.vertices:
        raise ComplexError("unknown vertex id", v)
    nodes = tuple(c.edges_at_vertex(v))
    links = []
    for f, i in c.corners(v):
        walk = c.walk(f)
        a = walk[i][0]
        b = walk[(i + 1) % len(walk)][0]
        links.append(((f, i), a, b))
    return LinkGraph(v, nodes, tuple(links))


# -- incidence and homology -------------------------------------------------------

@dataclass(frozen=True)
class IncidenceMatrix:
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def row(self, e: str) -> tuple[int, ...]:
        return self.rows[self.row_ids.index(e)]


def incidence_matrix(c: Complex2) -> IncidenceMatrix:
    eidx = {e: i for i, e in enumerate(c.edge_ids)}
    rows = [[0] * len(c.faces) for _ in c.edges]
    for j, (_, walk) in enumerate(c.faces):
        for e, s in walk:
            rows[eidx[e]][j] += s
    return IncidenceMatrix(tuple(c.edge_ids), tuple(c.face_ids), tuple(tuple(r) for r in rows))


def vertex_edge_matrix(c: Complex2) -> list[list[int]]:
    vidx = {v: i for i, v in enumerate(c.vertices)}
    rows = [[0] * len(c.edges) for _ in c.vertices]
    for j, (_, t, h) in enumerate(c.edges):
        rows[vidx[h]][j] += 1
        rows[vidx[t]][j] -= 1
    return rows


def homology_check(c: Complex2) -> dict:
    """First homology of the complex over Z."""
    d1 = vertex_edge_matrix(c)
    d2 = [list(r) for r in incidence_matrix(c).rows]
    rank1 = exact.rank(d1, exact.Q) if c.edges else 0
    inv2 = exact.smith_invariants(d2) if c.edges and c.faces else []
    free = len(c.edges) - rank1 - len(inv2)
    torsion = [d for d in inv2 if d > 1]
    return {"h1_free_rank": free, "h1_torsion": torsion, "nullhomologous": free == 0 and not torsion}


def cycles_generated_mod_p(c: Complex2, p: int) -> bool:
    """Do the face boundaries generate the cycle space over F_p?"""
    d1 = vertex_edge_matrix(c)
    d2 = [list(r) for r in incidence_matrix(c).rows]
    z = len(c.edges) - (exact.rank(d1, p) if c.edges else 0)
    b = exact.rank(d2, p) if c.faces else 0
    return z == b


# -- local connectivity -----------------------------------------------------------

def graph_connectivity_flags(g: nx.MultiGraph) -> tuple[bool, bool, bool]:
    """(connected, 2-connected, 3-connected) for a multigraph, loops ignored."""
    simple = nx.Graph()
    simple.add_nodes_from(g.nodes)
    simple.add_edges_from((a, b) for a, b in g.edges() if a != b)
    n = simple.number_of_nodes()
    if n == 0:
        return False, False, False
    connected = nx.is_connected(simple)
    if not connected:
        return False, False, False
    two = n <= 2 or not any(True for _ in nx.articulation_points(simple))
    if n <= 3:
        three = simple.number_of_edges() == n * (n - 1) // 2
    else:
        three = nx.node_connectivity(simple) >= 3
    return connected, two, two and three


def local_connectivity_profile(c: Complex2) -> dict:
    per_vertex = {}
    for v in c.vertices:
        conn, two, three = graph_connectivity_flags(link_graph(c, v).to_networkx())
        per_vertex[v] = {"connected": conn, "2-connected": two, "3-connected": three}
    # a vertex with no incident edge has an empty link; it does not count against the flags
    live = [r for v, r in per_vertex.items() if c.edges_at_vertex(v)]
    return {
        "vertices": per_vertex,
        "locally_connected": all(r["connected"] for r in live),
        "locally_2connected": all(r["2-connected"] for r in live),
        "locally_3connected": all(r["3-connected"] for r in live),
    }


# -- constructions ------------------------------------------------------------------

def identify_cells(
    c: Complex2,
    vertex_groups: Iterable[Sequence[str]] = (),
    edge_groups: Iterable[Sequence[str]] = (),
) -> Complex2:
    """Quotient complex: each group is merged onto its first member."""
    vmap = {v: v for v in c.vertices}
    for group in vertex_groups:
        group = list(group)
        for v in group:
            if v not in vmap:
                raise ComplexError("unknown vertex id", v)
        root = vmap[group[0]]
        for v in group[1:]:
            old = vmap[v]
            for k, val in vmap.items():
                if val == old:
                    vmap[k] = root
    # edge -> (root edge, sign of the edge relative to the root)
    emap: dict[str, tuple[str, int]] = {e: (e, 1) for e in c.edge_ids}
    for group in edge_groups:
        group = list(group)
        for e in group:
            if e not in emap:
                raise ComplexError("unknown edge id", e)
        rep = group[0]
        rt, rh = (vmap[x] for x in c.ends(rep))
        for e in group[1:]:
            t, h = (vmap[x] for x in c.ends(e))
            if (t, h) == (rt, rh):
                sign = 1
            elif (h, t) == (rt, rh):
                sign = -1
            else:
                raise ComplexError("inconsistent edge identification", e)
            rep_root, rep_s = emap[rep]
            e_root, e_s = emap[e]
            if e_root == rep_root:
                if e_s != rep_s * sign:
                    raise ComplexError("inconsistent edge identification", e)
                continue
            rel = rep_s * sign * e_s
            for k, (root, s) in list(emap.items()):
                if root == e_root:
                    emap[k] = (rep_root, s * rel)
    vertices = [v for v in c.vertices if vmap[v] == v]
    edges = [(e, vmap[t], vmap[h]) for e, t, h in c.edges if emap[e] == (e, 1)]
    faces = []
    for f, walk in c.faces:
        new = []
        for e, s in walk:
            target, sign = emap[e]
            new.append((target, s * sign))
        faces.append((f, new))
    return Complex2(vertices, edges, faces)


def barycentric_simplicialization(c: Complex2) -> Complex2:
    """Cone every face walk from a fresh centre vertex.

    Face ``f`` with a walk of length k becomes triangles ``f:0 .. f:k-1``;
    spoke ``f:s<i>`` runs from the centre to the start of traversal i.
    """
    vertices = list(c.vertices)
    edges = list(c.edges)
    faces = []
    for f, walk in c.faces:
        centre = f"{f}:c"
        vertices.append(centre)
        k = len(walk)
        for i, t in enumerate(walk):
            edges.append((f"{f}:s{i}", centre, c.start(t)))
        for i, t in enumerate(walk):
            j = (i + 1) % k
            faces.append((f"{f}:{i}", [(f"{f}:s{i}", 1), t, (f"{f}:s{j}", -1)]))
    return Complex2(vertices, edges, faces)


def barycentric_grouping(c: Complex2) -> dict[str, list[str]]:
    """Original face id -> ids of the triangles replacing it."""
    return {f: [f"{f}:{i}" for i in range(len(walk))] for f, walk in c.faces}


def reoriented(c: Complex2, flip_edges: Iterable[str] = (), flip_faces: Iterable[str] = ()) -> Complex2:
    """Same complex with some edge directions and face orientations reversed."""
    fe, ff = set(flip_edges), set(flip_faces)
    edges = [(e, h, t) if e in fe else (e, t, h) for e, t, h in c.edges]
    faces = []
    for f, walk in c.faces:
        w = [(e, -s if e in fe else s) for e, s in walk]
        if f in ff:
            w = [(e, -s) for e, s in reversed(w)]
        faces.append((f, w))
    return Complex2(c.vertices, edges, faces)
