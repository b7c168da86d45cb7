"""Rotation systems, dual graphs and the two embeddability procedures.

A rotation system gives, for every edge, a cyclic order of its traversals.
At a vertex ``v`` it induces a rotation of the link graph L(v): the darts of
link node ``e`` are the traversals of ``e``, ordered by sigma(e) when ``v`` is
the tail of ``e`` and by its reverse when ``v`` is the head.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import exact
from .complex import Complex2, ComplexError, LinkGraph, Traversal, homology_check, incidence_matrix, link_graph
from .matroid import Matroid, dual_matroid, is_local, matroid_equals
from .minors import excluded_minor_scan, shrink_to_excluded_minor
from .realize import (
    GraphRealization,
    cycle_matroid,
    edge_set_connected,
    iter_realizations,
    realize_graph,
)
from .splitting import split_complex

EMBEDDABLE = "EMBEDDABLE"
NOT_EMBEDDABLE = "NOT_EMBEDDABLE"
INCONCLUSIVE = "INCONCLUSIVE"

Dart = tuple[tuple[str, int], int]  # (link key, 0 for the entering end / 1 for the leaving end)


class OrientationError(ValueError):
    pass


class RotationError(ValueError):
    def __init__(self, message: str, ident: str | None = None):
        super().__init__(message if ident is None else f"{message}: {ident}")
        self.ident = ident


class UnsupportedComplex(ValueError):
    """The construction does not cover this walk-complex (faces meeting an edge repeatedly)."""


# -- data types ------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationSystem:
    sigma: dict[str, tuple[Traversal, ...]]

    def to_dict(self) -> dict:
        return {"rotation": {e: [list(t) for t in order] for e, order in self.sigma.items()}}

    @classmethod
    def from_dict(cls, data: Mapping) -> "RotationSystem":
        rot = data["rotation"] if "rotation" in data else data
        return cls({e: tuple((str(f), int(i)) for f, i in order) for e, order in rot.items()})

    def validate(self, c: Complex2) -> None:
        for e in c.edge_ids:
            if e not in self.sigma:
                raise RotationError("edge missing from rotation system", e)
            if sorted(self.sigma[e]) != sorted(c.traversals(e)):
                raise RotationError("rotation does not list the traversals of", e)
        extra = set(self.sigma) - set(c.edge_ids)
        if extra:
            raise RotationError("rotation names unknown edge", sorted(extra)[0])


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (face, tail side, head side)

    def as_realization(self) -> GraphRealization:
        return GraphRealization(self.vertices, self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"face": f, "endpoints": [a, b]} for f, a, b in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DualGraph":
        return cls(tuple(data["vertices"]), tuple((d["face"], *d["endpoints"]) for d in data["edges"]))


@dataclass(frozen=True)
class Constraint:
    source: str  # "vertex:<id>" or "edge:<id>"
    faces: tuple[str, ...]
    trivial: bool = False


@dataclass
class Verdict:
    status: str
    reason: str = ""
    rotation: RotationSystem | None = None
    dual_graph: DualGraph | None = None
    witness: dict | None = None
    flags: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"status": self.status, "reason": self.reason, "flags": list(self.flags)}
        if self.rotation is not None:
            out["rotation"] = self.rotation.to_dict()["rotation"]
        if self.dual_graph is not None:
            out["dual_graph"] = self.dual_graph.to_dict()
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


# -- 3-flow orientations -------------------------------------------------------------------

def blocks(g: GraphRealization) -> list[list[str]]:
    """Element sets of the 2-connected blocks; every loop is a block of its own."""
    simple = nx.Graph()
    pair_block: dict[frozenset, int] = {}
    out: list[list[str]] = []
    for e, u, v in g.edges:
        if u != v:
            simple.add_edge(u, v)
    for i, comp in enumerate(nx.biconnected_component_edges(simple)):
        for a, b in comp:
            pair_block[frozenset((a, b))] = i
    grouped: dict[int, list[str]] = {}
    for e, u, v in g.edges:
        if u == v:
            out.append([e])
        else:
            grouped.setdefault(pair_block[frozenset((u, v))], []).append(e)
    return [grouped[k] for k in sorted(grouped)] + out


def orient_for_3flows(
    g: GraphRealization,
    vectors: Sequence[Sequence[int]],
    ground: Sequence[str],
) -> dict[str, tuple[str, str]]:
    """Orient ``g`` so that every vector (indexed by ``ground``) is a 3-flow.

    Per block, the star of each vertex is a bond; the vector orthogonal to all
    inputs with exactly that support is, up to sign, the signed star of the
    vertex in the wanted orientation. Signs are propagated along a spanning
    tree of the block and checked on the remaining edges.
    """
    idx = {x: i for i, x in enumerate(ground)}
    rows = [[int(x) % 3 for x in r] for r in vectors if any(int(x) % 3 for x in r)]
    ends = g.endpoints
    orient: dict[str, tuple[str, str]] = {}
    for block in blocks(g):
        if len(block) == 1 and ends[block[0]][0] == ends[block[0]][1]:
            orient[block[0]] = ends[block[0]]
            continue
        bverts = sorted({w for e in block for w in ends[e]})
        star: dict[str, list[str]] = {x: [e for e in block if x in ends[e]] for x in bverts}
        b: dict[str, dict[str, int]] = {}
        for x in bverts:
            cols = [idx[e] for e in star[x]]
            sub = [[r[j] for j in cols] for r in rows]
            ker = exact.nullspace(sub, len(cols), 3) if sub else [[int(i == j) for j in range(len(cols))] for i in range(len(cols))]
            if len(ker) != 1 or not all(ker[0]):
                raise OrientationError(f"no +-1 vector supported on the star of {x}")
            b[x] = {e: exact.signed(val, 3) for e, val in zip(star[x], ker[0])}
        lam: dict[str, int] = {bverts[0]: 1}
        tree = nx.Graph()
        for e in block:
            tree.add_edge(*ends[e])
        for u, v in nx.bfs_edges(tree, bverts[0]):
            e = next(x for x in block if set(ends[x]) == {u, v})
            lam[v] = -lam[u] * b[u][e] * b[v][e]
        for e in block:
            u, v = ends[e]
            if lam[u] * lam[v] != -b[u][e] * b[v][e]:
                raise OrientationError(f"sign contradiction on the cycle through {e}")
        for e in block:
            u, v = ends[e]
            orient[e] = (v, u) if lam[u] * b[u][e] == 1 else (u, v)
    return orient


def kirchhoff_mod3(orient: Mapping[str, tuple[str, str]], vector: Mapping[str, int]) -> bool:
    net: dict[str, int] = {}
    for e, (t, h) in orient.items():
        x = vector.get(e, 0)
        net[h] = net.get(h, 0) + x
        net[t] = net.get(t, 0) - x
    return all(v % 3 == 0 for v in net.values())


# -- rotation systems from a dual graph -------------------------------------------------

def rotation_system_from_graph(c: Complex2, orient: Mapping[str, tuple[str, str]]) -> RotationSystem:
    """Read sigma(e) off the directed cycle formed by the signed incidence vector of ``e``."""
    A = incidence_matrix(c)
    sigma: dict[str, tuple[Traversal, ...]] = {}
    for e, row in zip(A.row_ids, A.rows):
        trav = c.traversals(e)
        faces_here = [f for f, _ in trav]
        if not any(x % 3 for x in row):
            if len(trav) == 2 and faces_here[0] == faces_here[1]:
                sigma[e] = tuple(trav)
                continue
            raise UnsupportedComplex(f"edge {e} has a zero incidence vector mod 3")
        if len(set(faces_here)) != len(faces_here):
            raise UnsupportedComplex(f"a face traverses edge {e} more than once")
        vec = {f: exact.signed(x, 3) for f, x in zip(A.col_ids, row) if x % 3}
        if set(vec) != set(faces_here):
            raise UnsupportedComplex(f"incidence vector of {e} misses a face through it")
        order = _directed_cycle(vec, orient, e)
        pos = {f: i for f, i in trav}
        sigma[e] = tuple((f, pos[f]) for f in order)
    return RotationSystem(sigma)


def _directed_cycle(vec: Mapping[str, int], orient: Mapping[str, tuple[str, str]], e: str) -> list[str]:
    support = list(vec)
    sub = nx.MultiGraph()
    for f in support:
        sub.add_edge(*orient[f], key=f)
    if not nx.is_connected(sub) or any(d != 2 for _, d in sub.degree()):
        raise RotationError("support is not a circuit of the dual graph", e)

    def forward(f):
        t, h = orient[f]
        return (t, h) if vec[f] == 1 else (h, t)

    start = support[0]
    order = [start]
    at = forward(start)[1]
    used = {start}
    while len(order) < len(support):
        nxt = [f for f in support if f not in used and at in orient[f]]
        if not nxt:
            raise RotationError("support is not a circuit of the dual graph", e)
        f = nxt[0]
        a, b = forward(f)
        if a != at:
            raise RotationError("vector is not a directed cycle", e)
        order.append(f)
        used.add(f)
        at = b
    if at != forward(start)[0]:
        raise RotationError("vector is not a directed cycle", e)
    return order


# -- link rotations and face tracing ---------------------------------------------------

def _dart_of(c: Complex2, t: Traversal, v: str) -> Dart:
    f, i = t
    walk = c.walk(f)
    if c.end(walk[i]) == v:
        return ((f, i), 0)
    return ((f, (i - 1) % len(walk)), 1)


def link_rotation(c: Complex2, s: RotationSystem, v: str) -> dict[str, list[Dart]]:
    rot: dict[str, list[Dart]] = {}
    for e in c.edges_at_vertex(v):
        t, h = c.ends(e)
        if t == h:
            raise UnsupportedComplex(f"loop edge {e} at {v}")
        order = list(s.sigma[e])
        if h == v:
            order = order[::-1]
        rot[e] = [_dart_of(c, x, v) for x in order]
    return rot


def trace_link_faces(l: LinkGraph, rotation: Mapping[str, Sequence[Dart]]) -> dict:
    """Faces of the link embedding given by ``rotation``; sphere test per component."""
    darts_at: dict[Dart, str] = {}
    for key, a, b in l.links:
        darts_at[(key, 0)] = a
        darts_at[(key, 1)] = b
    nxt: dict[Dart, Dart] = {}
    for node, order in rotation.items():
        for i, d in enumerate(order):
            if darts_at.get(d) != node:
                raise RotationError("rotation lists a dart that is not at", node)
            nxt[d] = order[(i + 1) % len(order)]
    if set(nxt) != set(darts_at):
        raise RotationError("rotation does not cover all link ends at", l.owner)
    orbit_of: dict[Dart, int] = {}
    orbits: list[list[Dart]] = []
    for d in darts_at:
        if d in orbit_of:
            continue
        cur = d
        orbit = []
        while cur not in orbit_of:
            orbit_of[cur] = len(orbits)
            orbit.append(cur)
            key, side = cur
            cur = nxt[(key, 1 - side)]
        orbits.append(orbit)
    g = l.to_networkx()
    comps = nx.number_connected_components(g) if g.number_of_nodes() else 0
    V, E, F = g.number_of_nodes(), len(l.links), len(orbits)
    euler = V - E + F
    return {
        "vertices": V,
        "links": E,
        "face_count": F,
        "components": comps,
        "euler_characteristic": euler,
        "euler_genus": 2 * comps - euler,
        "is_sphere": euler == 2 * comps,
        "orbits": orbits,
        "orbit_of": orbit_of,
    }


def is_planar_rotation_system(c: Complex2, s: RotationSystem) -> tuple[bool, dict]:
    s.validate(c)
    report = {}
    for v in c.vertices:
        if not c.edges_at_vertex(v):
            continue
        tr = trace_link_faces(link_graph(c, v), link_rotation(c, s, v))
        report[v] = {k: tr[k] for k in ("vertices", "links", "face_count", "euler_genus", "is_sphere")}
    return all(r["is_sphere"] for r in report.values()), report


# -- dual graphs ------------------------------------------------------------------------

def dual_graph_of_rotation(c: Complex2, s: RotationSystem) -> DualGraph:
    """Local surfaces as glued link regions; one dual edge per face."""
    traced = {}
    for v in c.vertices:
        if c.edges_at_vertex(v):
            traced[v] = trace_link_faces(link_graph(c, v), link_rotation(c, s, v))
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def region(v, t):
        return (v, traced[v]["orbit_of"][_dart_of(c, t, v)])

    for v, tr in traced.items():
        for k in range(len(tr["orbits"])):
            find((v, k))
    for e, tail, head in c.edges:
        order = s.sigma[e]
        for i, t in enumerate(order):
            t_next = order[(i + 1) % len(order)]
            a, b = find(region(tail, t_next)), find(region(head, t))
            parent[a] = b
    classes: dict[tuple, str] = {}
    names: list[str] = []

    def name(x):
        r = find(x)
        if r not in classes:
            classes[r] = f"s{len(classes)}"
            names.append(classes[r])
        return classes[r]

    edges = []
    for f, walk in c.faces:
        ends = set()
        pair = None
        for i in range(len(walk)):
            v = c.end(walk[i])
            orbit_of = traced[v]["orbit_of"]
            x = name((v, orbit_of[((f, i), 0)]))
            y = name((v, orbit_of[((f, i), 1)]))
            ends.add(frozenset((x, y)))
            if pair is None:
                pair = (x, y)
        if len(ends) != 1:
            raise RotationError("face borders different local surfaces at different corners", f)
        edges.append((f, *pair))
    return DualGraph(tuple(names), tuple(edges))


def sigma_trails_closed(c: Complex2, s: RotationSystem, d: DualGraph) -> bool:
    """Is every sigma(e), read as a cyclic sequence of dual edges, a closed trail?"""
    ends = {f: (a, b) for f, a, b in d.edges}
    for e, order in s.sigma.items():
        faces = [f for f, _ in order]
        if len(faces) == 1:
            a, b = ends[faces[0]]
            if a != b:
                return False
            continue
        # consecutive dual edges must share an end, with a consistent walk
        ok = False
        fa, fb = ends[faces[0]]
        for start in (fa, fb):
            at = start
            good = True
            for f in faces:
                a, b = ends[f]
                if at == a:
                    at = b
                elif at == b:
                    at = a
                else:
                    good = False
                    break
            if good and at == start:
                ok = True
                break
        if not ok:
            return False
    return True


# -- constraints ------------------------------------------------------------------------

def constraint_sets(c: Complex2, m: Matroid | None = None) -> list[Constraint]:
    """Faces at each vertex and at each edge; circuits and singletons are flagged trivial."""
    if m is None:
        m = dual_matroid(c)
    out = []
    cells = [(f"vertex:{v}", c.faces_at_vertex(v)) for v in c.vertices]
    cells += [(f"edge:{e}", c.faces_at_edge(e)) for e in c.edge_ids]
    for src, faces in cells:
        if not faces:
            continue
        out.append(Constraint(src, tuple(faces), _trivially_connected(m, faces)))
    return out


def _trivially_connected(m: Matroid, faces: Sequence[str]) -> bool:
    if len(faces) == 1:
        return True
    r = m.rank_of(faces)
    if r != len(faces) - 1:
        return False
    return all(m.rank_of([x for x in faces if x != y]) == len(faces) - 1 for y in faces)


def violated_constraints(g: GraphRealization, constraints: Iterable[Constraint]) -> list[Constraint]:
    return [k for k in constraints if not edge_set_connected(g, k.faces)]


def realization_is_unique(g: GraphRealization) -> bool:
    """Whitney: a loopless 2-connected graph whose simplification is 3-connected has no other realization."""
    if any(u == v for _, u, v in g.edges):
        return len(g.vertices) == 1
    simple = nx.Graph()
    simple.add_edges_from((u, v) for _, u, v in g.edges)
    n = simple.number_of_nodes()
    if n <= 1:
        return True
    if not nx.is_connected(simple) or (n > 2 and not nx.is_biconnected(simple)):
        return False
    if n <= 3:
        return True
    return nx.node_connectivity(simple) >= 3


# -- decision procedures ------------------------------------------------------------------

def build_certificate(c: Complex2, m: Matroid, g: GraphRealization) -> tuple[RotationSystem, DualGraph, dict]:
    """Orientation, rotation system and dual graph for a realization ``g`` of ``m``."""
    A = incidence_matrix(c)
    orient = orient_for_3flows(g, A.rows, A.col_ids)
    for row in A.rows:
        if not kirchhoff_mod3(orient, dict(zip(A.col_ids, row))):
            raise OrientationError("orientation is not a 3-flow orientation")
    rot = rotation_system_from_graph(c, orient)
    planar, report = is_planar_rotation_system(c, rot)
    if not planar:
        bad = sorted(v for v, r in report.items() if not r["is_sphere"])
        raise RotationError("induced link embedding is not a sphere at", bad[0])
    dual = dual_graph_of_rotation(c, rot)
    if not matroid_equals(cycle_matroid(dual.edges, m.field, m.ground), m):
        raise AssertionError("cycle matroid of the dual graph differs from the dual matroid")
    return rot, dual, {"orientation": {f: list(x) for f, x in orient.items()}, "link_report": report}


def decide_whitney(c: Complex2, simply_connected_asserted: bool = False, witness_bound: int = 12) -> Verdict:
    m = dual_matroid(c)
    failed = []
    loc = is_local(c)
    if not loc["local"]:
        failed.append("dual matroid not local")
    hom = homology_check(c)
    if not hom["nullhomologous"]:
        failed.append("first homology is nontrivial")
    if not simply_connected_asserted:
        failed.append("simple connectivity not asserted")
    if failed:
        return Verdict(INCONCLUSIVE, "; ".join(failed), details={"failing_vertices": loc["failing_vertices"], "homology": hom})
    found = realize_graph(m, "first")
    if not found:
        return Verdict(NOT_EMBEDDABLE, "dual matroid is not graphic", witness=_nongraphic_witness(m, witness_bound))
    try:
        rot, dual, info = build_certificate(c, m, found[0])
    except UnsupportedComplex as err:
        return Verdict(INCONCLUSIVE, f"certificate construction unsupported: {err}")
    return Verdict(EMBEDDABLE, "dual matroid is graphic", rot, dual, details=info)


def _nongraphic_witness(m: Matroid, bound: int) -> dict:
    try:
        scan = excluded_minor_scan(m, bound)
        if scan["witness"] is not None:
            return scan["witness"]
    except ValueError:
        pass
    return shrink_to_excluded_minor(m, lambda x: bool(realize_graph(x, "first")))


def decide_embeddability(
    c: Complex2,
    simply_connected_asserted: bool = False,
    max_realizations: int = 200000,
) -> Verdict:
    split = split_complex(c)
    hat = split.complex
    base = decide_whitney(hat, simply_connected_asserted)
    if base.status != EMBEDDABLE:
        base.reason = f"split complex: {base.reason}"
        return base
    m = dual_matroid(c)
    constraints = constraint_sets(c, m)
    live = [k for k in constraints if not k.trivial]
    g0 = base.dual_graph.as_realization()
    bad0 = violated_constraints(g0, live)
    details = {"constraints": len(constraints), "nontrivial_constraints": len(live)}
    if not bad0:
        return Verdict(EMBEDDABLE, "split complex embeds and all constraints are connected",
                       base.rotation, base.dual_graph, details={**details, **base.details})
    if realization_is_unique(g0):
        return Verdict(NOT_EMBEDDABLE, "violated connectivity constraint",
                       witness={"constraint": bad0[0].source, "faces": list(bad0[0].faces),
                                "dual_graph": base.dual_graph.to_dict()},
                       details=details)
    flags = ["dual matroid not globally 3-connected: quantified over all realizations"]
    checked = 0
    for g in iter_realizations(m):
        checked += 1
        if checked > max_realizations:
            return Verdict(INCONCLUSIVE, "too many graph realizations to enumerate", flags=flags, details=details)
        if violated_constraints(g, live):
            continue
        try:
            rot, dual, info = build_certificate(hat, m, g)
        except (OrientationError, RotationError, UnsupportedComplex):
            continue
        # the split complex may fall apart, so its own dual graph need not be
        # connected; the constraints are judged on the realization itself
        info["split_dual_graph"] = dual.to_dict()
        return Verdict(EMBEDDABLE, "a realization satisfies all constraints", rot, DualGraph(g.vertices, g.edges),
                       flags=flags, details={**details, "realizations_checked": checked, **info})
    return Verdict(NOT_EMBEDDABLE, "no realization satisfies all connectivity constraints",
                   witness={"constraint": bad0[0].source, "faces": list(bad0[0].faces),
                            "realizations_checked": checked},
                   flags=flags, details=details)


def validate_certificate(c: Complex2, rot: RotationSystem, dual: DualGraph | None = None) -> dict:
    """Re-check a serialized certificate from scratch."""
    m = dual_matroid(c)
    planar, report = is_planar_rotation_system(c, rot)
    computed = dual_graph_of_rotation(c, rot) if planar else None
    out = {"planar": planar, "links": report}
    if computed is not None:
        out["cycle_matroid_equals_dual_matroid"] = matroid_equals(cycle_matroid(computed.edges, m.field, m.ground), m)
        out["trails_closed"] = sigma_trails_closed(c, rot, computed)
        bad = violated_constraints(computed.as_realization(), [k for k in constraint_sets(c, m) if not k.trivial])
        out["violated_constraints"] = [k.source for k in bad]
        if dual is not None:
            out["dual_graph_matches"] = matroid_equals(cycle_matroid(dual.edges, m.field, m.ground), m)
    out["valid"] = bool(planar and out.get("cycle_matroid_equals_dual_matroid") and out.get("trails_closed"))
    return out


# -- opening an edge ---------------------------------------------------------------------

def open_edge(c: Complex2, e: str, interval: Sequence[Traversal], s: RotationSystem) -> tuple[Complex2, RotationSystem]:
    """Replace ``e`` by two clones carrying ``interval`` and the rest of sigma(e)."""
    order = list(s.sigma[e])
    interval = [tuple(t) for t in interval]
    k = len(interval)
    if k == 0 or k >= len(order):
        raise RotationError("interval must be a proper nonempty part of sigma", e)
    start = None
    for i in range(len(order)):
        if [order[(i + j) % len(order)] for j in range(k)] == interval:
            start = i
            break
    if start is None:
        raise RotationError("interval is not contiguous in sigma", e)
    rest = [order[(start + k + j) % len(order)] for j in range(len(order) - k)]
    e1, e2 = f"{e}·I", f"{e}·J"
    inside = set(interval)
    t_, h_ = c.ends(e)
    edges = []
    for x, t, h in c.edges:
        if x == e:
            edges += [(e1, t_, h_), (e2, t_, h_)]
        else:
            edges.append((x, t, h))
    faces = [
        (f, [((e1 if (f, i) in inside else e2) if x == e else x, sg) for i, (x, sg) in enumerate(walk)])
        for f, walk in c.faces
    ]
    sigma = {x: o for x, o in s.sigma.items() if x != e}
    sigma[e1] = tuple(interval)
    sigma[e2] = tuple(rest)
    return Complex2(c.vertices, edges, faces), RotationSystem(sigma)
