"""Vertical, edge and lazy splittings with clone bookkeeping.

Splitting works on traversals: an edge clone receives a set of traversals,
and each face walk is rewritten traversal by traversal. Clones of ``x`` are
named ``x·1``, ``x·2``, ... in order of their first traversal; an element
that does not split keeps its name.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .complex import Complex2, ComplexError, Traversal, link_graph

CLONE_SEP = "·"


@dataclass(frozen=True)
class SplitResult:
    complex: Complex2
    vertex_clone_map: dict[str, str]
    edge_clone_map: dict[str, str]
    order_used: tuple = field(default=())
    skipped_loops: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "vertex_clone_map": dict(sorted(self.vertex_clone_map.items())),
            "edge_clone_map": dict(sorted(self.edge_clone_map.items())),
            "order_used": [list(x) for x in self.order_used],
            "skipped_loop_edges": list(self.skipped_loops),
        }


def _identity(c: Complex2) -> SplitResult:
    return SplitResult(c, {v: v for v in c.vertices}, {e: e for e in c.edge_ids})


def _compose(first: SplitResult, second: SplitResult) -> SplitResult:
    return SplitResult(
        second.complex,
        {v: first.vertex_clone_map[o] for v, o in second.vertex_clone_map.items()},
        {e: first.edge_clone_map[o] for e, o in second.edge_clone_map.items()},
        first.order_used + second.order_used,
        first.skipped_loops + second.skipped_loops,
    )


def _clone_names(base: str, k: int) -> list[str]:
    return [base] if k == 1 else [f"{base}{CLONE_SEP}{i}" for i in range(1, k + 1)]


# -- vertical splitting ----------------------------------------------------------------

def vertical_split(c: Complex2) -> SplitResult:
    """One vertex per connected component of each link graph."""
    where: dict[tuple[str, str], str] = {}  # (vertex, edge at it) -> clone
    vmap: dict[str, str] = {}
    vertices = []
    for v in c.vertices:
        lg = link_graph(c, v).to_networkx()
        comps = sorted((sorted(comp, key=c.edge_ids.index) for comp in nx.connected_components(lg)),
                       key=lambda comp: c.edge_ids.index(comp[0]))
        if not comps:
            vertices.append(v)
            vmap[v] = v
            continue
        names = _clone_names(v, len(comps))
        for name, comp in zip(names, comps):
            vertices.append(name)
            vmap[name] = v
            for e in comp:
                where[(v, e)] = name
    edges = [(e, where[(t, e)], where[(h, e)]) for e, t, h in c.edges]
    out = Complex2(vertices, edges, c.faces)
    return SplitResult(out, vmap, {e: e for e in c.edge_ids})


# -- relations at an edge -------------------------------------------------------------

def _link_other_end(c: Complex2, t: tuple[str, int], v: str) -> tuple[str, int]:
    """The corner at ``v`` used by traversal ``t`` and the traversal on its other side."""
    f, i = t
    walk = c.walk(f)
    k = len(walk)
    if c.end(walk[i]) == v:
        return (f, i), (f, (i + 1) % k)
    return (f, (i - 1) % k), (f, (i - 1) % k)


def related_classes(c: Complex2, e: str, v: str) -> list[list[tuple[str, int]]]:
    """Traversals of ``e`` grouped by the component of L(v) - e their far ends lie in.

    Two traversals whose corners at ``v`` form one loop link at node ``e``
    (the face turns back along ``e``) are related to each other.
    """
    trav = c.traversals(e)
    lg = link_graph(c, v).to_networkx()
    rest = lg.copy()
    rest.remove_node(e)
    comp_of = {}
    for idx, comp in enumerate(nx.connected_components(rest)):
        for node in comp:
            comp_of[node] = idx
    parent = {t: t for t in trav}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    anchor: dict[object, tuple[str, int]] = {}
    for t in trav:
        (_, _), other = _link_other_end(c, t, v)
        f, j = other
        walk = c.walk(f)
        node = walk[j][0]
        if node == e:
            parent[find(t)] = find(other)
            continue
        key = ("comp", comp_of[node])
        if key in anchor:
            parent[find(t)] = find(anchor[key])
        else:
            anchor[key] = t
    groups: dict[tuple, list] = {}
    for t in trav:
        groups.setdefault(find(t), []).append(t)
    return sorted(groups.values(), key=lambda g: trav.index(g[0]))


def _check_edge(c: Complex2, e: str) -> tuple[str, str]:
    if e not in c._edge:
        raise ComplexError("unknown edge id", e)
    t, h = c.ends(e)
    if t == h:
        raise ComplexError("loop edge", e)
    return t, h


def traversal_components_at_edge(c: Complex2, e: str) -> list[list[tuple[str, int]]]:
    t, h = _check_edge(c, e)
    trav = c.traversals(e)
    parent = {x: x for x in trav}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for v in (t, h):
        for group in related_classes(c, e, v):
            for x in group[1:]:
                parent[find(x)] = find(group[0])
    groups: dict = {}
    for x in trav:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda g: trav.index(g[0]))


def components_at_edge(c: Complex2, e: str) -> list[list[str]]:
    """Faces at ``e`` grouped into the connected components at ``e``."""
    return [list(dict.fromkeys(f for f, _ in g)) for g in traversal_components_at_edge(c, e)]


# -- edge splitting ---------------------------------------------------------------------

def split_edge(c: Complex2, e: str, classes: Sequence[Sequence[tuple[str, int]]]) -> SplitResult:
    """Replace ``e`` by one clone per traversal class."""
    if len(classes) <= 1:
        return _identity(c)
    names = _clone_names(e, len(classes))
    assign = {t: names[k] for k, cls in enumerate(classes) for t in cls}
    t_, h_ = c.ends(e)
    edges = []
    for x, t, h in c.edges:
        if x == e:
            edges.extend((n, t_, h_) for n in names)
        else:
            edges.append((x, t, h))
    faces = []
    for f, walk in c.faces:
        faces.append((f, [(assign[(f, i)], s) if x == e else (x, s) for i, (x, s) in enumerate(walk)]))
    emap = {x: x for x in c.edge_ids if x != e}
    emap.update({n: e for n in names})
    return SplitResult(Complex2(c.vertices, edges, faces), {v: v for v in c.vertices}, emap)


def edge_split_complex(c: Complex2, rng: random.Random | None = None) -> SplitResult:
    """Split edges until each has a single component; ``rng`` shuffles the order edges are tried."""
    result = _identity(c)
    loops = tuple(e for e in c.edge_ids if c.is_loop_edge(e))
    while True:
        cur = result.complex
        candidates = [e for e in cur.edge_ids if not cur.is_loop_edge(e)]
        if rng is not None:
            rng.shuffle(candidates)
        for e in candidates:
            classes = traversal_components_at_edge(cur, e)
            if len(classes) > 1:
                step = split_edge(cur, e, classes)
                result = _compose(result, SplitResult(step.complex, step.vertex_clone_map, step.edge_clone_map, ((e,),)))
                break
        else:
            break
    return SplitResult(result.complex, result.vertex_clone_map, result.edge_clone_map, result.order_used, loops)


def split_complex(c: Complex2, rng: random.Random | None = None) -> SplitResult:
    """Vertical split of the edge split complex."""
    es = edge_split_complex(c, rng)
    return _compose(es, vertical_split(es.complex))


# -- lazy splitting ---------------------------------------------------------------------

LAZY_MIN_TRAVERSALS = 3


def lazy_candidates(c: Complex2, min_traversals: int = LAZY_MIN_TRAVERSALS) -> list[tuple[str, str]]:
    """(edge, endvertex) pairs at which splitting would separate traversals.

    Only edges with at least ``min_traversals`` traversals count: an edge in two
    faces that is a cut vertex of a link is an interior node of a path there,
    and cutting it never makes a link 2-connected.
    """
    out = []
    for e, t, h in c.edges:
        if t == h or len(c.traversals(e)) < min_traversals:
            continue
        for v in (t, h):
            if len(related_classes(c, e, v)) > 1:
                out.append((e, v))
    return out


def lazy_edge_split(
    c: Complex2,
    order: Iterable[tuple[str, str]] = (),
    min_traversals: int = LAZY_MIN_TRAVERSALS,
) -> SplitResult:
    """Split edges at single endvertices, following ``order`` and then the first candidate."""
    result = _identity(c)
    pending = list(order)
    while True:
        cur = result.complex
        if pending:
            e, v = pending.pop(0)
            if e not in cur._edge:
                raise ComplexError("invalid order entry: unknown edge", e)
            if v not in cur.ends(e):
                raise ComplexError(f"invalid order entry: {v} is not an end of", e)
            if cur.is_loop_edge(e):
                raise ComplexError("invalid order entry: loop edge", e)
        else:
            cands = lazy_candidates(cur, min_traversals)
            if not cands:
                break
            e, v = cands[0]
        classes = related_classes(cur, e, v)
        if len(classes) > 1:
            step = split_edge(cur, e, classes)
            result = _compose(result, SplitResult(step.complex, step.vertex_clone_map, step.edge_clone_map, ((e, v),)))
    return result


def all_lazy_edge_splits(c: Complex2, min_traversals: int = LAZY_MIN_TRAVERSALS, limit: int = 10000) -> list[SplitResult]:
    """Terminal lazy edge splits over every splitting order (labelled, deduplicated)."""
    from .complex import serialize_complex

    finals: dict[str, SplitResult] = {}
    seen: set[str] = set()
    stack = [_identity(c)]
    while stack:
        res = stack.pop()
        key = serialize_complex(res.complex)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > limit:
            raise RuntimeError("lazy split enumeration exceeded its state limit")
        cands = lazy_candidates(res.complex, min_traversals)
        if not cands:
            finals.setdefault(key, res)
            continue
        for e, v in cands:
            step = split_edge(res.complex, e, related_classes(res.complex, e, v))
            stack.append(_compose(res, SplitResult(step.complex, step.vertex_clone_map, step.edge_clone_map, ((e, v),))))
    return list(finals.values())


def lazy_split_complex(c: Complex2, order=(), min_traversals: int = LAZY_MIN_TRAVERSALS) -> SplitResult:
    es = lazy_edge_split(c, order, min_traversals)
    return _compose(es, vertical_split(es.complex))
