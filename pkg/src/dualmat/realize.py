"""Graph realizations of represented matroids.

Each connected component is realized by growing a labelled spanning forest on
a base, pruned so that every fundamental circuit stays a path, and then
verified by exact matroid equality (necessary because the path conditions
alone cannot tell, say, U_{2,4} from a graphic matroid). Components are then
glued together by identifying vertices, at most one per existing component.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import networkx as nx

from . import exact
from .matroid import Matroid, MatroidSizeError, matroid_equals

DEFAULT_REALIZE_BOUND = 64


@dataclass(frozen=True)
class GraphRealization:
    """Multigraph whose edges carry matroid element ids."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (element, u, v)

    @cached_property
    def endpoints(self) -> dict[str, tuple[str, str]]:
        return {e: (u, v) for e, u, v in self.edges}

    @property
    def component_count(self) -> int:
        return nx.number_connected_components(self.to_networkx())

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e, u, v in self.edges:
            g.add_edge(u, v, key=e)
        return g

    def key(self):
        return canonical_key(self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"element": e, "endpoints": [u, v]} for e, u, v in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GraphRealization":
        return cls(
            tuple(data["vertices"]),
            tuple((d["element"], *d["endpoints"]) for d in data["edges"]),
        )


def canonical_key(edges: Iterable[tuple[str, str, str]]):
    """Invariant of a labelled multigraph without isolated vertices.

    Each vertex is described by the multiset of element ends at it; the
    multiset of those descriptions determines the graph up to renaming vertices.
    """
    inc: dict[str, list[str]] = {}
    for e, u, v in edges:
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    return tuple(sorted(tuple(sorted(x)) for x in inc.values()))


def cycle_matroid(edges: Iterable[tuple[str, str, str]], field: int = 3, ground=None) -> Matroid:
    """Cycle matroid of a multigraph in row-space form (rows = signed fundamental cycles)."""
    edges = list(edges)
    ground = tuple(ground) if ground is not None else tuple(e for e, _, _ in edges)
    idx = {g: i for i, g in enumerate(ground)}
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = nx.MultiGraph()
    ends = {}
    nontree = []
    for e, u, v in edges:
        ends[e] = (u, v)
        ru, rv = find(u), find(v)
        if u != v and ru != rv:
            parent[ru] = rv
            tree.add_edge(u, v, key=e)
        else:
            nontree.append((e, u, v))
    rows = []
    for e, u, v in nontree:
        row = [0] * len(ground)
        row[idx[e]] = 1
        if u != v:
            # e runs u -> v; close it with the tree path v -> u
            path = nx.shortest_path(tree, v, u)
            for a, b in zip(path, path[1:]):
                key = next(iter(tree[a][b]))
                row[idx[key]] = 1 if ends[key][0] == a else -1
        rows.append(row)
    return Matroid(ground, tuple(tuple(r) for r in rows), field)


def cycle_matroid_of(r: GraphRealization, field: int = 3, ground=None) -> Matroid:
    return cycle_matroid(r.edges, field, ground)


def graph_cycles(r: GraphRealization) -> set[frozenset[str]]:
    """Brute-force circuit list of the cycle matroid: edge sets of cycles (oracle)."""
    g = r.to_networkx()
    out: set[frozenset[str]] = set()
    for e, u, v in r.edges:
        if u == v:
            out.add(frozenset([e]))
    simple = nx.Graph()
    for e, u, v in r.edges:
        if u != v:
            simple.add_edge(u, v)
    for cyc in nx.simple_cycles(simple.to_directed()):
        if len(cyc) < 3:
            continue
        pairs = list(zip(cyc, cyc[1:] + cyc[:1]))
        options = [[k for k in g[a][b]] for a, b in pairs]
        stack = [()]
        for opts in options:
            stack = [s + (k,) for s in stack for k in opts]
        out.update(frozenset(s) for s in stack)
    for a, b in simple.edges:
        keys = list(g[a][b])
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                out.add(frozenset([keys[i], keys[j]]))
    return out


# -- connected components -----------------------------------------------------------

def _connected_realizations(m: Matroid, first_only: bool) -> list[list[tuple[str, str, str]]]:
    """Labelled realizations (as edge lists) of a connected matroid with >= 2 elements."""
    fc = {x: set(c) - {x} for x, c in m.fundamental_circuits().items()}
    base = m.base()
    if any(not c for c in fc.values()):
        return []
    # order base elements so each one shares fundamental circuits with those before it
    weight = {b: sum(1 for c in fc.values() if b in c) for b in base}
    order = []
    remaining = set(base)
    while remaining:
        placed = set(order)
        def score(b):
            together = sum(1 for c in fc.values() if b in c and c & placed)
            return (together, weight[b], -base.index(b))
        nxt = max(remaining, key=score)
        order.append(nxt)
        remaining.discard(nxt)
    touching = {b: [x for x, c in fc.items() if b in c] for b in base}

    def consistent(edges: dict[str, tuple[int, int]], new: str, comp: dict[int, int]) -> bool:
        # placed circuit edges must form one path inside each tree component
        for x in touching[new]:
            placed = [b for b in fc[x] if b in edges]
            deg: dict[int, int] = {}
            for b in placed:
                for w in edges[b]:
                    deg[w] = deg.get(w, 0) + 1
                    if deg[w] > 2:
                        return False
            by_comp: dict[int, list[str]] = {}
            for b in placed:
                by_comp.setdefault(comp[edges[b][0]], []).append(b)
            if len(by_comp) > 1 and len(placed) == len(fc[x]):
                return False
            for group in by_comp.values():
                if not _is_connected_edges([edges[b] for b in group]):
                    return False
        return True

    results: list[list[tuple[str, str, str]]] = []
    seen_full: set = set()

    def finish(edges: dict[str, tuple[int, int]]):
        out = [(b, f"v{u}", f"v{w}") for b, (u, w) in edges.items()]
        g = nx.Graph()
        g.add_edges_from(edges.values())
        for x, c in fc.items():
            sub = nx.Graph()
            sub.add_edges_from(edges[b] for b in c)
            ends = [w for w in sub.nodes if sub.degree(w) == 1]
            if len(ends) != 2:
                return None
            out.append((x, f"v{ends[0]}", f"v{ends[1]}"))
        cand = cycle_matroid(out, m.field, m.ground)
        if not matroid_equals(cand, m):
            return None
        return _relabel_vertices(out)

    # depth-first over base elements with per-level deduplication of labelled states
    levels_seen: list[set] = [set() for _ in order]

    def extend(k: int, edges: dict[str, tuple[int, int]], nverts: int):
        if k == len(order):
            r = finish(edges)
            if r is not None:
                key = canonical_key(r)
                if key not in seen_full:
                    seen_full.add(key)
                    results.append(r)
            return first_only and bool(results)
        b = order[k]
        comp = _components(edges)
        options = []
        verts = sorted(comp)
        for u in verts:
            options.append((u, nverts))
        for i, u in enumerate(verts):
            for w in verts[i + 1:]:
                if comp[u] != comp[w]:
                    options.append((u, w))
        options.append((nverts, nverts + 1))
        for u, w in options:
            trial = dict(edges)
            trial[b] = (u, w)
            if not consistent(trial, b, _merged(comp, u, w)):
                continue
            key = canonical_key((e, str(a), str(c)) for e, (a, c) in trial.items())
            if key in levels_seen[k]:
                continue
            levels_seen[k].add(key)
            used = max(nverts, max(u, w) + 1)
            if extend(k + 1, trial, used):
                return True
        return False

    extend(0, {}, 0)
    return results


def _components(edges: dict[str, tuple[int, int]]) -> dict[int, int]:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in edges.values():
        parent[find(u)] = find(w)
    return {x: find(x) for x in list(parent)}


def _merged(comp: dict[int, int], u: int, w: int) -> dict[int, int]:
    """Component labels after adding the edge uw."""
    out = dict(comp)
    cu = out.setdefault(u, u)
    cw = out.setdefault(w, w)
    if cu != cw:
        for x, c in out.items():
            if c == cw:
                out[x] = cu
    return out


def _is_connected_edges(pairs) -> bool:
    pairs = list(pairs)
    if not pairs:
        return True
    comp: dict[int, int] = {}
    for u, w in pairs:
        comp = _merged(comp, u, w)
    return len(set(comp.values())) == 1


def _relabel_vertices(edges: list[tuple[str, str, str]]) -> list[tuple[str, str, str]]:
    names: dict[str, str] = {}
    out = []
    for e, u, v in edges:
        for w in (u, v):
            if w not in names:
                names[w] = f"v{len(names)}"
        out.append((e, names[u], names[v]))
    return out


def _component_realizations(m: Matroid, comp: list[str], first_only: bool):
    sub = m.restrict(comp)
    if len(comp) == 1:
        x = comp[0]
        if sub.rank == 0:
            return [[(x, "v0", "v0")]]
        return [[(x, "v0", "v1")]]
    return _connected_realizations(sub, first_only)


# -- gluing components ---------------------------------------------------------------

def _glue(parts: list[list[list[tuple[str, str, str]]]]) -> Iterator[list[tuple[str, str, str]]]:
    """All ways to combine component realizations, as labelled graphs without repeats.

    Blocks of different matroid components may share at most one vertex with
    each connected piece built so far; attaching first is tried before
    leaving a piece separate, so the first result is the most compact one.
    """
    seen: set = set()

    def rec(k: int, edges: list[tuple[str, str, str]], counter: int):
        if k == len(parts):
            key = canonical_key(edges)
            if key not in seen:
                seen.add(key)
                yield list(edges)
            return
        g = nx.MultiGraph()
        for e, u, v in edges:
            g.add_edge(u, v)
        pieces = [sorted(c) for c in nx.connected_components(g)] if edges else []
        for option in parts[k]:
            hverts = sorted({w for _, u, v in option for w in (u, v)})
            base_names = {w: f"u{counter}_{w}" for w in hverts}
            for mapping in _attachments(hverts, pieces):
                names = dict(base_names)
                names.update(mapping)
                new = [(e, names[u], names[v]) for e, u, v in option]
                yield from rec(k + 1, edges + new, counter + 1)

    yield from rec(0, [], 0)


def _attachments(hverts: list[str], pieces: list[list[str]]) -> Iterator[dict[str, str]]:
    """Partial injections: each existing piece contributes at most one vertex."""

    def rec(i: int, used: set[str], current: dict[str, str]):
        if i == len(pieces):
            yield dict(current)
            return
        for hv in hverts:
            if hv in used:
                continue
            for w in pieces[i]:
                current[hv] = w
                used.add(hv)
                yield from rec(i + 1, used, current)
                del current[hv]
                used.discard(hv)
        yield from rec(i + 1, used, current)

    yield from rec(0, set(), {})


def iter_realizations(m: Matroid, bound: int = DEFAULT_REALIZE_BOUND) -> Iterator[GraphRealization]:
    """Lazily enumerate labelled realizations of ``m`` (each labelled graph once)."""
    if len(m.ground) > bound:
        raise MatroidSizeError(f"ground set of size {len(m.ground)} exceeds the realization bound {bound}")
    comps = sorted(m.components(), key=lambda c: (-len(c), m.ground.index(c[0])))
    parts = []
    for comp in comps:
        opts = _component_realizations(m, comp, first_only=False)
        if not opts:
            return
        parts.append(opts)
    for edges in _glue(parts):
        yield _as_realization(edges, m.ground)


def _as_realization(edges, ground) -> GraphRealization:
    edges = _relabel_vertices(sorted(edges, key=lambda t: ground.index(t[0])))
    verts = []
    for _, u, v in edges:
        for w in (u, v):
            if w not in verts:
                verts.append(w)
    return GraphRealization(tuple(verts), tuple(edges))


def realize_graph(m: Matroid, mode: str = "first", bound: int = DEFAULT_REALIZE_BOUND) -> list[GraphRealization]:
    """Graphs whose cycle matroid is ``m``.

    ``first`` returns one realization (components glued at a single vertex) or
    an empty list when ``m`` is not graphic. ``all`` returns one representative
    per isomorphism class of unlabelled multigraph; see ``iter_realizations`` for
    the labelled enumeration.
    """
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    if len(m.ground) > bound:
        raise MatroidSizeError(f"ground set of size {len(m.ground)} exceeds the realization bound {bound}")
    if mode == "first":
        comps = sorted(m.components(), key=lambda c: (-len(c), m.ground.index(c[0])))
        edges: list[tuple[str, str, str]] = []
        for i, comp in enumerate(comps):
            opts = _component_realizations(m, comp, first_only=True)
            if not opts:
                return []
            names: dict[str, str] = {}
            for e, u, v in opts[0]:
                for w in (u, v):
                    if w not in names:
                        names[w] = "hub" if not names else f"c{i}_{w}"
                edges.append((e, names[u], names[v]))
        return [_as_realization(edges, m.ground)]
    return unlabeled_classes(iter_realizations(m, bound))


def unlabeled_classes(realizations: Iterable[GraphRealization]) -> list[GraphRealization]:
    reps: list[tuple[nx.MultiGraph, GraphRealization]] = []
    buckets: dict[tuple, list[int]] = {}
    for r in realizations:
        g = r.to_networkx()
        inv = (g.number_of_nodes(), tuple(sorted(d for _, d in g.degree())), nx.number_of_selfloops(g))
        idxs = buckets.setdefault(inv, [])
        if any(nx.is_isomorphic(reps[i][0], g) for i in idxs):
            continue
        idxs.append(len(reps))
        reps.append((g, r))
    return [r for _, r in reps]


def edge_set_connected(r: GraphRealization, subset: Iterable[str]) -> bool:
    """Is the subgraph formed by these edges (and their ends) connected?"""
    ends = r.endpoints
    items = list(subset)
    if not items:
        return True
    at: dict[str, list[str]] = {}
    for e in items:
        for x in ends[e]:
            at.setdefault(x, []).append(e)
    seen = {ends[items[0]][0]}
    stack = [ends[items[0]][0]]
    while stack:
        x = stack.pop()
        for e in at[x]:
            for y in ends[e]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(at)
