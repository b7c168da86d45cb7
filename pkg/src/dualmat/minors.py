"""Excluded-minor search for graphicness.

A matroid is graphic iff it has none of U_{2,4}, F_7, F_7*, M*(K_5), M*(K_{3,3})
as a minor. All five are 3-connected, so they survive the reduction to a
simple and cosimple matroid, which is what the exhaustive search runs on.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx

from . import exact
from .matroid import (
    DEFAULT_SCAN_BOUND,
    Matroid,
    MatroidSizeError,
    circuit_isomorphism,
)


def _incidence(g: nx.Graph) -> tuple[list[str], list[list[int]]]:
    nodes = list(g.nodes)
    edges = list(g.edges)
    ground = [f"{a}{b}" for a, b in edges]
    rows = [[0] * len(edges) for _ in nodes]
    for j, (a, b) in enumerate(edges):
        rows[nodes.index(a)][j] = -1
        rows[nodes.index(b)][j] = 1
    return ground, rows


@lru_cache(maxsize=None)
def targets() -> dict[str, Matroid]:
    u24 = Matroid.from_column_representation(tuple("abcd"), [[1, 0, 1, 1], [0, 1, 1, 2]], 3)
    fano = Matroid.from_column_representation(
        tuple("1234567"),
        [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]],
        2,
    )
    k5_ground, k5_rows = _incidence(nx.complete_graph(5))
    k33_ground, k33_rows = _incidence(nx.complete_bipartite_graph(3, 3))
    return {
        "U24": u24,
        "F7": fano,
        "F7*": fano.dual(),
        # row-space form of a vertex/edge incidence matrix is the bond matroid
        "M*(K5)": Matroid(tuple(k5_ground), tuple(map(tuple, k5_rows)), 3),
        "M*(K33)": Matroid(tuple(k33_ground), tuple(map(tuple, k33_rows)), 3),
    }


def reduce_matroid(m: Matroid) -> tuple[Matroid, list[str], list[str]]:
    """Strip loops and coloops and shrink parallel and series classes to one element.

    Returns the reduced matroid and the deleted and contracted elements.
    """
    deleted: list[str] = []
    contracted: list[str] = []
    changed = True
    while changed and len(m.ground):
        changed = False
        loops = m.loops()
        if loops:
            m = m.delete(loops)
            deleted += loops
            changed = True
            continue
        coloops = m.coloops()
        if coloops:
            m = m.contract(coloops)
            contracted += coloops
            changed = True
            continue
        g = list(m.ground)
        for a, b in itertools.combinations(g, 2):
            if m.rank_of([a, b]) == 1:
                m = m.delete([b])
                deleted.append(b)
                changed = True
                break
        if changed:
            continue
        d = m.dual()
        for a, b in itertools.combinations(g, 2):
            if d.rank_of([a, b]) == 1:
                m = m.contract([b])
                contracted.append(b)
                changed = True
                break
    return m, deleted, contracted


def _find_minor(m: Matroid, name: str, t: Matroid):
    k = len(t.ground)
    rt = t.rank
    tcirc = t.circuits()
    n = len(m.ground)
    if k > n or rt > m.rank or (n - k) < (m.rank - rt):
        return None
    need = m.rank - rt
    g = list(m.ground)
    for C in itertools.combinations(g, need):
        if m.rank_of(C) != need:
            continue
        mc = m.contract(C)
        rest = list(mc.ground)
        for S in itertools.combinations(rest, k):
            if mc.rank_of(S) != rt:
                continue
            sub = mc.restrict(S)
            iso = circuit_isomorphism(list(sub.ground), sub.circuits(), list(t.ground), tcirc)
            if iso is not None:
                D = [x for x in rest if x not in set(S)]
                return {"minor": name, "contract": list(C), "delete": D, "map": iso}
    return None


def excluded_minor_scan(m: Matroid, bound: int = DEFAULT_SCAN_BOUND) -> dict:
    """Exhaustive search for one of the five excluded minors of graphic matroids."""
    red, deleted, contracted = reduce_matroid(m)
    if len(red.ground) > bound:
        raise MatroidSizeError(
            f"reduced ground set of size {len(red.ground)} exceeds the scan bound {bound}"
        )
    for name, t in targets().items():
        hit = _find_minor(red, name, t)
        if hit is not None:
            hit["contract"] = contracted + hit["contract"]
            hit["delete"] = deleted + hit["delete"]
            return {"graphic_consistent": False, "witness": hit}
    return {"graphic_consistent": True, "witness": None}


def shrink_to_excluded_minor(m: Matroid, is_graphic) -> dict:
    """Greedy minor-minimal reduction of a non-graphic matroid.

    Elements are deleted or contracted one at a time as long as the result
    stays non-graphic (``is_graphic`` decides that). A minor-minimal
    non-graphic matroid is one of the five targets, which is then identified.
    """
    deleted: list[str] = []
    contracted: list[str] = []
    cur = m
    progress = True
    while progress:
        progress = False
        for x in list(cur.ground):
            for op in ("delete", "contract"):
                cand = cur.delete([x]) if op == "delete" else cur.contract([x])
                if not is_graphic(cand):
                    cur = cand
                    (deleted if op == "delete" else contracted).append(x)
                    progress = True
                    break
            if progress:
                break
    for name, t in targets().items():
        if len(t.ground) == len(cur.ground) and t.rank == cur.rank:
            iso = circuit_isomorphism(list(cur.ground), cur.circuits(), list(t.ground), t.circuits())
            if iso is not None:
                return {"minor": name, "contract": contracted, "delete": deleted, "map": iso}
    return {"minor": None, "contract": contracted, "delete": deleted, "ground": list(cur.ground)}
