"""Isomorphism of walk-complexes.

A complex is encoded as a coloured graph with a node per vertex, edge, face,
traversal and corner. Traversals hang off their face and edge, corners off
their vertex, and each traversal is joined to the corners before and after
it. The encoding forgets edge directions, the starting point of each walk and
its orientation, so isomorphism means: cells correspond, and walks agree up
to rotation and reflection.
"""
from __future__ import annotations

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_edge_match, categorical_node_match

from .complex import Complex2


def complex_graph(c: Complex2, fix_faces: bool = False) -> nx.Graph:
    g = nx.Graph()
    for v in c.vertices:
        g.add_node(("V", v), color="V")
    for e, t, h in c.edges:
        g.add_node(("E", e), color="E")
        if t == h:
            g.add_edge(("E", e), ("V", t), mult=2)
        else:
            g.add_edge(("E", e), ("V", t), mult=1)
            g.add_edge(("E", e), ("V", h), mult=1)
    for f, walk in c.faces:
        g.add_node(("F", f), color=("F", f) if fix_faces else "F")
        k = len(walk)
        for i, (e, _) in enumerate(walk):
            g.add_node(("T", f, i), color="T")
            g.add_node(("C", f, i), color="C")
            g.add_edge(("T", f, i), ("F", f), mult=1)
            g.add_edge(("T", f, i), ("E", e), mult=1)
            g.add_edge(("C", f, i), ("V", c.end(walk[i])), mult=1)
        for i in range(k):
            # corner i sits between traversal i and traversal i+1
            g.add_edge(("T", f, i), ("C", f, i), mult=1)
            g.add_edge(("C", f, i), ("T", f, (i + 1) % k), mult=1)
    return g


def refine_colors(graphs: list[nx.Graph]) -> list[dict]:
    """Joint colour refinement; returns stable colours comparable across the graphs."""
    colors = [{n: repr(g.nodes[n]["color"]) for n in g} for g in graphs]
    count = -1
    while True:
        sigs = []
        for g, col in zip(graphs, colors):
            sigs.append({
                n: (col[n], tuple(sorted((col[m], g[n][m].get("mult", 1)) for m in g[n])))
                for n in g
            })
        palette = {sig: i for i, sig in enumerate(sorted({s for d in sigs for s in d.values()}))}
        colors = [{n: palette[s] for n, s in d.items()} for d in sigs]
        if len(palette) == count:
            return colors
        count = len(palette)


def complexes_isomorphic(a: Complex2, b: Complex2, fix_faces: bool = False) -> bool:
    if (len(a.vertices), len(a.edges), len(a.faces)) != (len(b.vertices), len(b.edges), len(b.faces)):
        return False
    if sorted(len(w) for _, w in a.faces) != sorted(len(w) for _, w in b.faces):
        return False
    if fix_faces and set(a.face_ids) != set(b.face_ids):
        return False
    ga = complex_graph(a, fix_faces)
    gb = complex_graph(b, fix_faces)
    ca, cb = refine_colors([ga, gb])
    if sorted(ca.values()) != sorted(cb.values()):
        return False
    nx.set_node_attributes(ga, ca, "wl")
    nx.set_node_attributes(gb, cb, "wl")
    gm = GraphMatcher(
        ga,
        gb,
        node_match=categorical_node_match("wl", None),
        edge_match=categorical_edge_match("mult", 1),
    )
    return gm.is_isomorphic()
