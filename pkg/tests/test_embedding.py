import itertools

import pytest

from dualmat import corpus
from dualmat.complex import LinkGraph, incidence_matrix, local_connectivity_profile
from dualmat.corpus import _simplicial
from dualmat.embedding import (
    EMBEDDABLE,
    INCONCLUSIVE,
    NOT_EMBEDDABLE,
    DualGraph,
    RotationError,
    RotationSystem,
    Verdict,
    constraint_sets,
    decide_embeddability,
    decide_whitney,
    dual_graph_of_rotation,
    is_planar_rotation_system,
    kirchhoff_mod3,
    open_edge,
    orient_for_3flows,
    rotation_system_from_graph,
    trace_link_faces,
    validate_certificate,
)
from dualmat.matroid import dual_matroid, matroid_equals
from dualmat.realize import GraphRealization, cycle_matroid


def bipyramid():
    """Two tetrahedra glued along abc, keeping abc: the edges of abc lie in three faces."""
    return _simplicial(list("abcde"), [("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d"),
                                       ("a", "b", "e"), ("a", "c", "e"), ("b", "c", "e"), ("a", "b", "c")])


def _all_vectors_are_3flows(c, orient):
    a = incidence_matrix(c)
    return all(kirchhoff_mod3(orient, dict(zip(a.col_ids, row))) for row in a.rows)


@pytest.mark.parametrize("make", [corpus.tetrahedron, corpus.octahedron])
def test_orientation_on_parallel_class(make):
    c = make()
    faces = [f for f, _ in c.faces]
    g = GraphRealization(("p", "q"), tuple((f, "p", "q") for f in faces))
    a = incidence_matrix(c)
    orient = orient_for_3flows(g, a.rows, a.col_ids)
    assert _all_vectors_are_3flows(c, orient)
    for row in a.rows:
        f1, f2 = [f for f, x in zip(a.col_ids, row) if x]
        s1, s2 = [x for x in row if x]
        # same sign means opposite directions across the pair
        assert (orient[f1] == orient[f2]) == (s1 != s2)


def test_single_loop_zero_vector():
    g = GraphRealization(("p",), (("f", "p", "p"),))
    orient = orient_for_3flows(g, [[0]], ["f"])
    assert kirchhoff_mod3(orient, {"f": 0}) and kirchhoff_mod3(orient, {"f": 1})


def test_sigma_two_cycles_on_spheres():
    for c in (corpus.tetrahedron(), corpus.octahedron()):
        v = decide_whitney(c, True)
        assert all(len(o) == 2 for o in v.rotation.sigma.values())


def test_sigma_three_cycle_follows_directed_triangle():
    c = bipyramid()
    v = decide_whitney(c, True)
    assert v.status == EMBEDDABLE
    orient = {f: tuple(x) for f, x in v.details["orientation"].items()}
    a = incidence_matrix(c)
    for e, row in zip(a.row_ids, a.rows):
        order = [f for f, _ in v.rotation.sigma[e]]
        vec = {f: x for f, x in zip(a.col_ids, row) if x}
        if len(order) != 3:
            continue
        # walking sigma(e) traverses the dual edges head to tail, with the sign of vec
        steps = [orient[f] if vec[f] == 1 else orient[f][::-1] for f in order]
        assert all(steps[i][1] == steps[(i + 1) % 3][0] for i in range(3))


def test_rotation_system_from_graph_round_trip():
    c = bipyramid()
    v = decide_whitney(c, True)
    orient = {f: tuple(x) for f, x in v.details["orientation"].items()}
    again = rotation_system_from_graph(c, orient)
    assert again == v.rotation
    assert RotationSystem.from_dict(again.to_dict()) == again


def _link(nodes, pairs):
    return LinkGraph("o", tuple(nodes), tuple(((f"k{i}", 0), a, b) for i, (a, b) in enumerate(pairs)))


def _rotation_by_neighbours(l, order_at):
    rot = {}
    for n in l.nodes:
        darts = []
        for key, a, b in l.links:
            if a == n:
                darts.append(((key, 0), b))
            if b == n:
                darts.append(((key, 1), a))
        darts.sort(key=lambda d: order_at[n].index(d[1]))
        rot[n] = [d for d, _ in darts]
    return rot


def _face_count_oracle(l, rot):
    """Independent orbit count of the face permutation on darts."""
    succ = {}
    for n, darts in rot.items():
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % len(darts)]
    seen, faces = set(), 0
    for d in succ:
        if d in seen:
            continue
        faces += 1
        while d not in seen:
            seen.add(d)
            (key, side) = d
            d = succ[(key, 1 - side)]
    return faces


def test_triangle_link_is_sphere():
    l = _link("xyz", [("x", "y"), ("y", "z"), ("z", "x")])
    rep = trace_link_faces(l, _rotation_by_neighbours(l, {"x": "yz", "y": "zx", "z": "xy"}))
    assert (rep["vertices"], rep["links"], rep["face_count"], rep["is_sphere"]) == (3, 3, 2, True)


def test_two_parallel_links_is_sphere():
    l = _link("xy", [("x", "y"), ("x", "y")])
    rot = {"x": [(("k0", 0), 0), (("k1", 0), 0)], "y": [(("k0", 0), 1), (("k1", 0), 1)]}
    rep = trace_link_faces(l, rot)
    assert rep["face_count"] == 2 and rep["is_sphere"]


def test_k5_rotations_are_never_spheres():
    nodes = "01234"
    l = _link(nodes, list(itertools.combinations(nodes, 2)))
    best = 0
    # all 6^5 rotations of K5 (cyclic orders with the first neighbour pinned)
    choices = {n: [[others[0], *p] for p in itertools.permutations(others[1:])]
               for n in nodes for others in [[m for m in nodes if m != n]]}
    for combo in itertools.product(*(choices[n] for n in nodes)):
        rot = _rotation_by_neighbours(l, dict(zip(nodes, combo)))
        rep = trace_link_faces(l, rot)
        assert rep["face_count"] == _face_count_oracle(l, rot)
        assert not rep["is_sphere"] and rep["euler_genus"] >= 2
        best = max(best, rep["face_count"])
    assert best == 5  # V - E + F = 0 at best: K5 sits on the torus


def test_trace_rejects_foreign_darts():
    l = _link("xy", [("x", "y")])
    with pytest.raises(RotationError):
        trace_link_faces(l, {"x": [(("k0", 0), 1)], "y": [(("k0", 0), 0)]})


def test_scrambled_rotation_is_not_planar():
    c = bipyramid()
    v = decide_whitney(c, True)
    sigma = dict(v.rotation.sigma)
    o = sigma["ab"]
    sigma["ab"] = (o[0], o[2], o[1])
    planar, report = is_planar_rotation_system(c, RotationSystem(sigma))
    assert not planar
    assert any(not r["is_sphere"] for r in report.values())


@pytest.mark.parametrize("make, vertices, edges", [
    (corpus.tetrahedron, 2, 4),
    (corpus.octahedron, 2, 8),
    (bipyramid, 3, 7),
])
def test_dual_graph_shape_and_cycle_matroid(make, vertices, edges):
    c = make()
    v = decide_whitney(c, True)
    d = dual_graph_of_rotation(c, v.rotation)
    assert (len(d.vertices), len(d.edges)) == (vertices, edges)
    m = dual_matroid(c)
    assert matroid_equals(cycle_matroid(d.edges, 3, m.ground), m)
    assert DualGraph.from_dict(d.to_dict()) == d


def test_constraint_sets():
    c = corpus.tetrahedron()
    ks = {k.source: k for k in constraint_sets(c)}
    assert sorted(ks["vertex:a"].faces) == ["abc", "abd", "acd"]
    g = corpus.grid(4, 2, 1)
    fig = corpus.identify_edge_pair(g, "z110", "z310")
    ks = {k.source: k for k in constraint_sets(fig)}
    assert set(ks["edge:z110"].faces) == set(g.faces_at_edge("z110")) | set(g.faces_at_edge("z310"))
    assert not ks["edge:z110"].trivial


def test_decide_whitney_examples():
    t = decide_whitney(corpus.tetrahedron(), True)
    assert t.status == EMBEDDABLE and len(t.dual_graph.vertices) == 2
    cone = decide_whitney(corpus.cone_over_complete_graph(5))
    assert cone.status == INCONCLUSIVE and "dual matroid not local" in cone.reason
    assert decide_whitney(corpus.grid(2, 2, 2), True).status == EMBEDDABLE
    torus = decide_whitney(corpus.torus(), True)
    assert torus.status == INCONCLUSIVE and "homology" in torus.reason
    assert decide_whitney(corpus.tetrahedron()).status == INCONCLUSIVE


def test_decide_embeddability_examples():
    for c in (corpus.tetrahedron(), corpus.octahedron(), corpus.grid(2, 2, 1), bipyramid()):
        assert decide_embeddability(c, True).status == EMBEDDABLE
    fig = corpus.identify_edge_pair(corpus.grid(4, 2, 1), "z110", "z310")
    v = decide_embeddability(fig, True)
    assert v.status == NOT_EMBEDDABLE and v.witness["constraint"].startswith("edge:")


def test_verdict_invariants():
    for c in (corpus.tetrahedron(), bipyramid(), corpus.identify_edge_pair(corpus.grid(4, 2, 1), "z110", "z310")):
        v = decide_embeddability(c, True)
        d = v.to_dict()
        if v.status == EMBEDDABLE:
            assert v.rotation is not None and validate_certificate(c, v.rotation, v.dual_graph)["valid"]
        if v.status == NOT_EMBEDDABLE:
            assert d["witness"]
        assert set(d) >= {"status", "reason", "flags"}


def test_certificate_check_and_kirchhoff_on_spheres():
    for c in (corpus.tetrahedron(), corpus.octahedron()):
        v = decide_whitney(c, True)
        rep = validate_certificate(c, v.rotation, v.dual_graph)
        assert rep["valid"] and rep["dual_graph_matches"] and not rep["violated_constraints"]
        assert all(r["vertices"] - r["links"] + r["face_count"] == 2 for r in rep["links"].values())
        orient = {f: tuple(x) for f, x in v.details["orientation"].items()}
        assert _all_vectors_are_3flows(c, orient)


def test_open_edge_on_tetrahedron():
    c = corpus.tetrahedron()
    v = decide_whitney(c, True)
    first = v.rotation.sigma["ab"][0]
    opened, s = open_edge(c, "ab", [first], v.rotation)
    assert len(opened.faces_at_edge("ab·I")) == 1 and len(opened.faces_at_edge("ab·J")) == 1
    assert not local_connectivity_profile(opened)["locally_2connected"]
    with pytest.raises(RotationError):
        open_edge(c, "ab", list(v.rotation.sigma["ab"]), v.rotation)


def test_open_edge_separates_the_two_discs():
    c = corpus.two_discs_at_edge()
    trav = c.traversals("e")
    disc_a = [t for t in trav if t[0].startswith("f")]
    other = [t for t in trav if not t[0].startswith("f")]
    s = RotationSystem({x: tuple(c.traversals(x)) for x in c.edge_ids} | {"e": tuple(disc_a + other)})
    opened, _ = open_edge(c, "e", disc_a, s)
    assert sorted(opened.faces_at_edge("e·I")) == ["f1", "f4"]
    assert sorted(opened.faces_at_edge("e·J")) == ["g1", "g4"]
    assert matroid_equals(dual_matroid(opened), dual_matroid(c))


def test_verdict_serialization():
    v = Verdict(INCONCLUSIVE, "x", flags=["f"])
    assert v.to_dict() == {"status": INCONCLUSIVE, "reason": "x", "flags": ["f"]}
