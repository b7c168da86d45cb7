import random

import networkx as nx
import pytest

from dualmat import corpus
from dualmat.complex import ComplexError, link_graph, local_connectivity_profile, serialize_complex
from dualmat.isomorphism import complexes_isomorphic
from dualmat.matroid import dual_matroid, matroid_equals
from dualmat.splitting import (
    all_lazy_edge_splits,
    components_at_edge,
    edge_split_complex,
    lazy_edge_split,
    lazy_split_complex,
    related_classes,
    split_complex,
    vertical_split,
)

from conftest import two_triangles_at_vertex

CORPUS_NAMES = ["tetrahedron", "octahedron", "cone-k5", "grid-221", "appendix-a", "two-discs", "torus",
                "a4-exact", "a4-adjusted"]


def test_vertical_split_two_triangles():
    res = vertical_split(two_triangles_at_vertex())
    hat = res.complex
    assert len(hat.vertices) == 6
    assert sorted(o for o in res.vertex_clone_map.values()).count("v") == 2
    g = nx.Graph()
    g.add_edges_from((t, h) for _, t, h in hat.edges)
    assert nx.number_connected_components(g) == 2


def test_vertical_split_identity_when_locally_connected():
    c = corpus.octahedron()
    res = vertical_split(c)
    assert res.complex == c
    assert all(k == v for k, v in res.vertex_clone_map.items())


def test_components_at_edge():
    t = corpus.tetrahedron()
    assert all(len(components_at_edge(t, e)) == 1 and len(components_at_edge(t, e)[0]) == 2 for e in t.edge_ids)
    assert components_at_edge(corpus.two_discs_at_edge(), "e") == [["f1", "f4"], ["g1", "g4"]]
    # faces at e in the lazy example are all related through v or w, so one component
    assert components_at_edge(corpus.lazy_split_example(), "e") == [["f1", "f2", "f3", "f4"]]


def test_related_classes_at_each_end():
    a = corpus.lazy_split_example()
    assert [sorted(f for f, _ in k) for k in related_classes(a, "e", "v")] == [["f1", "f2"], ["f3", "f4"]]
    assert [sorted(f for f, _ in k) for k in related_classes(a, "e", "w")] == [["f1", "f4"], ["f2", "f3"]]


def test_edge_split_two_discs():
    res = edge_split_complex(corpus.two_discs_at_edge())
    clones = [e for e, o in res.edge_clone_map.items() if o == "e"]
    assert len(clones) == 2
    assert all(len(res.complex.faces_at_edge(x)) == 2 for x in clones)


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "grid-221"])
def test_locally_2connected_inputs_are_fixed(name):
    c = corpus.CORPUS[name]()
    assert local_connectivity_profile(c)["locally_2connected"]
    assert split_complex(c).complex == c
    assert lazy_split_complex(c).complex == c


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_split_preserves_dual_matroid_and_is_idempotent(name):
    c = corpus.CORPUS[name]()
    hat = split_complex(c).complex
    assert matroid_equals(dual_matroid(hat), dual_matroid(c))
    assert split_complex(hat).complex == hat
    prof = local_connectivity_profile(hat)
    assert prof["locally_connected"]


def test_split_of_an_is_an_prime():
    for n in (3, 4, 5):
        for mode in ("exact", "adjusted"):
            hat = split_complex(corpus.an_complex(n, mode)).complex
            assert complexes_isomorphic(hat, corpus.an_prime(n), fix_faces=True)


def test_split_of_identified_grid_only_touches_the_glued_edge():
    g = corpus.grid(4, 2, 1)
    fig = corpus.identify_edge_pair(g, "z110", "z310")
    res = split_complex(fig)
    changed_v = {o for v, o in res.vertex_clone_map.items() if v != o}
    bad = [v for v in fig.vertices
           if nx.number_connected_components(nx.Graph(link_graph(fig, v).to_networkx())) > 1]
    assert changed_v <= set(bad) | {"v110", "v111"}


def test_lazy_split_two_results_but_unique_edge_split():
    a = corpus.lazy_split_example()
    at_v = lazy_split_complex(a, [("e", "v")]).complex
    at_w = lazy_split_complex(a, [("e", "w")]).complex
    assert not complexes_isomorphic(at_v, at_w, fix_faces=True)
    finals = all_lazy_edge_splits(a)
    classes = []
    for r in finals:
        if not any(complexes_isomorphic(r.complex, k, fix_faces=True) for k in classes):
            classes.append(r.complex)
    assert len(classes) == 2
    keys = {serialize_complex(edge_split_complex(a, random.Random(s)).complex) for s in range(8)}
    assert len(keys) == 1


def test_lazy_split_invalid_order_entries():
    a = corpus.lazy_split_example()
    with pytest.raises(ComplexError, match="unknown edge"):
        lazy_edge_split(a, [("nope", "v")])
    with pytest.raises(ComplexError, match="not an end"):
        lazy_edge_split(a, [("e", "v1")])


def test_lazy_equals_plain_when_classes_agree():
    # at e in the two-disc complex the v-related classes are the two discs, exactly the components at e
    c = corpus.two_discs_at_edge()
    lazy = lazy_split_complex(c, [("e", "v")]).complex
    assert complexes_isomorphic(lazy, split_complex(c).complex, fix_faces=True)


def test_split_invariance_random_complexes():
    rng = random.Random(20240)
    for _ in range(100):
        c = corpus.random_complex(rng)
        m = dual_matroid(c)
        hat = split_complex(c).complex
        assert matroid_equals(dual_matroid(hat), m)
        keys = set()
        for _ in range(5):
            es = edge_split_complex(c, random.Random(rng.random()))
            assert matroid_equals(dual_matroid(es.complex), m)
            keys.add(serialize_complex(es.complex))
        assert len(keys) == 1
