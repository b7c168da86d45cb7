"""Deterministic generators for the complexes used throughout the tests and CLI."""
from __future__ import annotations

import itertools
import random

from .complex import Complex2, identify_cells


def _triangle(edges: dict[tuple[str, str], str], a: str, b: str, c: str):
    walk = []
    for x, y in ((a, b), (b, c), (c, a)):
        if (x, y) in edges:
            walk.append((edges[(x, y)], 1))
        else:
            walk.append((edges[(y, x)], -1))
    return walk


def _simplicial(vertices, triangles, name=lambda a, b: f"{a}{b}", face_name=None) -> Complex2:
    """Triangles given as vertex triples; edges are directed from the earlier vertex."""
    order = {v: i for i, v in enumerate(vertices)}
    edges: dict[tuple[str, str], str] = {}
    for tri in triangles:
        for x, y in itertools.combinations(tri, 2):
            a, b = sorted((x, y), key=order.get)
            edges.setdefault((a, b), name(a, b))
    faces = []
    for tri in triangles:
        fid = face_name(tri) if face_name else "".join(tri)
        faces.append((fid, _triangle(edges, *tri)))
    return Complex2(vertices, [(e, a, b) for (a, b), e in edges.items()], faces)


def tetrahedron() -> Complex2:
    return _simplicial(list("abcd"), [("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")])


def octahedron() -> Complex2:
    poles = ["N", "S"]
    ring = ["a", "b", "c", "d"]
    tris = []
    for p in poles:
        for i in range(4):
            tris.append((p, ring[i], ring[(i + 1) % 4]))
    return _simplicial(poles + ring, tris)


def cone_over_complete_graph(n: int = 5) -> Complex2:
    if n < 2:
        raise ValueError("cone needs n >= 2")
    base = [f"u{i}" for i in range(n)]
    tris = [("apex", a, b) for a, b in itertools.combinations(base, 2)]
    return _simplicial(
        ["apex", *base],
        tris,
        name=lambda a, b: f"{a}-{b}",
        face_name=lambda t: f"{t[1]}{t[2]}".replace("u", "t"),
    )


def torus() -> Complex2:
    """Seven-vertex triangulated torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    verts = [f"p{i}" for i in range(7)]
    tris = []
    for i in range(7):
        tris.append((verts[i], verts[(i + 1) % 7], verts[(i + 3) % 7]))
        tris.append((verts[i], verts[(i + 2) % 7], verts[(i + 3) % 7]))
    return _simplicial(verts, tris, name=lambda a, b: f"{a}{b}", face_name=lambda t: "t" + "".join(x[1:] for x in t))


# -- grids ----------------------------------------------------------------------------

AXES = "xyz"


def grid_vertex(p) -> str:
    return "v" + "".join(map(str, p))


def grid_edge(p, axis: int) -> str:
    return f"{AXES[axis]}{''.join(map(str, p))}"


def grid(a: int, b: int, c: int) -> Complex2:
    """The a x b x c box of unit cubes; faces are all unit squares (the 4-cycles)."""
    dims = (a, b, c)
    if min(dims) < 0 or max(dims) > 9:
        raise ValueError("grid dimensions must lie in 0..9")
    points = list(itertools.product(*(range(d + 1) for d in dims)))
    vertices = [grid_vertex(p) for p in points]
    edges = []
    for p in points:
        for ax in range(3):
            if p[ax] < dims[ax]:
                q = list(p)
                q[ax] += 1
                edges.append((grid_edge(p, ax), grid_vertex(p), grid_vertex(q)))
    faces = []
    for d1, d2 in ((0, 1), (0, 2), (1, 2)):
        for p in points:
            if p[d1] < dims[d1] and p[d2] < dims[d2]:
                p1 = list(p)
                p1[d1] += 1
                p2 = list(p)
                p2[d2] += 1
                walk = [
                    (grid_edge(p, d1), 1),
                    (grid_edge(p1, d2), 1),
                    (grid_edge(p2, d1), -1),
                    (grid_edge(p, d2), -1),
                ]
                faces.append((f"{AXES[d1]}{AXES[d2]}{''.join(map(str, p))}", walk))
    return Complex2(vertices, edges, faces)


def identify_edge_pair(c: Complex2, e1: str, e2: str, flip: bool = False) -> Complex2:
    """Glue ``e2`` onto ``e1`` (head to head, or head to tail when ``flip``)."""
    t1, h1 = c.ends(e1)
    t2, h2 = c.ends(e2)
    if flip:
        t2, h2 = h2, t2
    groups = [[t1, t2], [h1, h2]]
    return identify_cells(c, [g for g in groups if g[0] != g[1]], [[e1, e2]])


def grid_edge_pairs(c: Complex2, disjoint: bool = True) -> list[tuple[str, str]]:
    """Pairs of parallel grid edges (same axis), optionally with disjoint endpoints."""
    out = []
    ids = c.edge_ids
    for i, e in enumerate(ids):
        for f in ids[i + 1:]:
            if e[0] != f[0]:
                continue
            if disjoint and set(c.ends(e)) & set(c.ends(f)):
                continue
            out.append((e, f))
    return out


# -- Appendix-style and obstruction complexes ----------------------------------------

def lazy_split_example() -> Complex2:
    """Four triangles around an edge e = vw, with the ring v1..v4 closing them up in pairs.

    The pairing at v is f1/f2 and f3/f4 while at w it is f2/f3 and f4/f1, so e
    is a cut vertex of both link graphs but there is one component at e.
    """
    V = ["v", "w", "v1", "v2", "v3", "v4"]
    E = [("e", "v", "w")]
    for i in range(1, 5):
        E.append((f"e{i}[v]", "v", f"v{i}"))
        E.append((f"e{i}[w]", "w", f"v{i}"))
    for k in range(1, 5):
        E.append((f"e{k}", f"v{k}", f"v{k % 4 + 1}"))
    F = []
    for i in range(1, 5):
        F.append((f"f{i}", [("e", 1), (f"e{i}[w]", 1), (f"e{i}[v]", -1)]))

    def tri(a, r, b):  # a: spoke to v_k, r: ring edge v_k -> v_k+1, b: spoke to v_k+1
        return [(a, 1), (r, 1), (b, -1)]

    F.append(("g12", tri("e1[v]", "e1", "e2[v]")))
    F.append(("g34", tri("e3[v]", "e3", "e4[v]")))
    F.append(("h23", tri("e2[w]", "e2", "e3[w]")))
    F.append(("h41", tri("e4[w]", "e4", "e1[w]")))
    return Complex2(V, E, F)


def two_discs_at_edge() -> Complex2:
    """Two wheels of four triangles around a common centre v, sharing the spoke e = vw."""
    V = ["v", "w", "a1", "a2", "a3", "b1", "b2", "b3"]
    E = [("e", "v", "w")]
    faces = []
    for disc in "ab":
        rim = ["w", f"{disc}1", f"{disc}2", f"{disc}3"]
        for r in rim[1:]:
            E.append((f"s{r}", "v", r))
        spokes = ["e"] + [f"s{r}" for r in rim[1:]]
        for k in range(4):
            x, y = rim[k], rim[(k + 1) % 4]
            E.append((f"r{disc}{k}", x, y))
            faces.append((f"{'f' if disc == 'a' else 'g'}{k + 1}", [(spokes[k], 1), (f"r{disc}{k}", 1), (spokes[(k + 1) % 4], -1)]))
    return Complex2(V, E, faces)


AN_MODES = ("exact", "adjusted")


def an_prime(n: int) -> Complex2:
    """The pre-identification complex: detoured base cycle plus a disjoint copy with one face."""
    if n < 3:
        raise ValueError("n must be at least 3")
    V = [f"v{k}" for k in range(1, n + 1)]
    E = [(f"c{k}", f"v{k}", f"v{k % n + 1}") for k in range(1, n + 1)]
    F = []
    for i in range(1, n + 1):
        walk = []
        for k in range(1, n + 1):
            if k != i:
                for j in range(1, n + 1):
                    if j == i:
                        continue
                    d = f"d{i}_{k}_{j}"
                    x = f"x{i}_{k}_{j}"
                    V.append(x)
                    E.append((d, f"v{k}", x))
                    walk += [(d, 1), (d, -1)]
            walk.append((f"c{k}", 1))
        F.append((f"e{i}", walk))
    V += [f"w{k}" for k in range(1, n + 1)]
    E += [(f"cc{k}", f"w{k}", f"w{k % n + 1}") for k in range(1, n + 1)]
    F.append(("l", [(f"cc{k}", 1) for k in range(1, n + 1)]))
    return Complex2(V, E, F)


def an_identifications(n: int, mode: str) -> list[list[str]]:
    if mode not in AN_MODES:
        raise ValueError(f"mode must be one of {AN_MODES}")
    groups = []
    for i in range(1, n + 1):
        skip = {i} if mode == "exact" else {i, i % n + 1}
        groups.append([f"w{i}"] + [f"x{ip}_{i}_{i}" for ip in range(1, n + 1) if ip not in skip])
    return groups


def an_complex(n: int, mode: str) -> Complex2:
    """The obstruction walk-complex; ``mode`` picks the identification pattern (no default)."""
    return identify_cells(an_prime(n), an_identifications(n, mode))


def random_complex(rng: random.Random, max_faces: int = 12) -> Complex2:
    """Random small simplicial complex: triangles on few vertices, plus occasional quotients."""
    nv = rng.randint(4, 7)
    verts = [f"r{i}" for i in range(nv)]
    all_tris = list(itertools.combinations(verts, 3))
    k = rng.randint(1, min(max_faces, len(all_tris)))
    tris = rng.sample(all_tris, k)
    return _simplicial(verts, tris, name=lambda a, b: f"{a}{b}")


CORPUS = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "cone-k5": lambda: cone_over_complete_graph(5),
    "grid-221": lambda: grid(2, 2, 1),
    "grid-222": lambda: grid(2, 2, 2),
    "grid-421": lambda: grid(4, 2, 1),
    "appendix-a": lazy_split_example,
    "two-discs": two_discs_at_edge,
    "torus": torus,
    "a4-exact": lambda: an_complex(4, "exact"),
    "a4-adjusted": lambda: an_complex(4, "adjusted"),
}
