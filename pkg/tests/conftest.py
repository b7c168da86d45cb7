import itertools

import pytest

from dualmat import corpus
from dualmat.complex import Complex2


def rowspace_circuits(rows, ncols, p=3):
    """Minimal nonempty supports of the F_p row space, by enumerating every combination."""
    supports = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = [sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(ncols)]
        s = frozenset(j for j, x in enumerate(v) if x)
        if s:
            supports.add(s)
    return {s for s in supports if not any(t < s for t in supports)}


def independent_rows(rows, p=3):
    """Greedy row basis mod p (keeps enumeration small)."""
    from dualmat import exact

    basis = []
    for r in rows:
        if exact.rank(basis + [list(r)], p) > len(basis):
            basis.append(list(r))
    return basis


@pytest.fixture(scope="session")
def small_corpus():
    names = ["tetrahedron", "octahedron", "cone-k5", "grid-221", "appendix-a", "two-discs", "torus",
             "a4-exact", "a4-adjusted"]
    return {n: corpus.CORPUS[n]() for n in names}


def two_triangles_at_vertex() -> Complex2:
    return Complex2(
        ["v", "a", "b", "c", "d"],
        [("va", "v", "a"), ("ab", "a", "b"), ("vb", "v", "b"),
         ("vc", "v", "c"), ("cd", "c", "d"), ("vd", "v", "d")],
        [("f", [("va", 1), ("ab", 1), ("vb", -1)]), ("g", [("vc", 1), ("cd", 1), ("vd", -1)])],
    )
