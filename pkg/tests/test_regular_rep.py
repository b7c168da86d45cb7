import itertools
import random
from math import gcd

import pytest
from sympy import Matrix

from dualmat import corpus
from dualmat.complex import incidence_matrix
from dualmat.matroid import MatroidSizeError
from dualmat.regular_rep import (
    IntegerMatrix,
    circuit_support_vector,
    cocircuit_vectors,
    full_rank_over_Q_and_primes,
    is_regular_representation,
    is_totally_unimodular,
    matroid_over_field,
    orthogonal_lattice_basis,
    relevant_primes,
    spans_integer_lattice,
)

EXAMPLE = ((1, 1), (1, -1), (1, 0), (0, -1))
U24_ROWS = ((1, 0, 1, 1), (0, 1, 1, -1))


def k4_incidence():
    edges = list(itertools.combinations(range(4), 2))
    rows = [[(1 if v == a else -1 if v == b else 0) for a, b in edges] for v in range(4)]
    return IntegerMatrix(tuple(map(tuple, rows)), col_labels=tuple(f"{a}{b}" for a, b in edges))


def tetra_matrix():
    a = incidence_matrix(corpus.tetrahedron())
    return IntegerMatrix(a.rows, a.row_ids, a.col_ids)


def minor_gcd_oracle(rows, ncols):
    """Rows span Z^n iff the n x n minors have gcd 1."""
    g = 0
    for pick in itertools.combinations(range(len(rows)), ncols):
        g = gcd(g, int(Matrix([rows[i] for i in pick]).det()))
    return g == 1


def test_example_matrix():
    rep = is_regular_representation(EXAMPLE)
    assert rep["regular"]
    assert not is_totally_unimodular(EXAMPLE)
    # the rows span Q^2, so both columns are loops
    assert sorted(map(sorted, rep["matroid"].circuits())) == [["1"], ["2"]]
    assert circuit_support_vector(EXAMPLE, ["1", "2"]) is None
    assert circuit_support_vector(EXAMPLE, ["1"]) == [1, 0]


def test_identity_and_small_lattices():
    assert spans_integer_lattice([[1, 0], [0, 1]])
    assert not spans_integer_lattice([[2]])
    assert not full_rank_over_Q_and_primes([[2]])
    assert is_totally_unimodular([[1, 0], [0, 1]])


def test_spans_iff_full_rank_everywhere_random():
    rng = random.Random(7)
    agree = spans = 0
    for _ in range(200):
        m, n = rng.randint(1, 8), rng.randint(1, 6)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        s = spans_integer_lattice(rows)
        assert s == full_rank_over_Q_and_primes(rows)
        assert s == (m >= n and minor_gcd_oracle(rows, n))
        spans += s
        agree += 1
    assert agree == 200 and 0 < spans < 200


def test_field_matroids_agree_on_tetrahedron():
    a = tetra_matrix()
    circ = [set(matroid_over_field(a, p).circuits()) for p in (0, 3, 5)]
    assert circ[0] == circ[1] == circ[2]


def test_a_two_entry_separates_f2_from_q():
    found = None
    for rows in itertools.product(itertools.product((0, 1, -1, 2), repeat=2), repeat=1):
        if set(matroid_over_field(rows, 2).circuits()) != set(matroid_over_field(rows, 0).circuits()):
            found = rows
            break
    assert found is not None and 2 in found[0]


def test_empty_matrix():
    m = matroid_over_field(IntegerMatrix((), (), ()), 3)
    assert m.rank == 0 and len(m.ground) == 0


def test_circuit_vectors():
    a = tetra_matrix()
    for f1, f2 in itertools.combinations(a.col_labels, 2):
        v = circuit_support_vector(a, [f1, f2])
        assert v is not None and sorted(map(abs, v)) == [0, 0, 1, 1]
        assert next(x for x in v if x) == 1
    assert circuit_support_vector(a, list(a.col_labels[:3])) is None


def test_regularity_examples():
    assert is_regular_representation(k4_incidence())["regular"]
    assert is_totally_unimodular(k4_incidence())
    bad = is_regular_representation(U24_ROWS)
    assert not bad["regular"] and "F_2" in bad["failure"]
    assert 2 in relevant_primes(U24_ROWS)


def test_tu_guard():
    big = [[1] * 12 for _ in range(12)]
    with pytest.raises(MatroidSizeError):
        is_totally_unimodular(big, guard=1000)


def _orthogonal_minimal_supports(rows, n):
    vecs = [v for v in itertools.product((-1, 0, 1), repeat=n)
            if any(v) and all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)]
    supports = {frozenset(j for j, x in enumerate(v) if x) for v in vecs}
    return {s for s in supports if not any(t < s for t in supports)}


@pytest.mark.parametrize("make, count", [(tetra_matrix, 1), (k4_incidence, 7)])
def test_cocircuit_vectors_against_brute_force(make, count):
    a = make()
    vs = cocircuit_vectors(a)
    assert len(vs) == count
    got = {frozenset(j for j, x in enumerate(v) if x) for v in vs}
    assert got == _orthogonal_minimal_supports(a.rows, a.ncols)
    for v in vs:
        assert all(sum(x * y for x, y in zip(r, v)) == 0 for r in a.rows)


def test_orthogonal_lattice_of_identity_is_trivial():
    assert orthogonal_lattice_basis([[1, 0], [0, 1]]) == []


def test_json_round_trip():
    a = k4_incidence()
    assert IntegerMatrix.from_dict(a.to_dict()) == a
    with pytest.raises(ValueError):
        IntegerMatrix(((1, 2), (1,)))
