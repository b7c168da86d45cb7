"""Integer matrices as matroid representations.

A matrix represents, over a field k, the matroid whose circuits are the
minimal supports of its k-row space. It is a regular representation when
every circuit is the support of a {0,+-1} vector in the integer row lattice
and those vectors generate the lattice.

Field sweeps stop at the Hadamard bound H of the matrix. A k x k minor
(k at most the smaller dimension) has absolute value at most H, so a prime
above H divides no nonzero minor, and the rank of every column subset over
F_p then agrees with its rank over Q.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from . import exact
from .matroid import Matroid, MatroidSizeError

TU_GUARD = 2_000_000


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        width = len(rows[0]) if rows else len(self.col_labels)
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        if not self.col_labels:
            object.__setattr__(self, "col_labels", tuple(str(j + 1) for j in range(width)))
        if not self.row_labels:
            object.__setattr__(self, "row_labels", tuple(f"r{i + 1}" for i in range(len(rows))))
        if len(self.col_labels) != width or len(self.row_labels) != len(rows):
            raise ValueError("label count does not match the matrix shape")

    @property
    def ncols(self) -> int:
        return len(self.col_labels)

    def to_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows], "row_labels": list(self.row_labels),
                "col_labels": list(self.col_labels)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "IntegerMatrix":
        return cls(tuple(map(tuple, data["rows"])), tuple(data.get("row_labels", ())),
                   tuple(data.get("col_labels", ())))


def _as_matrix(a) -> IntegerMatrix:
    return a if isinstance(a, IntegerMatrix) else IntegerMatrix(tuple(map(tuple, a)))


def relevant_primes(a) -> list[int]:
    a = _as_matrix(a)
    return exact.primes_upto(exact.hadamard_bound([list(r) for r in a.rows]) if a.rows else 1)


def spans_integer_lattice(rows) -> bool:
    """Do the rows generate all of Z^S?  Via the diagonal (Smith) form."""
    a = _as_matrix(rows)
    if a.ncols == 0:
        return True
    inv = exact.smith_invariants([list(r) for r in a.rows])
    return len(inv) == a.ncols and all(d == 1 for d in inv)


def full_rank_over_Q_and_primes(rows) -> bool:
    """Full column rank over Q and over every F_p with p up to the Hadamard bound."""
    a = _as_matrix(rows)
    mat = [list(r) for r in a.rows]
    if exact.rank(mat, exact.Q) != a.ncols:
        return False
    return all(exact.rank(mat, p) == a.ncols for p in relevant_primes(a))


def matroid_over_field(a, field: int) -> Matroid:
    """``field`` is 0 for Q or a prime."""
    a = _as_matrix(a)
    return Matroid(a.col_labels, a.rows, field)


def _rowspace_on(a: IntegerMatrix, support: set[int]) -> list[list[Fraction]]:
    """Basis (over Q) of the row-space vectors vanishing outside ``support``, restricted to it."""
    outside = [j for j in range(a.ncols) if j not in support]
    # coefficient vectors x with x.A zero on the outside columns
    trans = [[a.rows[i][j] for i in range(len(a.rows))] for j in outside]
    coeffs = exact.nullspace(trans, len(a.rows), exact.Q) if outside else \
        [[int(i == k) for i in range(len(a.rows))] for k in range(len(a.rows))]
    vecs = [[sum(Fraction(x) * a.rows[i][j] for i, x in enumerate(c)) for j in range(a.ncols)] for c in coeffs]
    basis, _ = exact.rref([v for v in vecs if any(v)], exact.Q, a.ncols)
    return [r for r in basis if any(r)]


def circuit_support_vector(a, support: Iterable[str]) -> list[int] | None:
    """A {0,+-1} vector of the integer row lattice with exactly this support, if the support is a circuit."""
    a = _as_matrix(a)
    idx = {x: j for j, x in enumerate(a.col_labels)}
    cols = {idx[x] for x in support}
    if not cols:
        return None
    basis = _rowspace_on(a, cols)
    if len(basis) != 1:
        return None  # empty, or the support is not minimal
    vec = exact.primitive(basis[0])
    if {j for j, x in enumerate(vec) if x} != cols:
        return None
    if any(abs(x) > 1 for x in vec):
        return None
    if not exact.lattice_contains(exact.hermite_basis([list(r) for r in a.rows]), vec):
        return None
    return vec


def is_regular_representation(a) -> dict:
    """Same matroid over Q and over every relevant prime, then the direct lattice certificate."""
    a = _as_matrix(a)
    m = matroid_over_field(a, exact.Q)
    circuits = sorted(m.circuits(), key=lambda c: (len(c), sorted(c)))
    for p in relevant_primes(a):
        mp = matroid_over_field(a, p)
        if set(mp.circuits()) != set(circuits):
            return {"regular": False, "matroid": None, "failure": f"matroid over F_{p} differs from the one over Q"}
    vectors = []
    for o in circuits:
        v = circuit_support_vector(a, o)
        if v is None:
            return {"regular": False, "matroid": m,
                    "failure": f"no {{0,+-1}} lattice vector supported on circuit {sorted(o)}"}
        vectors.append(v)
    lattice = exact.hermite_basis(vectors)
    for label, row in zip(a.row_labels, a.rows):
        if not exact.lattice_contains(lattice, row):
            return {"regular": False, "matroid": m, "failure": f"row {label} not generated by circuit vectors"}
    return {"regular": True, "matroid": m, "failure": "", "circuit_vectors": vectors,
            "primes_checked": relevant_primes(a)}


def is_totally_unimodular(a, guard: int = TU_GUARD) -> bool:
    a = _as_matrix(a)
    m, n = len(a.rows), a.ncols
    total = sum(comb(m, k) * comb(n, k) for k in range(1, min(m, n) + 1))
    if total > guard:
        raise MatroidSizeError(f"{total} square submatrices exceed the guard {guard}")
    if any(x not in (-1, 0, 1) for r in a.rows for x in r):
        return False
    for k in range(2, min(m, n) + 1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                if exact.det([[a.rows[i][j] for j in cs] for i in rs]) not in (-1, 0, 1):
                    return False
    return True


def cocircuit_vectors(a) -> list[list[int]]:
    """One {0,+-1} vector per cocircuit, orthogonal to all rows; checked to generate the orthogonal lattice."""
    a = _as_matrix(a)
    report = is_regular_representation(a)
    if not report["regular"]:
        raise ValueError(f"not a regular representation: {report['failure']}")
    m = report["matroid"]
    idx = {x: j for j, x in enumerate(a.col_labels)}
    out = []
    for d in sorted(m.cocircuits(), key=lambda c: (len(c), sorted(c))):
        cols = sorted(idx[x] for x in d)
        sub = [[r[j] for j in cols] for r in a.rows]
        ker = exact.nullspace(sub, len(cols), exact.Q) if a.rows else [[1]]
        if len(ker) != 1:
            raise AssertionError(f"cocircuit {sorted(d)} has no unique orthogonal vector")
        w = [0] * a.ncols
        for j, x in zip(cols, exact.primitive(ker[0])):
            w[j] = x
        if any(abs(x) > 1 for x in w) or any(x == 0 for x in (w[j] for j in cols)):
            raise AssertionError(f"orthogonal vector on {sorted(d)} is not {{0,+-1}} with full support")
        out.append(w)
    kernel = exact.integer_kernel([list(r) for r in a.rows], a.ncols)
    mine = exact.hermite_basis(out)
    if not all(exact.lattice_contains(mine, k) for k in kernel):
        raise AssertionError("cocircuit vectors do not generate the orthogonal lattice")
    return out


def orthogonal_lattice_basis(a) -> list[list[int]]:
    a = _as_matrix(a)
    return exact.integer_kernel([list(r) for r in a.rows], a.ncols)
