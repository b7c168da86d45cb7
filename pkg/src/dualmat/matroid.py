"""Represented matroids, read the way the dual matroid of a complex is read.

A ``Matroid`` holds a matrix whose columns are labelled by the ground set.
Its circuits are the minimal nonempty supports of vectors in the *row space*
of that matrix. This makes it the dual of the usual column matroid: a set is
independent iff deleting its columns does not drop the column rank, and

    rank(S) = |S| - colrank(E) + colrank(E - S).

Reading the incidence matrix as a column matroid instead would give the
tetrahedron rank 3, not the rank 1 of four parallel dual edges.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .complex import Complex2, incidence_matrix, link_graph

DEFAULT_CIRCUIT_BOUND = 20
DEFAULT_SCAN_BOUND = 12
CIRCUIT_SIGN_GUARD = 1 << 16


class MatroidSizeError(ValueError):
    """Ground set exceeds the bound for an exhaustive computation."""


class GroundSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Matroid:
    ground: tuple[str, ...]
    rows: tuple[tuple, ...]
    field: int = 3
    _cache: dict = dc_field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        exact.check_field(self.field)
        ground = tuple(str(g) for g in self.ground)
        if len(set(ground)) != len(ground):
            raise ValueError("duplicate ground set element")
        object.__setattr__(self, "ground", ground)
        rows = tuple(tuple(r) for r in exact.to_field(self.rows, self.field) if any(r))
        for r in rows:
            if len(r) != len(ground):
                raise ValueError("row length does not match ground set")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_column_representation(cls, ground, cols_matrix, field: int = 3) -> "Matroid":
        """The ordinary column matroid of ``cols_matrix``, stored in row-space form."""
        n = len(ground)
        basis = exact.nullspace(cols_matrix, n, field) if cols_matrix else [
            [int(i == j) for j in range(n)] for i in range(n)
        ]
        return cls(tuple(ground), tuple(tuple(r) for r in basis), field)

    # -- indexing helpers ---------------------------------------------------
    @property
    def index(self) -> dict[str, int]:
        idx = self._cache.get("index")
        if idx is None:
            idx = {g: i for i, g in enumerate(self.ground)}
            self._cache["index"] = idx
        return idx

    def _indices(self, subset: Iterable[str]) -> list[int]:
        idx = self.index
        out = []
        for s in subset:
            if s not in idx:
                raise KeyError(f"unknown element id: {s}")
            out.append(idx[s])
        return out

    def __len__(self) -> int:
        return len(self.ground)

    # -- rank ---------------------------------------------------------------
    def _colrank(self, cols: Sequence[int]) -> int:
        return exact.column_rank(self.rows, cols, self.field)

    @property
    def colrank(self) -> int:
        r = self._cache.get("colrank")
        if r is None:
            r = exact.rank(self.rows, self.field) if self.rows else 0
            self._cache["colrank"] = r
        return r

    @property
    def rank(self) -> int:
        return len(self.ground) - self.colrank

    def rank_of(self, subset: Iterable[str]) -> int:
        s = set(self._indices(subset))
        rest = [j for j in range(len(self.ground)) if j not in s]
        return len(s) - self.colrank + self._colrank(rest)

    def _rank_idx(self, s: set[int]) -> int:
        rest = [j for j in range(len(self.ground)) if j not in s]
        return len(s) - self.colrank + self._colrank(rest)

    def is_independent(self, subset: Iterable[str]) -> bool:
        s = list(subset)
        return self.rank_of(s) == len(set(s))

    def column_rank_of(self, subset: Iterable[str]) -> int:
        """Rank of the submatrix on the given columns (the other reading)."""
        return self._colrank(self._indices(subset))

    # -- bases and fundamental circuits ----------------------------------------
    def _reduced(self):
        red = self._cache.get("rref")
        if red is None:
            red = exact.rref(self.rows, self.field, len(self.ground)) if self.rows else ([], [])
            self._cache["rref"] = red
        return red

    def base(self) -> list[str]:
        """A base: the complement of a column basis."""
        _, pivots = self._reduced()
        p = set(pivots)
        return [g for j, g in enumerate(self.ground) if j not in p]

    def fundamental_circuits(self) -> dict[str, frozenset[str]]:
        """Element outside ``base()`` -> its fundamental circuit (support of an RREF row)."""
        R, pivots = self._reduced()
        return {
            self.ground[c]: frozenset(self.ground[j] for j, x in enumerate(row) if x)
            for row, c in zip(R, pivots)
        }

    def loops(self) -> list[str]:
        return sorted(next(iter(c)) for c in self.fundamental_circuits().values() if len(c) == 1)

    def coloops(self) -> list[str]:
        used = set()
        for row in self.rows:
            used.update(j for j, x in enumerate(row) if x)
        return [g for j, g in enumerate(self.ground) if j not in used]

    def components(self) -> list[list[str]]:
        parent = {g: g for g in self.ground}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for circ in self.fundamental_circuits().values():
            items = list(circ)
            for y in items[1:]:
                parent[find(y)] = find(items[0])
        groups: dict[str, list[str]] = {}
        for g in self.ground:
            groups.setdefault(find(g), []).append(g)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- circuits -------------------------------------------------------------
    def circuits(self, bound: int = DEFAULT_CIRCUIT_BOUND) -> list[frozenset[str]]:
        cached = self._cache.get("circuits")
        if cached is not None:
            return cached
        n = len(self.ground)
        if n > bound:
            raise MatroidSizeError(f"ground set of size {n} exceeds the circuit bound {bound}")
        found: list[int] = []
        for k in range(1, self.rank + 2):
            for combo in itertools.combinations(range(n), k):
                mask = 0
                for j in combo:
                    mask |= 1 << j
                if any(mask & c == c for c in found):
                    continue
                if self._rank_idx(set(combo)) < k:
                    found.append(mask)
        out = [frozenset(self.ground[j] for j in range(n) if m >> j & 1) for m in found]
        out.sort(key=lambda c: (len(c), sorted(self.index[x] for x in c)))
        self._cache["circuits"] = out
        return out

    def cocircuits(self, bound: int = DEFAULT_CIRCUIT_BOUND) -> list[frozenset[str]]:
        return self.dual().circuits(bound)

    # -- derived matroids ---------------------------------------------------
    def dual(self) -> "Matroid":
        n = len(self.ground)
        if not self.rows:
            basis = [[int(i == j) for j in range(n)] for i in range(n)]
        else:
            basis = exact.nullspace(self.rows, n, self.field)
        return Matroid(self.ground, tuple(tuple(r) for r in basis), self.field)

    def contract(self, subset: Iterable[str]) -> "Matroid":
        drop = set(self._indices(subset))
        keep = [j for j in range(len(self.ground)) if j not in drop]
        return Matroid(
            tuple(self.ground[j] for j in keep),
            tuple(tuple(r[j] for j in keep) for r in self.rows),
            self.field,
        )

    def delete(self, subset: Iterable[str]) -> "Matroid":
        drop = self._indices(subset)
        dset = set(drop)
        keep = [j for j in range(len(self.ground)) if j not in dset]
        if not self.rows or not drop:
            rows = self.rows
        else:
            order = drop + keep
            R, pivots = exact.rref(self.rows, self.field, len(self.ground), col_order=order)
            rows = [r for r, c in zip(R, pivots) if c not in dset]
        return Matroid(
            tuple(self.ground[j] for j in keep),
            tuple(tuple(r[j] for j in keep) for r in rows),
            self.field,
        )

    def restrict(self, subset: Iterable[str]) -> "Matroid":
        keep = set(subset)
        self._indices(keep)
        return self.delete([g for g in self.ground if g not in keep])

    def relabel(self, mapping: dict[str, str]) -> "Matroid":
        return Matroid(tuple(mapping.get(g, g) for g in self.ground), self.rows, self.field)

    def reorder(self, ground: Sequence[str]) -> "Matroid":
        idx = self._indices(ground)
        if len(idx) != len(self.ground):
            raise GroundSetMismatch("reorder needs a permutation of the ground set")
        return Matroid(tuple(ground), tuple(tuple(r[j] for j in idx) for r in self.rows), self.field)

    def to_dict(self, with_circuits: bool = True, bound: int = DEFAULT_CIRCUIT_BOUND) -> dict:
        out = {
            "ground": list(self.ground),
            "rank": self.rank,
            "field": self.field,
            "matrix": [[exact.signed(x, self.field) if self.field else str(x) for x in r] for r in self.rows],
        }
        if with_circuits and len(self.ground) <= bound:
            out["circuits"] = [sorted(c, key=self.index.get) for c in self.circuits(bound)]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Matroid":
        field_ = int(data.get("field", 3))
        ground = [str(g) for g in data["ground"]]
        if "matrix" in data:
            rows = [[Fraction(x) if field_ == 0 else int(x) for x in r] for r in data["matrix"]]
            return cls(tuple(ground), tuple(tuple(r) for r in rows), field_)
        if "circuits" in data:
            return matroid_from_circuits(ground, [set(map(str, c)) for c in data["circuits"]], field_)
        raise ValueError("matroid JSON needs a matrix or a circuit list")


def matroid_from_circuits(ground, circuits, field: int = 3) -> "Matroid":
    """Binary-style reconstruction: span the circuit vectors with +-1 signs chosen to be consistent.

    Only used to read matroid files given by circuits; the result is checked
    against the supplied circuit list.
    """
    ground = list(ground)
    idx = {g: i for i, g in enumerate(ground)}
    if field not in (2, 3):
        raise ValueError("circuit-list input is supported over F_2 and F_3 only")
    # search sign patterns for each circuit so the row space has exactly these circuits
    circs = [sorted(idx[x] for x in c) for c in circuits]
    target = sorted(sorted(c) for c in circs)

    def build(signs):
        rows = []
        for c, sg in zip(circs, signs):
            r = [0] * len(ground)
            for j, s in zip(c, sg):
                r[j] = s % field
            rows.append(r)
        return Matroid(tuple(ground), tuple(tuple(r) for r in rows), field)

    choices = [[(1,) + t for t in itertools.product((1, -1), repeat=len(c) - 1)] if field == 3 else [(1,) * len(c)] for c in circs]
    if math.prod(len(x) for x in choices) > CIRCUIT_SIGN_GUARD:
        raise MatroidSizeError("too many sign patterns; give the matroid by a matrix instead")
    for signs in itertools.product(*choices):
        m = build(signs)
        got = sorted(sorted(idx[x] for x in c) for c in m.circuits())
        if got == target:
            return m
    raise ValueError("circuit list is not representable with +-1 signs over the field")


# -- constructions from complexes -------------------------------------------------

def dual_matroid(c: Complex2, field: int = 3) -> Matroid:
    """Matroid on the faces represented by the edge/face incidence matrix (over F_3 by default)."""
    A = incidence_matrix(c)
    return Matroid(A.col_ids, A.rows, field)


def link_incidence(c: Complex2, v: str) -> tuple[list[str], list[tuple[str, int]], list[list[int]]]:
    """Signed node/link incidence of L(v): +1 where a corner arrives by an edge, -1 where it leaves."""
    lg = link_graph(c, v)
    nodes = list(lg.nodes)
    nidx = {e: i for i, e in enumerate(nodes)}
    rows = [[0] * len(lg.links) for _ in nodes]
    for j, ((f, i), a, b) in enumerate(lg.links):
        rows[nidx[a]][j] += 1
        rows[nidx[b]][j] -= 1
    return nodes, [key for key, _, _ in lg.links], rows


def link_dual_matroid(c: Complex2, v: str, field: int = 3, by_face: bool = True) -> Matroid:
    """M[v]: the bond matroid of the link graph at ``v``.

    When every face meets ``v`` in a single corner the ground set is relabelled by
    face ids. With ``by_face`` and a face having several corners at ``v``, the
    columns of one face are summed, which is the incidence matrix restricted to the
    edges and faces at ``v``.
    """
    nodes, links, rows = link_incidence(c, v)
    faces = [f for f, _ in links]
    if len(set(faces)) == len(faces):
        return Matroid(tuple(faces), tuple(tuple(r) for r in rows), field)
    if not by_face:
        return Matroid(tuple(f"{f}@{i}" for f, i in links), tuple(tuple(r) for r in rows), field)
    order = list(dict.fromkeys(faces))
    fidx = {f: i for i, f in enumerate(order)}
    agg = [[0] * len(order) for _ in rows]
    for r, row in enumerate(rows):
        for j, x in enumerate(row):
            agg[r][fidx[faces[j]]] += x
    return Matroid(tuple(order), tuple(tuple(r) for r in agg), field)


# -- equality -----------------------------------------------------------------------

def _standard_form(m: Matroid, base_cols: list[int]):
    """RREF with the given column basis as pivots, or None when it is not a column basis."""
    if not m.rows:
        return [] if not base_cols else None
    R, pivots = exact.rref(m.rows, m.field, len(m.ground), col_order=base_cols)
    if sorted(pivots) != sorted(base_cols) or len(R) != len(base_cols):
        return None
    return {c: row for row, c in zip(R, pivots)}


def _projectively_equal(a: Matroid, b: Matroid) -> bool:
    """Same row space up to scaling columns: a sufficient test for equality."""
    _, pivots = a._reduced()
    fa = _standard_form(a, pivots)
    fb = _standard_form(b, pivots)
    if fa is None or fb is None:
        return False
    if not pivots:
        return True
    p = a.field
    one = Fraction(1) if p == 0 else 1
    div = (lambda x, y: x / y) if p == 0 else (lambda x, y: (x * pow(y, -1, p)) % p)
    mul = (lambda x, y: x * y) if p == 0 else (lambda x, y: (x * y) % p)
    n = len(a.ground)
    nonbase = [j for j in range(n) if j not in set(pivots)]
    for c in pivots:
        for j in nonbase:
            if bool(fa[c][j]) != bool(fb[c][j]):
                return False
    # row scalings r[c] and column scalings s[j] with fb = r * fa * s on the support
    r: dict[int, object] = {}
    s: dict[int, object] = {}
    adj: dict[tuple, list] = {}
    for c in pivots:
        for j in nonbase:
            if fa[c][j]:
                adj.setdefault(("r", c), []).append(("c", j))
                adj.setdefault(("c", j), []).append(("r", c))
    for start in adj:
        kind, k = start
        if (kind == "r" and k in r) or (kind == "c" and k in s):
            continue
        if kind == "r":
            r[k] = one
        else:
            s[k] = one
        stack = [start]
        while stack:
            kind, k = stack.pop()
            for nb in adj[(kind, k)]:
                nkind, nk = nb
                if nkind == "c" and nk not in s:
                    s[nk] = div(fb[k][nk], mul(r[k], fa[k][nk]))
                    stack.append(nb)
                elif nkind == "r" and nk not in r:
                    r[nk] = div(fb[nk][k], mul(fa[nk][k], s[k]))
                    stack.append(nb)
    for c in pivots:
        for j in nonbase:
            if fa[c][j] and mul(mul(r[c], fa[c][j]), s[j]) != fb[c][j]:
                return False
    return True


def matroid_equals(a: Matroid, b: Matroid, bound: int = DEFAULT_CIRCUIT_BOUND) -> bool:
    """Equality of matroids on the same ground set.

    Over F_2 and F_3 (and whenever one side is regular, e.g. graphic) a matroid
    has a unique representation up to row operations and column scaling, so the
    projective comparison decides equality. Otherwise fall back to circuits.
    """
    if set(a.ground) != set(b.ground) or len(a.ground) != len(b.ground):
        raise GroundSetMismatch("matroids have different ground sets")
    b = b.reorder(a.ground) if b.ground != a.ground else b
    if a.rank != b.rank:
        return False
    if a.field == b.field and _projectively_equal(a, b):
        return True
    if a.field == b.field and a.field in (2, 3):
        return False
    return set(a.circuits(bound)) == set(b.circuits(bound))


def rank_functions_equal(a: Matroid, b: Matroid, bound: int = DEFAULT_SCAN_BOUND) -> bool:
    """Exhaustive rank comparison over all subsets (desk scale)."""
    if set(a.ground) != set(b.ground):
        raise GroundSetMismatch("matroids have different ground sets")
    n = len(a.ground)
    if n > bound:
        raise MatroidSizeError(f"ground set of size {n} exceeds the scan bound {bound}")
    g = list(a.ground)
    for k in range(n + 1):
        for combo in itertools.combinations(g, k):
            if a.rank_of(combo) != b.rank_of(combo):
                return False
    return True


# -- connectivity -------------------------------------------------------------------

def connectivity(m: Matroid, bound: int = DEFAULT_SCAN_BOUND) -> dict:
    """Exhaustive 1- and 2-separation scan.

    Separations are computed from matroid ranks and, independently, from column
    ranks of the representation (the form r(L)+r(R) <= r(F)+1 on the incidence
    matrix); connectivity is invariant under duality so both must agree.
    """
    n = len(m.ground)
    if n > bound:
        raise MatroidSizeError(f"ground set of size {n} exceeds the scan bound {bound}")
    g = list(m.ground)
    full_r = m.rank
    full_c = m.colrank
    two_seps = []
    one_seps = []
    first, rest = g[0], g[1:]
    for k in range(0, len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            L = [first, *combo]
            R = [x for x in g if x not in set(L)]
            if not R:
                continue
            lam = m.rank_of(L) + m.rank_of(R) - full_r
            lam_c = m.column_rank_of(L) + m.column_rank_of(R) - full_c
            if lam != lam_c:
                raise AssertionError("matroid-rank and column-rank connectivity disagree")
            if lam == 0:
                one_seps.append((sorted(L), sorted(R)))
            if lam <= 1 and len(L) >= 2 and len(R) >= 2:
                two_seps.append((sorted(L), sorted(R)))
    connected = not one_seps
    return {
        "connected": connected,
        "one_separations": one_seps,
        "two_separations": two_seps,
        "globally_3connected": connected and not two_seps,
    }


# -- locality -------------------------------------------------------------------------

def is_local(c: Complex2, field: int = 3) -> dict:
    m = dual_matroid(c, field)
    failing = []
    for v in c.vertices:
        faces = c.faces_at_vertex(v)
        if not faces:
            continue
        local = link_dual_matroid(c, v, field)
        restricted = m.restrict(faces)
        if not matroid_equals(local.reorder(restricted.ground), restricted):
            failing.append(v)
    return {"local": not failing, "failing_vertices": failing}


# -- isomorphism via circuits --------------------------------------------------------

def _circuit_profile(n: int, circuits: list[frozenset[int]]):
    prof = [[] for _ in range(n)]
    for c in circuits:
        for x in c:
            prof[x].append(len(c))
    return [tuple(sorted(p)) for p in prof]


def isomorphism(a: Matroid, b: Matroid, bound: int = DEFAULT_CIRCUIT_BOUND) -> dict | None:
    """A bijection of ground sets carrying circuits onto circuits, or None."""
    return circuit_isomorphism(list(a.ground), a.circuits(bound), list(b.ground), b.circuits(bound))


def circuit_isomorphism(ga, ca, gb, cb) -> dict | None:
    if len(ga) != len(gb) or len(ca) != len(cb):
        return None
    ia = {g: i for i, g in enumerate(ga)}
    ib = {g: i for i, g in enumerate(gb)}
    CA = [frozenset(ia[x] for x in c) for c in ca]
    CB = {frozenset(ib[x] for x in c) for c in cb}
    if sorted(map(len, CA)) != sorted(map(len, CB)):
        return None
    n = len(ga)
    pa = _circuit_profile(n, CA)
    pb = _circuit_profile(n, list(CB))
    if sorted(pa) != sorted(pb):
        return None
    order = sorted(range(n), key=lambda x: (sum(1 for q in pa if q == pa[x]), -len(pa[x])))
    by_elem = [[c for c in CA if x in c] for x in range(n)]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def ok(x):
        for c in by_elem[x]:
            if all(y in mapping for y in c):
                if frozenset(mapping[y] for y in c) not in CB:
                    return False
        return True

    def search(k):
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if y in used or pb[y] != pa[x]:
                continue
            mapping[x] = y
            used.add(y)
            if ok(x) and search(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if search(0):
        return {ga[x]: gb[y] for x, y in mapping.items()}
    return None
