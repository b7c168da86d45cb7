"""Exact linear algebra over prime fields, the rationals and the integers.

Field arguments are an integer ``p``: a prime selects F_p (entries stored as
ints in ``range(p)``), ``0`` selects Q (entries stored as Fractions).
Everything is pure Python with arbitrary precision ints.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, prod

Q = 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def check_field(p: int) -> None:
    if p != Q and not is_prime(p):
        raise ValueError(f"field must be 0 (rationals) or a prime, got {p}")


def coerce(x, p: int):
    """Map an integer (or Fraction) into the field ``p``."""
    if p == Q:
        return Fraction(x)
    if isinstance(x, Fraction):
        return (x.numerator * pow(x.denominator, -1, p)) % p
    return int(x) % p


def to_field(rows, p: int) -> list[list]:
    return [[coerce(x, p) for x in row] for row in rows]


def _inv(x, p: int):
    if p == Q:
        return 1 / x
    return pow(x, -1, p)


def _sub_scaled(target: list, source: list, factor, p: int, start: int = 0) -> None:
    if p == Q:
        for j in range(start, len(target)):
            if source[j]:
                target[j] -= factor * source[j]
    else:
        for j in range(start, len(target)):
            if source[j]:
                target[j] = (target[j] - factor * source[j]) % p


def rref(rows, p: int, ncols: int | None = None, col_order=None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of ``R[i]``. ``col_order`` fixes the
    order in which columns are tried as pivots.
    """
    M = to_field(rows, p)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    order = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in order:
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = _inv(M[r][c], p)
        M[r] = [x * inv for x in M[r]] if p == Q else [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                _sub_scaled(M[i], M[r], M[i][c], p)
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, p: int) -> int:
    M = to_field(rows, p)
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = _inv(M[r][c], p)
        for i in range(r + 1, len(M)):
            if M[i][c]:
                _sub_scaled(M[i], M[r], M[i][c] * inv, p, c)
        r += 1
        if r == len(M):
            break
    return r


def column_rank(rows, cols, p: int) -> int:
    """Rank of the submatrix on the given column indices."""
    cols = list(cols)
    if not cols or not rows:
        return 0
    return rank([[row[j] for j in cols] for row in rows], p)


def nullspace(rows, ncols: int, p: int) -> list[list]:
    """Basis of ``{x : rows . x = 0}`` over the field."""
    R, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    zero = Fraction(0) if p == Q else 0
    one = Fraction(1) if p == Q else 1
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for i, c in enumerate(pivots):
            x[c] = -R[i][f] if p == Q else (-R[i][f]) % p
        basis.append(x)
    return basis


def signed(x: int, p: int) -> int:
    """Symmetric representative of a residue mod p (so 2 -> -1 in F_3)."""
    if p == Q:
        return x
    x %= p
    return x - p if x > p // 2 else x


# -- integer arithmetic ---------------------------------------------------------

def ext_gcd(m: int, n: int) -> tuple[int, int, int]:
    """Return ``(d, alpha, beta)`` with ``alpha*m - beta*n == d == gcd(m, n)``."""
    old_r, r = m, n
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, -old_t


def content(vec) -> int:
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    return g


def primitive(vec) -> list[int]:
    """Clear denominators, divide by the content, make first nonzero entry positive."""
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = content(ints)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def smith_invariants(rows) -> list[int]:
    """Nonzero invariant factors of an integer matrix (diagonal canonical form)."""
    M = [[int(x) for x in row] for row in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    for j in range(t, n):
                        M[i][j] -= q * M[t][j]
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    for i in range(t, m):
                        M[i][j] -= q * M[i][t]
                    if M[t][j]:
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % M[t][t]),
                    None,
                )
                if bad is None:
                    break
                # fold the offending row in so the pivot shrinks
                i, _ = bad
                for j in range(t, n):
                    M[t][j] += M[i][j]
                continue
            nz = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            nz += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, i, j = min(nz)
            M[t], M[i] = M[i], M[t]
            for row in M:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def hermite_basis(rows) -> list[list[int]]:
    """Row-style Hermite normal form: a Z-basis of the row lattice in echelon form."""
    M = [[int(x) for x in row] for row in rows if any(row)]
    if not M:
        return []
    n = len(M[0])
    basis: list[list[int]] = []
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(M[k][c]))
            M[r], M[i] = M[i], M[r]
            others = [k for k in range(r + 1, len(M)) if M[k][c]]
            if not others:
                break
            for k in others:
                q = M[k][c] // M[r][c]
                M[k] = [a - q * b for a, b in zip(M[k], M[r])]
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            for k in range(r):
                q = M[k][c] // M[r][c]
                if q:
                    M[k] = [a - q * b for a, b in zip(M[k], M[r])]
            r += 1
    basis = [row for row in M[:r]]
    return basis


def lattice_contains(basis, vec) -> bool:
    """Membership of an integer vector in the lattice spanned by an HNF basis."""
    v = [int(x) for x in vec]
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def integer_kernel(rows, ncols: int) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : rows . x = 0}`` via unimodular column operations."""
    A = [[int(x) for x in row] for row in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of U

    def colop_sub(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def colswap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        U[a], U[b] = U[b], U[a]

    c = 0
    for row_index in range(len(A)):
        if c >= ncols:
            break
        row = A[row_index]
        while True:
            nz = [j for j in range(c, ncols) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda k: abs(row[k]))
            colswap(c, j)
            others = [k for k in range(c + 1, ncols) if row[k]]
            if not others:
                c += 1
                break
            for k in others:
                colop_sub(k, c, row[k] // row[c])
    return [U[j] for j in range(c, ncols)]


def det(rows) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    M = [[int(x) for x in row] for row in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def hadamard_bound(rows) -> int:
    """Upper bound on |det| of any maximal square submatrix (product of the largest column norms)."""
    if not rows:
        return 1
    m, n = len(rows), len(rows[0])
    k = min(m, n)
    if m >= n:
        norms = sorted((sum(int(rows[i][j]) ** 2 for i in range(m)) for j in range(n)), reverse=True)
    else:
        norms = sorted((sum(int(x) ** 2 for x in row) for row in rows), reverse=True)
    sq = prod(norms[:k])
    return isqrt(sq) + (0 if isqrt(sq) ** 2 == sq else 1)
