"""Exact linear algebra over cyclotomic scalars and integer systems mod N.

Matrices are plain lists of lists of CycScalar.  Gaussian elimination uses
exact field division, so ranks and kernels carry no tolerance at all.  The
integer solver decides linear systems over Z/N via a Smith normal form with
tracked transforms; it is what makes mu_N-cohomology decidable.
"""

from __future__ import annotations

from math import gcd

from .cyclotomic import CycScalar

__all__ = [
    "zeros",
    "identity_matrix",
    "matmul",
    "mat_vec",
    "transpose",
    "rref",
    "rank",
    "kernel_basis",
    "solve_columns",
    "invert",
    "is_invertible",
    "row_space_contains",
    "spans_equal",
    "solve_mod",
]


def zeros(rows: int, cols: int):
    z = CycScalar.zero()
    return [[z] * cols for _ in range(rows)]


def identity_matrix(n: int):
    z, one = CycScalar.zero(), CycScalar.one()
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    out = zeros(rows, cols)
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for k in range(inner):
            a = Ai[k]
            if a.is_zero():
                continue
            Bk = B[k]
            for j in range(cols):
                b = Bk[j]
                if not b.is_zero():
                    Oi[j] = Oi[j] + a * b
    return out


def mat_vec(A, v):
    out = [CycScalar.zero()] * len(A)
    for i, row in enumerate(A):
        acc = CycScalar.zero()
        for a, x in zip(row, v):
            if not a.is_zero() and not x.is_zero():
                acc = acc + a * x
        out[i] = acc
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def rref(A):
    """Reduced row echelon form. Returns (pivot column list, new matrix)."""
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not M[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots, M


def rank(A) -> int:
    return len(rref(A)[0])


def kernel_basis(A, ncols: int | None = None):
    """Basis of the right kernel of A, one vector per free column."""
    if not A:
        n = ncols or 0
        return [basis_vector(n, j) for j in range(n)]
    n = len(A[0])
    pivots, M = rref(A)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    zero, one = CycScalar.zero(), CycScalar.one()
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -M[r][f]
        basis.append(v)
    return basis


def basis_vector(n: int, j: int):
    v = [CycScalar.zero()] * n
    v[j] = CycScalar.one()
    return v


def solve_columns(C, B):
    """Solve C X = B for full-column-rank C; None if inconsistent."""
    rows = len(C)
    m = len(C[0])
    k = len(B[0])
    aug = [list(C[i]) + list(B[i]) for i in range(rows)]
    pivots, M = rref(aug)
    if any(p >= m for p in pivots) or len(pivots) != m:
        return None
    X = zeros(m, k)
    for r, c in enumerate(pivots):
        X[c] = M[r][m:]
    # consistency: rows beyond the pivots must be zero
    for i in range(len(pivots), rows):
        if any(not x.is_zero() for x in M[i][m:]):
            return None
    return X


def invert(A):
    n = len(A)
    X = solve_columns(A, identity_matrix(n))
    return X


def is_invertible(A) -> bool:
    return len(A) == len(A[0]) and rank(A) == len(A)


def row_space_contains(rref_rows, pivots, v) -> bool:
    """Whether v lies in the row space given by an rref basis."""
    v = list(v)
    for r, c in enumerate(pivots):
        if not v[c].is_zero():
            f = v[c]
            v = [x - f * y for x, y in zip(v, rref_rows[r])]
    return all(x.is_zero() for x in v)


def spans_equal(rows1, rows2) -> bool:
    p1, M1 = rref(rows1)
    p2, M2 = rref(rows2)
    if len(p1) != len(p2):
        return False
    return all(row_space_contains(M1, p1, v) for v in rows2) and all(
        row_space_contains(M2, p2, v) for v in rows1
    )


# -- integer linear systems mod N ------------------------------------------


def _snf_with_transform(A):
    """Smith normal form D = U A V; returns (D, U, V) as lists of lists."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, f):  # row_i -= f*row_j
        D[i] = [a - f * b for a, b in zip(D[i], D[j])]
        U[i] = [a - f * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, f):  # col_i -= f*col_j
        for row in D:
            row[i] -= f * row[j]
        for row in V:
            row[i] -= f * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot of minimal magnitude
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t] % D[t][t]:
                    row_op(i, t, D[i][t] // D[t][t])
                    swap_rows(t, i)
                    done = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // D[t][t])
            for j in range(t + 1, n):
                if D[t][j] % D[t][t]:
                    col_op(j, t, D[t][j] // D[t][t])
                    swap_cols(t, j)
                    done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // D[t][t])
        t += 1
    return D, U, V


def solve_mod(A, b, N: int):
    """One solution x of A x = b (mod N), or None.

    A is a list of integer rows, b a list of integers.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return [0] * n if all(v % N == 0 for v in b) else None
    D, U, V = _snf_with_transform(A)
    c = [sum(U[i][j] * b[j] for j in range(m)) % N for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d:
            g = gcd(d, N)
            if c[i] % g:
                return None
            dn, cn, Nn = d // g, c[i] // g, N // g
            y[i] = (cn * pow(dn, -1, Nn)) % Nn if Nn > 1 else 0
        else:
            if c[i] % N:
                return None
    x = [sum(V[i][j] * y[j] for j in range(n)) % N for i in range(n)]
    return x
