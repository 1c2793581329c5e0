"""Brute-force oracles, deliberately independent of the main code paths.

These recompute structural facts straight from the raw tables: associativity
by a literal triple loop over basis products, center dimension by a numeric
commutation solve, regular classes by definition chasing, and the simple
count as the dimension of operators commuting with both left and right
regular multiplications.  They exist to cross-check the exact machinery, so
they share none of its logic.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "oracle_associativity",
    "oracle_center_dim",
    "oracle_regular_class_count",
    "oracle_simple_count",
]


def _structure(table_kind: str, group, conductor: int, exps, gset=None):
    """(dim, products) where products[i][j] = (k, phase) or None, built inline."""
    n = group.order
    roots = np.exp(2j * np.pi * np.arange(conductor) / conductor)
    if table_kind == "tga":
        dim = n

        def prod(i, j):
            return int(group.mul[i, j]), roots[int(exps[i, j]) % conductor]

        return dim, prod
    if table_kind == "double":
        m = gset.size
        dim = n * m

        def prod(i, j):
            g, s = i % n, i // n
            h, t = j % n, j // n
            if int(gset.action[s, h]) != t:
                return None
            return t * n + int(group.mul[g, h]), roots[int(exps[t, g, h]) % conductor]

        return dim, prod
    raise ValueError(f"unknown table kind {table_kind!r}")


def oracle_associativity(table_kind, group, conductor, exps, gset=None):
    """First non-associative basis triple, or None; literal triple loop."""
    dim, prod = _structure(table_kind, group, conductor, exps, gset)
    for i in range(dim):
        for j in range(dim):
            ij = prod(i, j)
            for k in range(dim):
                jk = prod(j, k)
                left = None
                if ij is not None:
                    r = prod(ij[0], k)
                    if r is not None:
                        left = (r[0], ij[1] * r[1])
                right = None
                if jk is not None:
                    r = prod(i, jk[0])
                    if r is not None:
                        right = (r[0], jk[1] * r[1])
                if (left is None) != (right is None):
                    return (i, j, k)
                if left is not None and (
                    left[0] != right[0] or abs(left[1] - right[1]) > 1e-9
                ):
                    return (i, j, k)
    return None


def _numeric_mult_matrices(table_kind, group, conductor, exps, gset=None):
    dim, prod = _structure(table_kind, group, conductor, exps, gset)
    left = [np.zeros((dim, dim), dtype=complex) for _ in range(dim)]
    right = [np.zeros((dim, dim), dtype=complex) for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            p = prod(i, j)
            if p is not None:
                left[i][p[0], j] += p[1]
                right[j][p[0], i] += p[1]
    return dim, left, right


def _null_dim(constraints, nparams, tol=1e-9):
    """Dimension of the joint kernel, intersecting constraint blocks one at a time."""
    basis = np.eye(nparams, dtype=complex)
    for block in constraints:
        if basis.shape[1] == 0:
            return 0
        mat = block @ basis
        u, s, vh = np.linalg.svd(mat, full_matrices=True)
        cutoff = tol * max(mat.shape) * max(float(s[0]) if s.size else 0.0, 1.0)
        rank = int(np.sum(s > cutoff))
        basis = basis @ vh[rank:].conj().T
    return basis.shape[1]


def oracle_center_dim(table_kind, group, conductor, exps, gset=None) -> int:
    """dim{x : xb = bx for all basis b}, solved numerically."""
    dim, left, right = _numeric_mult_matrices(table_kind, group, conductor, exps, gset)
    constraints = [left[b] - right[b] for b in range(dim)]
    return _null_dim(constraints, dim)


def oracle_regular_class_count(group, conductor, exps) -> int:
    """Number of conjugacy classes all of whose members pass the definition
    alpha(g, x) = alpha(x, g) over a brute-force centralizer."""
    n = group.order
    seen = set()
    count = 0
    for g in range(n):
        if g in seen:
            continue
        members = set()
        for x in range(n):
            xg = int(group.mul[x, g])
            members.add(int(group.mul[xg, group.inv[x]]))
        seen |= members
        flags = []
        for h in sorted(members):
            ok = True
            for x in range(n):
                if int(group.mul[x, h]) == int(group.mul[h, x]):
                    if (int(exps[h, x]) - int(exps[x, h])) % conductor:
                        ok = False
                        break
            flags.append(ok)
        if all(flags):
            count += 1
        elif any(flags):
            raise AssertionError("regularity is not constant on a conjugacy class")
    return count


def oracle_simple_count(table_kind, group, conductor, exps, gset=None) -> int:
    """Dimension of operators commuting with both regular actions, i.e. the
    number of irreducible modules of a semisimple algebra."""
    dim, left, right = _numeric_mult_matrices(table_kind, group, conductor, exps, gset)

    def commutator_constraints():
        eye = np.eye(dim)
        for mats in (left, right):
            for a in mats:
                yield np.kron(a, eye) - np.kron(eye, a.T)

    return _null_dim(list(commutator_constraints()), dim * dim)
