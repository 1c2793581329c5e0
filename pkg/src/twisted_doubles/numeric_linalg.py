"""Numeric helpers: SVD null spaces, intertwiner spaces, eigenvalue clustering.

Used by the spectral backend, where eigenvalues of central elements do not lie
in the coefficient field.  Everything takes an explicit tolerance.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "null_space",
    "orth",
    "numeric_rank",
    "hom_space",
    "commutant_space",
    "cluster_indices",
]


def null_space(A: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the right null space, columns of the result."""
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return np.eye(A.shape[1], dtype=complex)
    u, s, vh = np.linalg.svd(A, full_matrices=True)
    # absolute floor: a numerically-zero matrix must report a full null space
    cutoff = tol * max(A.shape) * max(float(s[0]) if s.size else 0.0, 1.0)
    nz = int(np.sum(s > cutoff))
    return vh[nz:].conj().T


def orth(A: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the column space, columns of the result."""
    A = np.asarray(A, dtype=complex)
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    if s.size == 0:
        return u[:, :0]
    cutoff = tol * max(A.shape) * max(float(s[0]), 1.0)
    return u[:, s > cutoff]


def numeric_rank(A: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(np.asarray(A, dtype=complex), compute_uv=False)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol * max(A.shape) * max(float(s[0]), 1.0)))


def hom_space(mats_dom, mats_cod, tol: float):
    """Basis of {T : T a_dom = a_cod T for every listed pair}.

    mats_dom[i] acts on the domain, mats_cod[i] on the codomain; T maps
    domain -> codomain. Returns a list of codomain x domain matrices.
    """
    d = mats_dom[0].shape[0] if mats_dom else 0
    c = mats_cod[0].shape[0] if mats_cod else 0
    if d == 0 or c == 0:
        return []
    eye_d = np.eye(d)
    eye_c = np.eye(c)
    blocks = []
    for a, b in zip(mats_dom, mats_cod):
        # row-major vec: vec(bT - Ta) = (b ⊗ I_d - I_c ⊗ a^T) vec(T)
        blocks.append(np.kron(b, eye_d) - np.kron(eye_c, a.T))
    ns = null_space(np.vstack(blocks), tol)
    return [ns[:, k].reshape((c, d)) for k in range(ns.shape[1])]


def commutant_space(mats, tol: float, block_slices=None):
    """Basis of operators commuting with every matrix in mats.

    With block_slices, the unknown is constrained to be block diagonal with
    the given (start, stop) index ranges.  Constraints are intersected one
    matrix at a time so the working dimension only shrinks.
    """
    n = mats[0].shape[0]
    if block_slices is None:
        block_slices = [(0, n)]
    # parameter map: columns = vectorized block-diagonal basis elements
    cols = []
    for (a, b) in block_slices:
        for i in range(a, b):
            for j in range(a, b):
                e = np.zeros((n, n), dtype=complex)
                e[i, j] = 1.0
                cols.append(e.reshape(-1))
    P = np.array(cols).T  # n^2 x n_params
    basis = np.eye(P.shape[1], dtype=complex)
    for a in mats:
        constraint = _commutator_constraint(a) @ (P @ basis)
        if constraint.shape[1] == 0:
            break
        ns = null_space(constraint, tol)
        basis = basis @ ns
        if basis.shape[1] == 0:
            break
    out = []
    for k in range(basis.shape[1]):
        out.append((P @ basis[:, k]).reshape((n, n)))
    return out


def _commutator_constraint(a: np.ndarray) -> np.ndarray:
    """Matrix C with C . vec(T) = vec(aT - Ta) for row-major vec."""
    n = a.shape[0]
    eye = np.eye(n)
    return np.kron(a, eye) - np.kron(eye, a.T)


def cluster_indices(values: np.ndarray, gap: float) -> list[list[int]]:
    """Group sorted real values into clusters split at gaps larger than gap."""
    order = np.argsort(values)
    clusters = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if values[cur] - values[prev] > gap:
            clusters.append([])
        clusters[-1].append(int(cur))
    return clusters
