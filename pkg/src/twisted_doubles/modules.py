"""Modules over the twisted algebras, induction, and simple classification.

A MatrixModule stores one action matrix per algebra basis element, either
exactly over the cyclotomic field or as complex doubles.  Induction from a
stabilizer subalgebra S(s) up to the orbit block D(O_s) and its inverse
(cutting by the idempotent 1(x)e(s)) are implemented with the explicit
intertwiners, so the category equivalence is witnessed rather than asserted.
The simple-module classifier is spectral: exact central characters split the
regular representation, and a random Hermitian algebra element splits each
isotypic block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .cyclotomic import CycScalar
from .exact_linalg import (
    identity_matrix,
    kernel_basis,
    is_invertible,
    matmul,
    rref,
    solve_columns,
    zeros,
)
from .groups import orbit_stabilizer
from .monomial import MonomialAlgebra, MonomialElement
from .numeric_linalg import cluster_indices, hom_space, null_space, orth
from .twisted_algebra import TwistedGroupAlgebra, center_basis

__all__ = [
    "MatrixModule",
    "BlockSimples",
    "SimpleModuleReport",
    "IllConditionedError",
    "regular_module",
    "direct_sum",
    "conjugate_module",
    "to_numeric",
    "check_module",
    "act_element",
    "induce",
    "restrict_by_idempotent",
    "restrict_induce_witness",
    "induce_restrict_witness",
    "hom_space_numeric",
    "hom_space_exact",
    "endomorphism_dim",
    "is_simple",
    "find_isomorphism",
    "classify_simples",
    "classify_double_simples",
]


class IllConditionedError(RuntimeError):
    """Spectral clusters too close for the requested tolerance."""

    code = "ILL_CONDITIONED"


@dataclass
class MatrixModule:
    """A left module given by one action matrix per algebra basis element."""

    algebra: MonomialAlgebra
    dim: int
    action: list
    backend: str          # "exact" | "numeric"
    meta: dict = field(default_factory=dict)

    def matrix(self, i: int):
        return self.action[i]


# -- construction ------------------------------------------------------------


def regular_module(A: MonomialAlgebra) -> MatrixModule:
    """Left multiplication on the algebra itself, exact."""
    n = A.dim
    action = []
    for i in range(n):
        mat = zeros(n, n)
        for j in range(n):
            p = A.basis_product(i, j)
            if p is not None:
                mat[p[0]][j] = A.scalar(p[1])
        action.append(mat)
    return MatrixModule(algebra=A, dim=n, action=action, backend="exact")


def direct_sum(mods: list[MatrixModule]) -> MatrixModule:
    A = mods[0].algebra
    backend = mods[0].backend
    dim = sum(m.dim for m in mods)
    action = []
    for i in range(A.dim):
        if backend == "numeric":
            mat = np.zeros((dim, dim), dtype=complex)
            off = 0
            for m in mods:
                mat[off : off + m.dim, off : off + m.dim] = m.action[i]
                off += m.dim
        else:
            mat = zeros(dim, dim)
            off = 0
            for m in mods:
                for r in range(m.dim):
                    for c in range(m.dim):
                        mat[off + r][off + c] = m.action[i][r][c]
                off += m.dim
        action.append(mat)
    return MatrixModule(algebra=A, dim=dim, action=action, backend=backend)


def conjugate_module(mod: MatrixModule, P, P_inv=None) -> MatrixModule:
    """Basis change: new action = P^-1 . action . P."""
    if mod.backend == "numeric":
        P = np.asarray(P, dtype=complex)
        Pi = np.linalg.inv(P) if P_inv is None else np.asarray(P_inv, dtype=complex)
        action = [Pi @ a @ P for a in mod.action]
    else:
        from .exact_linalg import invert

        Pi = invert(P) if P_inv is None else P_inv
        action = [matmul(Pi, matmul(a, P)) for a in mod.action]
    return MatrixModule(algebra=mod.algebra, dim=mod.dim, action=action, backend=mod.backend)


def to_numeric(mod: MatrixModule) -> MatrixModule:
    if mod.backend == "numeric":
        return mod
    action = [
        np.array([[c.embed() for c in row] for row in a], dtype=complex) for a in mod.action
    ]
    return MatrixModule(algebra=mod.algebra, dim=mod.dim, action=action, backend="numeric", meta=dict(mod.meta))


def act_element(mod: MatrixModule, x: MonomialElement):
    """Matrix of a general algebra element on the module."""
    if mod.backend == "numeric":
        out = np.zeros((mod.dim, mod.dim), dtype=complex)
        for i, c in x.support():
            out += c.embed() * mod.action[i]
        return out
    out = zeros(mod.dim, mod.dim)
    for i, c in x.support():
        a = mod.action[i]
        for r in range(mod.dim):
            row = a[r]
            for s in range(mod.dim):
                if not row[s].is_zero():
                    out[r][s] = out[r][s] + c * row[s]
    return out


# -- verification --------------------------------------------------------------


def check_module(mod: MatrixModule, tolerance: float = 1e-9):
    """First violated structure relation, or None.

    Checks rho(e_i) rho(e_j) = zeta^e rho(e_k) (or zero) for all basis pairs
    and that the algebra identity acts as the identity matrix.
    """
    A = mod.algebra
    if mod.backend == "numeric":
        eye = np.eye(mod.dim)
        ident = act_element(mod, A.one())
        if not np.allclose(ident, eye, atol=tolerance * max(1, mod.dim)):
            return ("identity",)
        for i in range(A.dim):
            ai = mod.action[i]
            for j in range(A.dim):
                prod = ai @ mod.action[j]
                p = A.basis_product(i, j)
                want = (
                    np.zeros_like(prod)
                    if p is None
                    else A.scalar(p[1]).embed() * mod.action[p[0]]
                )
                if not np.allclose(prod, want, atol=tolerance * max(1, mod.dim)):
                    return (i, j)
        return None
    ident = act_element(mod, A.one())
    if ident != identity_matrix(mod.dim):
        return ("identity",)
    for i in range(A.dim):
        for j in range(A.dim):
            prod = matmul(mod.action[i], mod.action[j])
            p = A.basis_product(i, j)
            if p is None:
                want = zeros(mod.dim, mod.dim)
            else:
                z = A.scalar(p[1])
                want = [[z * c for c in row] for row in mod.action[p[0]]]
            if prod != want:
                return (i, j)
    return None


# -- induction and restriction ----------------------------------------------------


def induce(D, s: int, M: MatrixModule, stab=None) -> MatrixModule:
    """Ind from S(s) to D(O_s), extended by zero to the whole double.

    M is a module over the stabilizer twisted algebra C^{alpha_s}[G_s];
    the induced dimension is [G : G_s] * dim M.  Basis vectors are indexed
    (transversal block i, module basis vector), block-major.
    """
    from .double import stabilizer_subalgebra_iso

    if stab is None:
        stab = stabilizer_subalgebra_iso(D, s)
    G = D.group
    orb, stab_members, trans = orbit_stabilizer(D.gset, D.group, s)
    reps = trans.reps
    pos = {t: i for i, t in enumerate(orb)}
    k, m = len(orb), M.dim
    dim = k * m
    numeric = M.backend == "numeric"
    T = D.cocycle.exps[s]
    action = []
    for u in range(D.dim):
        b, t = D.pair(u)
        if t not in pos:
            action.append(np.zeros((dim, dim), dtype=complex) if numeric else zeros(dim, dim))
            continue
        i = pos[t]
        gi_inv = G.inverse(reps[i])
        c = G.times(b, gi_inv)
        l = pos[D.gset.apply(s, G.inverse(c))]
        a_parent = G.times(reps[l], c)
        exp = int(T[b, gi_inv]) - int(T[G.inverse(reps[l]), a_parent])
        a_local = stab.to_local(a_parent)
        blk = M.action[a_local]
        if numeric:
            mat = np.zeros((dim, dim), dtype=complex)
            mat[l * m : (l + 1) * m, i * m : (i + 1) * m] = D.scalar(exp).embed() * blk
        else:
            z = D.scalar(exp)
            mat = zeros(dim, dim)
            for r in range(m):
                for cix in range(m):
                    v = blk[r][cix]
                    if not v.is_zero():
                        mat[l * m + r][i * m + cix] = z * v
        action.append(mat)
    meta = {"s": s, "orbit": tuple(orb), "transversal": reps, "local_dim": m}
    return MatrixModule(algebra=D, dim=dim, action=action, backend=M.backend, meta=meta)


def restrict_by_idempotent(D, s: int, N: MatrixModule, stab=None, tolerance: float = 1e-9):
    """Cut N by the idempotent 1(x)e(s); the image is an S(s)-module.

    Returns (module over the stabilizer algebra, embedding matrix whose
    columns are the chosen basis of the image inside N).
    """
    from .double import stabilizer_subalgebra_iso

    if stab is None:
        stab = stabilizer_subalgebra_iso(D, s)
    P = N.action[D.index(D.group.identity, s)]
    if N.backend == "numeric":
        C = orth(np.asarray(P), tolerance)
        action = []
        for a_local, a_parent in enumerate(stab.elems):
            U = N.action[D.index(a_parent, s)]
            X = C.conj().T @ U @ C
            if not np.allclose(U @ C, C @ X, atol=tolerance * max(1, N.dim)):
                raise ValueError("image of the idempotent is not stable")
            action.append(X)
        mod = MatrixModule(algebra=stab.algebra, dim=C.shape[1], action=action, backend="numeric")
        return mod, C
    pivots, _ = rref(P)
    cols = pivots
    C = [[P[r][c] for c in cols] for r in range(N.dim)]
    m = len(cols)
    action = []
    for a_local, a_parent in enumerate(stab.elems):
        U = N.action[D.index(a_parent, s)]
        B = matmul(U, C)
        X = solve_columns(C, B)
        if X is None:
            raise ValueError("image of the idempotent is not stable")
        action.append(X)
    mod = MatrixModule(algebra=stab.algebra, dim=m, action=action, backend="exact")
    return mod, C


def restrict_induce_witness(D, s: int, M: MatrixModule, stab=None, tolerance: float = 1e-9):
    """Explicit isomorphism M -> restrict(induce(M)).

    Returns (induced, restricted, T) with T an invertible intertwiner of
    S(s)-modules, constructed from the block-1 embedding rather than solved.
    """
    from .double import stabilizer_subalgebra_iso

    if stab is None:
        stab = stabilizer_subalgebra_iso(D, s)
    ind = induce(D, s, M, stab)
    res, emb = restrict_by_idempotent(D, s, ind, stab, tolerance)
    m = M.dim
    if ind.meta["transversal"][0] != D.group.identity:
        raise AssertionError("transversal must start at the identity")
    if res.dim != m:
        raise ValueError(f"restricted dimension {res.dim} != module dimension {m}")
    if M.backend == "numeric":
        iota = np.zeros((ind.dim, m), dtype=complex)
        iota[:m, :] = np.eye(m)
        T, *_ = np.linalg.lstsq(np.asarray(emb), iota, rcond=None)
        ok = all(
            np.allclose(T @ M.action[a], res.action[a] @ T, atol=tolerance * max(1, ind.dim))
            for a in range(stab.algebra.dim)
        )
        invertible = np.linalg.matrix_rank(T) == m
    else:
        iota = zeros(ind.dim, m)
        for r in range(m):
            iota[r][r] = CycScalar.one()
        T = solve_columns(emb, iota)
        ok = T is not None and all(
            matmul(T, M.action[a]) == matmul(res.action[a], T)
            for a in range(stab.algebra.dim)
        )
        invertible = T is not None and is_invertible(T)
    if not (ok and invertible):
        raise AssertionError("block-1 embedding failed to intertwine")
    return ind, res, T


def induce_restrict_witness(D, s: int, N: MatrixModule, stab=None, tolerance: float = 1e-9):
    """Explicit isomorphism induce(restrict(N)) -> N for an O_s-block module.

    The map sends (block i, v) to rho_N(g_i^-1 (x) e(s)) v, following the
    category-equivalence construction.  Returns (restricted, induced, Psi).
    """
    from .double import stabilizer_subalgebra_iso

    if stab is None:
        stab = stabilizer_subalgebra_iso(D, s)
    res, emb = restrict_by_idempotent(D, s, N, stab, tolerance)
    ind = induce(D, s, res, stab)
    G = D.group
    reps = ind.meta["transversal"]
    m = res.dim
    if N.backend == "numeric":
        emb = np.asarray(emb)
        cols = []
        for gi in reps:
            U = N.action[D.index(G.inverse(gi), s)]
            cols.append(U @ emb)
        Psi = np.hstack(cols)
        ok = all(
            np.allclose(
                Psi @ ind.action[u], N.action[u] @ Psi, atol=tolerance * max(1, N.dim)
            )
            for u in range(D.dim)
        )
        invertible = Psi.shape[0] == Psi.shape[1] and np.linalg.matrix_rank(Psi) == N.dim
    else:
        Psi = zeros(N.dim, ind.dim)
        for i, gi in enumerate(reps):
            U = N.action[D.index(G.inverse(gi), s)]
            block = matmul(U, emb)
            for r in range(N.dim):
                for c in range(m):
                    Psi[r][i * m + c] = block[r][c]
        ok = all(
            matmul(Psi, ind.action[u]) == matmul(N.action[u], Psi) for u in range(D.dim)
        )
        invertible = N.dim == ind.dim and is_invertible(Psi)
    if not ok:
        raise AssertionError("explicit equivalence map fails to intertwine")
    if not invertible:
        raise ValueError("module is not an O_s-block module; equivalence map is singular")
    return res, ind, Psi


# -- hom spaces and simplicity -------------------------------------------------------


def hom_space_numeric(M1: MatrixModule, M2: MatrixModule, tolerance: float = 1e-9):
    """Basis of intertwiners T with T rho1(u) = rho2(u) T, numerically."""
    mats1 = [np.asarray(a) for a in to_numeric(M1).action]
    mats2 = [np.asarray(a) for a in to_numeric(M2).action]
    return hom_space(mats1, mats2, tolerance)


def hom_space_exact(M1: MatrixModule, M2: MatrixModule):
    """Exact intertwiner basis; sizes are expected to be small."""
    d1, d2 = M1.dim, M2.dim
    nparams = d1 * d2
    space = [ [CycScalar.one() if t == p else CycScalar.zero() for t in range(nparams)] for p in range(nparams) ]

    def unflatten(vec):
        return [[vec[r * d1 + c] for c in range(d1)] for r in range(d2)]

    for u in range(M1.algebra.dim):
        a1, a2 = M1.action[u], M2.action[u]
        columns = []
        for vec in space:
            T = unflatten(vec)
            Vio = [
                [x - y for x, y in zip(r1, r2)]
                for r1, r2 in zip(matmul(T, a1), matmul(a2, T))
            ]
            columns.append([Vio[r][c] for r in range(d2) for c in range(d1)])
        rows = [[columns[j][i] for j in range(len(space))] for i in range(nparams)]
        coeffs = kernel_basis(rows, ncols=len(space))
        space = [
            [
                sum((k[j] * space[j][t] for j in range(len(space))), CycScalar.zero())
                for t in range(nparams)
            ]
            for k in coeffs
        ]
        if not space:
            break
    return [unflatten(vec) for vec in space]


def endomorphism_dim(M: MatrixModule, tolerance: float = 1e-9) -> int:
    if M.backend == "numeric":
        return len(hom_space_numeric(M, M, tolerance))
    return len(hom_space_exact(M, M))


def is_simple(M: MatrixModule, tolerance: float = 1e-9) -> bool:
    """Operational simplicity: the endomorphism algebra is the scalars."""
    return endomorphism_dim(M, tolerance) == 1


def find_isomorphism(M1: MatrixModule, M2: MatrixModule, tolerance: float = 1e-9, seed: int = 0):
    """An invertible intertwiner, or None when the modules are inequivalent."""
    if M1.dim != M2.dim:
        return None
    rng = np.random.default_rng(seed)
    if M1.backend == "numeric" or M2.backend == "numeric":
        basis = hom_space_numeric(M1, M2, tolerance)
        if not basis:
            return None
        for _ in range(25):
            T = sum(rng.standard_normal() * b for b in basis)
            if np.linalg.matrix_rank(T, tol=tolerance * max(1, M1.dim)) == M1.dim:
                return T
        return None
    basis = hom_space_exact(M1, M2)
    if not basis:
        return None
    for T in basis:
        if is_invertible(T):
            return T
    for _ in range(25):
        coefs = [CycScalar.rational(int(rng.integers(-3, 4))) for _ in basis]
        T = zeros(M1.dim, M1.dim)
        for c, B in zip(coefs, basis):
            for r in range(M1.dim):
                for s in range(M1.dim):
                    T[r][s] = T[r][s] + c * B[r][s]
        if is_invertible(T):
            return T
    return None


# -- classification -------------------------------------------------------------


@dataclass(frozen=True)
class BlockSimples:
    orbit_representative: int
    orbit_size: int
    stabilizer_order: int
    local_dims: tuple[int, ...]
    induced_dims: tuple[int, ...]


@dataclass(frozen=True)
class SimpleModuleReport:
    algebra_dim: int
    blocks: tuple[BlockSimples, ...]

    @property
    def square_sum(self) -> int:
        return sum(d * d for b in self.blocks for d in b.induced_dims)

    @property
    def accounting_ok(self) -> bool:
        return self.square_sum == self.algebra_dim


def classify_simples(
    A: TwistedGroupAlgebra,
    tolerance: float = 1e-9,
    seed: int = 0,
    max_retries: int = 5,
):
    """All simple modules of the twisted group algebra, numerically.

    Splits the regular representation by exact central characters, then by
    the spectrum of a random Hermitian algebra element inside each isotypic
    block.  Returns (SimpleModuleReport, modules).  Raises IllConditionedError
    when eigenvalue clusters stay ambiguous after max_retries fresh draws.
    """
    n = A.dim
    zs = center_basis(A)
    reg = to_numeric(regular_module(A))
    L = reg.action
    Z = [act_element(reg, z) for z in zs]
    rng = np.random.default_rng(seed)
    last_error = None
    for _ in range(max_retries):
        try:
            dims, modules = _split_regular(A, L, Z, rng, tolerance)
        except IllConditionedError as err:
            last_error = err
            continue
        if sum(d * d for d in dims) != n:
            last_error = IllConditionedError("block dimensions do not account for the algebra")
            continue
        order = np.argsort(dims, kind="stable")
        dims = [dims[i] for i in order]
        modules = [modules[i] for i in order]
        report = SimpleModuleReport(
            algebra_dim=n,
            blocks=(
                BlockSimples(
                    orbit_representative=0,
                    orbit_size=1,
                    stabilizer_order=A.group.order,
                    local_dims=tuple(dims),
                    induced_dims=tuple(dims),
                ),
            ),
        )
        return report, modules
    raise last_error or IllConditionedError("failed to split the regular representation")


def _split_regular(A, L, Z, rng, tolerance):
    n = A.dim
    r = len(Z)
    # complex coefficients: the Hermitian parts of c_i Z_i span all Hermitian
    # central elements, so a generic draw separates every central character
    coeffs = rng.standard_normal(r) + 1j * rng.standard_normal(r)
    H = sum(c * z for c, z in zip(coeffs, Z))
    H = H + H.conj().T
    evals, evecs = np.linalg.eigh(H)
    spread = float(evals[-1] - evals[0]) if n > 1 else 0.0
    gap = max(spread * 1e-7, tolerance * 10)
    clusters = cluster_indices(evals, gap)
    if len(clusters) != r:
        raise IllConditionedError(f"expected {r} central clusters, found {len(clusters)}")
    dims = []
    modules = []
    for cluster in clusters:
        d2 = len(cluster)
        d = isqrt(d2)
        if d * d != d2:
            raise IllConditionedError("central block dimension is not a perfect square")
        Q = evecs[:, cluster]
        mats = _extract_simple(A, L, Q, d, rng, tolerance)
        modules.append(
            MatrixModule(algebra=A, dim=d, action=mats, backend="numeric")
        )
        dims.append(d)
    return dims, modules


def _extract_simple(A, L, Q, d, rng, tolerance):
    n = A.dim
    for _ in range(5):
        w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        X = sum(c * mat for c, mat in zip(w, L))
        R = Q.conj().T @ (X + X.conj().T) @ Q
        evals, V = np.linalg.eigh(R)
        spread = float(evals[-1] - evals[0]) if len(evals) > 1 else 0.0
        gap = max(spread * 1e-7, tolerance * 10)
        clusters = cluster_indices(evals, gap)
        if len(clusters) != d or any(len(c) != d for c in clusters):
            continue
        v = Q @ V[:, clusters[0][0]]
        orbit = np.column_stack([mat @ v for mat in L])
        B = orth(orbit, tolerance)
        if B.shape[1] != d:
            continue
        mats = [B.conj().T @ mat @ B for mat in L]
        ok = all(
            np.allclose(mat @ B, B @ m, atol=tolerance * 100 * max(1, n))
            for mat, m in zip(L, mats)
        )
        if ok:
            return mats
    raise IllConditionedError("failed to extract a simple module from a central block")


def classify_double_simples(D, tolerance: float = 1e-9, seed: int = 0):
    """Simple modules of the double: classify each stabilizer algebra and induce.

    Verifies simplicity (endomorphism dimension 1) and pairwise inequivalence
    (zero intertwiner space) of the induced modules, and the exact accounting
    sum of (orbit size * local dim)^2 = |G| * |S|.
    Returns (SimpleModuleReport, modules).
    """
    from .double import decompose_blocks, stabilizer_subalgebra_iso

    dec = decompose_blocks(D)
    blocks = []
    modules = []
    for j, block in enumerate(dec.orbits):
        stab = stabilizer_subalgebra_iso(D, block.representative)
        local_report, local_simples = classify_simples(
            stab.algebra, tolerance=tolerance, seed=seed + 7919 * j
        )
        local_dims = local_report.blocks[0].local_dims
        k = len(block.members)
        induced = [induce(D, block.representative, W, stab) for W in local_simples]
        for W in induced:
            if endomorphism_dim(W, tolerance) != 1:
                raise IllConditionedError("induced module is not simple")
        modules.extend(induced)
        blocks.append(
            BlockSimples(
                orbit_representative=block.representative,
                orbit_size=k,
                stabilizer_order=len(block.stabilizer),
                local_dims=tuple(local_dims),
                induced_dims=tuple(k * d for d in local_dims),
            )
        )
    for i in range(len(modules)):
        for j in range(i + 1, len(modules)):
            if hom_space_numeric(modules[i], modules[j], tolerance):
                raise IllConditionedError("induced simples are not pairwise inequivalent")
    report = SimpleModuleReport(algebra_dim=D.dim, blocks=tuple(blocks))
    if not report.accounting_ok:
        raise IllConditionedError("global dimension accounting failed")
    return report, modules
