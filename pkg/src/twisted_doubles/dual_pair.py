"""Projective group actions, stable families and dual-pair decompositions.

A ProjectiveAction is a family of invertible matrices phi(g) with
phi(y) phi(x) a scalar multiple of phi(yx); the scalar table is the cocycle
the action determines, and it is extracted rather than supplied.  A
StableFamily is the several-space version: labels form a right G-set and
phi_l(x) maps the space at l to the space at l.x^-1.

The double built from the family acts on the direct sum of the spaces, and
the commutant of that action (level-preserving endomorphisms commuting with
everything) is the stand-in for the invariant algebra of the dual pair.  The
decomposition report records, per simple module of the double, the dimension
of its multiplicity space, whether the commutant acts irreducibly on it, and
whether distinct multiplicity spaces are inequivalent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cocycles import SetCocycle, TwoCocycle
from .cyclotomic import CycScalar, lcm
from .double import GeneralizedDouble, stabilizer_subalgebra_iso
from .exact_linalg import is_invertible, matmul
from .groups import FiniteGroup, RightGSet, gset_from_rows, orbit_stabilizer, trivial_gset
from .modules import (
    MatrixModule,
    classify_double_simples,
    hom_space_numeric,
    induce,
    to_numeric,
)
from .monomial import MonomialElement
from .numeric_linalg import commutant_space, hom_space, null_space
from .twisted_algebra import TwistedGroupAlgebra

__all__ = [
    "ProjectiveAction",
    "StableFamily",
    "DualPairEntry",
    "DualPairReport",
    "NotProjectiveError",
    "extract_cocycle",
    "build_set_cocycle",
    "family_from_action",
    "induced_family",
    "twist_family",
    "pauli_action",
    "regular_action",
    "double_action",
    "psi_isomorphism",
    "commutant",
    "dual_pair_decompose",
    "b_element",
    "b_product",
]


class NotProjectiveError(ValueError):
    """phi(y) phi(x) is not a scalar multiple of phi(yx)."""

    code = "NOT_PROJECTIVE"


def _is_exact_matrix(m) -> bool:
    return isinstance(m, list)


def _shape(m):
    if _is_exact_matrix(m):
        return (len(m), len(m[0]))
    return m.shape


class ProjectiveAction:
    """An invertible matrix phi(g) per group element, phi(1) = identity."""

    def __init__(self, group: FiniteGroup, mats, levels=None):
        self.group = group
        self.mats = list(mats)
        if len(self.mats) != group.order:
            raise ValueError("need one matrix per group element")
        self.backend = "exact" if _is_exact_matrix(self.mats[0]) else "numeric"
        n = _shape(self.mats[0])[0]
        self.dim = n
        self.levels = tuple(levels) if levels is not None else (n,)
        if sum(self.levels) != n:
            raise ValueError("level dimensions must sum to the total dimension")
        for g, m in enumerate(self.mats):
            if _shape(m) != (n, n):
                raise ValueError("matrices must be square of equal size")
        if self.backend == "numeric":
            self.mats = [np.asarray(m, dtype=complex) for m in self.mats]
            if not np.allclose(self.mats[group.identity], np.eye(n)):
                raise ValueError("phi(identity) must be the identity matrix")
        else:
            from .exact_linalg import identity_matrix

            if self.mats[group.identity] != identity_matrix(n):
                raise ValueError("phi(identity) must be the identity matrix")
        self._check_levels()

    def _check_levels(self):
        if len(self.levels) == 1:
            return
        bounds = level_slices(self.levels)
        for m in self.mats:
            for (a0, a1) in bounds:
                for (b0, b1) in bounds:
                    if a0 == b0:
                        continue
                    if self.backend == "numeric":
                        if np.any(np.abs(np.asarray(m)[a0:a1, b0:b1]) > 1e-12):
                            raise ValueError("matrices must be block diagonal per level")
                    else:
                        if any(
                            not m[r][c].is_zero()
                            for r in range(a0, a1)
                            for c in range(b0, b1)
                        ):
                            raise ValueError("matrices must be block diagonal per level")


def level_slices(levels) -> list[tuple[int, int]]:
    out = []
    off = 0
    for d in levels:
        out.append((off, off + d))
        off += d
    return out


# -- scalar extraction -----------------------------------------------------------


def _root_of_unity_exponent_exact(scalar: CycScalar, conductor: int | None):
    """(order m, exponent k) with scalar = zeta_m^k, or None."""
    m = lcm(2, scalar.n)
    if conductor is not None:
        m = lcm(m, conductor)
    probe = CycScalar.one()
    z = CycScalar.zeta(m)
    for k in range(m):
        if scalar == probe:
            return m, k
        probe = probe * z
    return None


def _root_of_unity_exponent_numeric(scalar: complex, conductor: int | None, tolerance: float):
    if abs(abs(scalar) - 1.0) > 100 * tolerance:
        return None
    candidates = range(1, 49) if conductor is None else [conductor]
    angle = np.angle(scalar) / (2 * np.pi)
    for m in candidates:
        k = int(round(angle * m)) % m
        if abs(scalar - np.exp(2j * np.pi * k / m)) <= 1000 * tolerance:
            return m, k
    return None


def _scalar_ratio_exact(product, target):
    """c with product == c * target, or None."""
    rows, cols = _shape(target)
    pivot = None
    for r in range(rows):
        for c in range(cols):
            if not target[r][c].is_zero():
                pivot = (r, c)
                break
        if pivot:
            break
    if pivot is None:
        return None
    r, c = pivot
    ratio = product[r][c] / target[r][c]
    for i in range(rows):
        for j in range(cols):
            if product[i][j] != ratio * target[i][j]:
                return None
    return ratio


def _scalar_ratio_numeric(product, target, tolerance):
    target = np.asarray(target)
    product = np.asarray(product)
    idx = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    if abs(target[idx]) <= tolerance:
        return None
    ratio = product[idx] / target[idx]
    scale = max(1.0, float(np.abs(target).max()))
    if not np.allclose(product, ratio * target, atol=tolerance * 100 * scale):
        return None
    return complex(ratio)


def extract_cocycle(
    phi: ProjectiveAction,
    conductor: int | None = None,
    tolerance: float = 1e-9,
) -> TwoCocycle:
    """The cocycle with phi(y) phi(x) = alpha(y, x) phi(yx).

    Scalars are read off the entry of maximal modulus of phi(yx) and the full
    matrix identity is then verified; NotProjectiveError reports the first
    failing pair.  Values must be roots of unity (raise the conductor if a
    finer one is wanted); the table conductor is their lcm.
    """
    G = phi.group
    n = G.order
    pairs = {}
    overall = conductor or 1
    for y in range(n):
        for x in range(n):
            yx = G.times(y, x)
            if phi.backend == "exact":
                prod = matmul(phi.mats[y], phi.mats[x])
                ratio = _scalar_ratio_exact(prod, phi.mats[yx])
                if ratio is None:
                    raise NotProjectiveError(f"pair ({y}, {x}) is not scalar")
                fit = _root_of_unity_exponent_exact(ratio, conductor)
            else:
                prod = phi.mats[y] @ phi.mats[x]
                ratio = _scalar_ratio_numeric(prod, phi.mats[yx], tolerance)
                if ratio is None:
                    raise NotProjectiveError(f"pair ({y}, {x}) is not scalar")
                fit = _root_of_unity_exponent_numeric(ratio, conductor, tolerance)
            if fit is None:
                raise NotProjectiveError(
                    f"cocycle value at ({y}, {x}) is not a mu_N root of unity"
                )
            m, k = fit
            pairs[(y, x)] = (m, k)
            overall = lcm(overall, m)
    exps = np.zeros((n, n), dtype=np.int64)
    for (y, x), (m, k) in pairs.items():
        exps[y, x] = k * (overall // m)
    return TwoCocycle(G, overall, exps)


# -- stable families ----------------------------------------------------------------


class StableFamily:
    """Labeled spaces M_l with intertwiners phi_l(x): M_l -> M_{l.x^-1}."""

    def __init__(self, group: FiniteGroup, gset: RightGSet, dims, maps, levels=None):
        self.group = group
        self.gset = gset
        self.dims = tuple(dims)
        if gset.size != len(self.dims):
            raise ValueError("need one dimension per label")
        self.maps = dict(maps)
        self.backend = "exact" if _is_exact_matrix(next(iter(self.maps.values()))) else "numeric"
        if levels is None:
            levels = tuple((d,) for d in self.dims)
        self.levels = tuple(tuple(l) for l in levels)
        for l, lev in zip(self.dims, self.levels):
            if sum(lev) != l:
                raise ValueError("level dims must sum to the label dimension")
        for label in range(gset.size):
            for g in range(group.order):
                if (label, g) not in self.maps:
                    raise ValueError(f"missing map for label {label}, element {g}")
                target = gset.apply(label, group.inverse(g))
                want = (self.dims[target], self.dims[label])
                if _shape(self.maps[(label, g)]) != want:
                    raise ValueError(
                        f"map ({label}, {g}) has shape {_shape(self.maps[(label, g)])}, expected {want}"
                    )
                if self.levels[target] != self.levels[label]:
                    raise ValueError("level gradings must agree along orbits")
        if self.backend == "numeric":
            self.maps = {k: np.asarray(v, dtype=complex) for k, v in self.maps.items()}
            eye_ok = all(
                np.allclose(self.maps[(l, group.identity)], np.eye(self.dims[l]))
                for l in range(gset.size)
            )
        else:
            from .exact_linalg import identity_matrix

            eye_ok = all(
                self.maps[(l, group.identity)] == identity_matrix(self.dims[l])
                for l in range(gset.size)
            )
        if not eye_ok:
            raise ValueError("phi_l(identity) must be the identity")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list[int]:
        out = [0]
        for d in self.dims:
            out.append(out[-1] + d)
        return out


def family_from_action(phi: ProjectiveAction) -> StableFamily:
    """Singleton family: one G-stable space."""
    S = trivial_gset(phi.group, 1)
    maps = {(0, g): phi.mats[g] for g in range(phi.group.order)}
    return StableFamily(phi.group, S, (phi.dim,), maps, levels=(phi.levels,))


def regular_action(G: FiniteGroup) -> ProjectiveAction:
    """The honest (left) regular representation as permutation matrices, exact."""
    from .exact_linalg import zeros

    mats = []
    for g in range(G.order):
        m = zeros(G.order, G.order)
        for h in range(G.order):
            m[G.times(g, h)][h] = CycScalar.one()
        mats.append(m)
    return ProjectiveAction(G, mats)


def pauli_action():
    """The Klein four-group acting on C^2 by X^a Z^b, exact."""
    from .cocycles import klein_nontrivial_cocycle
    from .exact_linalg import identity_matrix

    V4, alpha = klein_nontrivial_cocycle()
    one, zero = CycScalar.one(), CycScalar.zero()
    X = [[zero, one], [one, zero]]
    Z = [[one, zero], [zero, -one]]
    mats = [identity_matrix(2), Z, X, matmul(X, Z)]  # index digits (a1,a2) -> X^a1 Z^a2
    return V4, alpha, ProjectiveAction(V4, mats)


def induced_family(G: FiniteGroup, S: RightGSet, stabilizer_cocycles: dict) -> StableFamily:
    """A stable family realizing given stabilizer cocycles, exact.

    Every space on the orbit of s is the regular module of the twisted
    stabilizer algebra; the connecting maps compose transversal bookkeeping
    with the regular action, so build_set_cocycle recovers exactly
    induced_set_cocycle(G, S, stabilizer_cocycles).
    """
    from .groups import subgroup_group

    dims = [0] * S.size
    maps = {}
    for orbit in S.orbits(G):
        rep = orbit[0]
        gamma = stabilizer_cocycles[rep]
        orb, stab, trans = orbit_stabilizer(S, G, rep)
        H, elems = subgroup_group(G, stab)
        A = TwistedGroupAlgebra(H, gamma)
        from .modules import regular_module

        reg = regular_module(A)
        local = {g: i for i, g in enumerate(elems)}
        pos = {t: i for i, t in enumerate(orb)}
        reps = trans.reps
        for i, t_i in enumerate(orb):
            dims[t_i] = H.order
            for x in range(G.order):
                l = pos[S.apply(t_i, G.inverse(x))]
                # g_l x g_i^-1 lies in the stabilizer; act through the regular module
                a = G.times(G.times(reps[l], x), G.inverse(reps[i]))
                maps[(t_i, x)] = reg.action[local[a]]
    return StableFamily(G, S, dims, maps)


def twist_family(F: StableFamily, lam_exps, conductor: int) -> StableFamily:
    """Scale phi_l(x) by zeta^lam[l, x]; lam[l, identity] must vanish."""
    lam = np.asarray(lam_exps, dtype=np.int64) % conductor
    if np.any(lam[:, F.group.identity]):
        raise ValueError("twist must fix the identity maps")
    maps = {}
    for (l, g), m in F.maps.items():
        z = CycScalar.zeta(conductor, int(lam[l, g]))
        if F.backend == "numeric":
            maps[(l, g)] = z.embed() * m
        else:
            maps[(l, g)] = [[z * c for c in row] for row in m]
    return StableFamily(F.group, F.gset, F.dims, maps, levels=F.levels)


def build_set_cocycle(
    F: StableFamily, conductor: int | None = None, tolerance: float = 1e-9
) -> SetCocycle:
    """Assemble the set cocycle from the family's composition scalars.

    phi_{l.x^-1}(y) phi_l(x) = alpha_l(y, x) phi_l(yx); validity of the
    resulting table is asserted by the SetCocycle law check downstream.
    """
    G, S = F.group, F.gset
    pairs = {}
    overall = conductor or 1
    for l in range(S.size):
        for y in range(G.order):
            for x in range(G.order):
                mid = S.apply(l, G.inverse(x))
                if F.backend == "exact":
                    prod = matmul(F.maps[(mid, y)], F.maps[(l, x)])
                    ratio = _scalar_ratio_exact(prod, F.maps[(l, G.times(y, x))])
                    fit = None if ratio is None else _root_of_unity_exponent_exact(ratio, conductor)
                else:
                    prod = F.maps[(mid, y)] @ F.maps[(l, x)]
                    ratio = _scalar_ratio_numeric(prod, F.maps[(l, G.times(y, x))], tolerance)
                    fit = None if ratio is None else _root_of_unity_exponent_numeric(ratio, conductor, tolerance)
                if ratio is None:
                    raise NotProjectiveError(f"family composition at ({l}, {y}, {x}) is not scalar")
                if fit is None:
                    raise NotProjectiveError(
                        f"family scalar at ({l}, {y}, {x}) is not a mu_N root of unity"
                    )
                m, k = fit
                pairs[(l, y, x)] = (m, k)
                overall = lcm(overall, m)
    exps = np.zeros((S.size, G.order, G.order), dtype=np.int64)
    for (l, y, x), (m, k) in pairs.items():
        exps[l, y, x] = k * (overall // m)
    return SetCocycle(G, S, overall, exps)


# -- the double acting on the family --------------------------------------------------


def double_action(F: StableFamily, D: GeneralizedDouble) -> MatrixModule:
    """The module structure b(x)e(m) . w = delta_{m, label(w)} phi_m(b) w."""
    if D.gset is not F.gset and not np.array_equal(D.gset.action, F.gset.action):
        raise ValueError("double and family live on different G-sets")
    offs = F.offsets()
    total = F.total_dim
    numeric = F.backend == "numeric"
    action = []
    for u in range(D.dim):
        b, m = D.pair(u)
        target = F.gset.apply(m, F.group.inverse(b))
        blk = F.maps[(m, b)]
        if numeric:
            mat = np.zeros((total, total), dtype=complex)
            mat[offs[target] : offs[target + 1], offs[m] : offs[m + 1]] = blk
        else:
            from .exact_linalg import zeros

            mat = zeros(total, total)
            for r in range(F.dims[target]):
                for c in range(F.dims[m]):
                    v = blk[r][c]
                    if not v.is_zero():
                        mat[offs[target] + r][offs[m] + c] = v
        action.append(mat)
    meta = {"offsets": offs, "dims": F.dims, "levels": F.levels}
    return MatrixModule(algebra=D, dim=total, action=action, backend=F.backend, meta=meta)


def psi_isomorphism(F: StableFamily, D: GeneralizedDouble, label: int):
    """The explicit equivalence between the induced module and the orbit sum.

    Returns (induced, Psi, Chi): Psi maps (block i, v) to phi_label(g_i^-1) v
    sitting in the component label.g_i of the family sum, Chi is its inverse
    on that orbit sum, and Psi intertwines the double actions.  Both
    composites are verified to be identities exactly (or to tolerance).
    """
    G = F.group
    stab = stabilizer_subalgebra_iso(D, label)
    # the S(label)-module carried by the space at label
    mats = [F.maps[(label, a)] for a in stab.elems]
    M = MatrixModule(algebra=stab.algebra, dim=F.dims[label], action=mats, backend=F.backend)
    ind = induce(D, label, M, stab)
    orb = ind.meta["orbit"]
    reps = ind.meta["transversal"]
    offs = F.offsets()
    total = F.total_dim
    m = F.dims[label]
    if F.backend == "numeric":
        Psi = np.zeros((total, ind.dim), dtype=complex)
        Chi = np.zeros((ind.dim, total), dtype=complex)
        for i, gi in enumerate(reps):
            blk = F.maps[(label, G.inverse(gi))]
            t = F.gset.apply(label, gi)
            Psi[offs[t] : offs[t] + m, i * m : (i + 1) * m] = blk
            Chi[i * m : (i + 1) * m, offs[t] : offs[t] + m] = np.linalg.inv(blk)
    else:
        from .exact_linalg import invert, zeros

        Psi = zeros(total, ind.dim)
        Chi = zeros(ind.dim, total)
        for i, gi in enumerate(reps):
            blk = F.maps[(label, G.inverse(gi))]
            inv_blk = invert(blk)
            t = F.gset.apply(label, gi)
            for r in range(m):
                for c in range(m):
                    if not blk[r][c].is_zero():
                        Psi[offs[t] + r][i * m + c] = blk[r][c]
                    if not inv_blk[r][c].is_zero():
                        Chi[i * m + r][offs[t] + c] = inv_blk[r][c]
    return ind, Psi, Chi


# -- commutant and decomposition ---------------------------------------------------------


def graded_block_slices(F: StableFamily) -> list[tuple[int, int]]:
    """Index ranges of each (label, level) block inside the family sum."""
    out = []
    offs = F.offsets()
    for l in range(F.gset.size):
        start = offs[l]
        for d in F.levels[l]:
            out.append((start, start + d))
            start += d
    return out


def commutant(action: MatrixModule, F: StableFamily | None = None, tolerance: float = 1e-9):
    """Basis of level-preserving operators commuting with the double action.

    Acts as the stand-in for the invariant algebra: all block-diagonal (per
    label, per level) endomorphisms commuting with every action matrix.
    """
    mats = [np.asarray(a) for a in to_numeric(action).action]
    blocks = graded_block_slices(F) if F is not None else None
    return commutant_space(mats, tolerance, block_slices=blocks)


@dataclass(frozen=True)
class DualPairEntry:
    orbit_representative: int
    simple_index: int
    simple_dim: int
    multiplicity_dim: int
    commutant_irreducible: bool | None
    multiplicity_by_level: tuple[int, ...]


@dataclass(frozen=True)
class DualPairReport:
    total_dim: int
    entries: tuple[DualPairEntry, ...]
    pairwise_inequivalent: tuple[tuple[bool, ...], ...]
    accounting_ok: bool
    commutant_dim: int
    commutant_dim_matches: bool
    absent: tuple[int, ...]
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def all_irreducible(self) -> bool:
        return all(e.commutant_irreducible for e in self.entries if e.multiplicity_dim)

    @property
    def all_inequivalent(self) -> bool:
        return all(
            self.pairwise_inequivalent[i][j]
            for i in range(len(self.entries))
            for j in range(len(self.entries))
            if i != j
        )


def _level_slices_global(F: StableFamily) -> list[list[tuple[int, int]]]:
    """For each level index, the (start, stop) ranges across all labels."""
    nlevels = max(len(l) for l in F.levels)
    out = [[] for _ in range(nlevels)]
    offs = F.offsets()
    for l in range(F.gset.size):
        start = offs[l]
        for i, d in enumerate(F.levels[l]):
            out[i].append((start, start + d))
            start += d
    return out


def _restrict_to(mats, ranges):
    idx = np.concatenate([np.arange(a, b) for a, b in ranges]) if ranges else np.array([], dtype=int)
    return [m[np.ix_(idx, idx)] for m in mats], idx


def dual_pair_decompose(
    F: StableFamily,
    D: GeneralizedDouble,
    tolerance: float = 1e-9,
    seed: int = 0,
) -> DualPairReport:
    """Decompose the family sum under (double, commutant) and check duality.

    Per simple module W of the double: the multiplicity space is realized as
    {f(w0) : f in Hom_D(W, M)} inside the sum; the commutant acts on it, and
    the report flags commutant-irreducibility, pairwise inequivalence, the
    dimension accounting, and the commutant-dimension identity
    dim C = sum multiplicity^2.  With several levels the flags are evaluated
    level by level, matching the graded commutant.
    """
    act = to_numeric(double_action(F, D))
    mats = [np.asarray(a) for a in act.action]
    report_simples, simples = classify_double_simples(D, tolerance=tolerance, seed=seed)
    meta = []
    for block, dims in zip(report_simples.blocks, [b.induced_dims for b in report_simples.blocks]):
        for idx in range(len(dims)):
            meta.append((block.orbit_representative, idx))

    level_ranges = _level_slices_global(F)
    multi_level = len(level_ranges) > 1
    warnings = []

    # global multiplicity spaces
    entries = []
    reps_spaces = []
    for (orbit_rep, idx), W in zip(meta, simples):
        Wm = [np.asarray(a) for a in W.action]
        homs = hom_space(Wm, mats, tolerance)
        mult = len(homs)
        realization = (
            np.column_stack([h[:, 0] for h in homs]) if mult else np.zeros((act.dim, 0))
        )
        reps_spaces.append(realization)
        entries.append([orbit_rep, idx, W.dim, mult])

    # commutant data, per level
    per_level_commutants = []
    per_level_mult = [[0] * len(simples) for _ in level_ranges]
    per_level_irr = [[None] * len(simples) for _ in level_ranges]
    per_level_actions = []
    for li, ranges in enumerate(level_ranges):
        sub_mats, idx = _restrict_to(mats, ranges)
        C = commutant_space(sub_mats, tolerance)
        per_level_commutants.append((C, idx))
        level_actions = []
        for k, W in enumerate(simples):
            Wm = [np.asarray(a) for a in W.action]
            homs = hom_space(Wm, sub_mats, tolerance)
            m = len(homs)
            per_level_mult[li][k] = m
            if m == 0:
                level_actions.append(None)
                continue
            R = np.column_stack([h[:, 0] for h in homs])
            acts = _commutant_action(C, R, tolerance)
            if acts is None:
                warnings.append(
                    f"commutant does not preserve the multiplicity space of simple {k} at level {li}"
                )
                level_actions.append(None)
                per_level_irr[li][k] = False
                continue
            level_actions.append(acts)
            per_level_irr[li][k] = len(commutant_space(acts, tolerance)) == 1
        per_level_actions.append(level_actions)

    # aggregate flags
    final_entries = []
    absent = []
    for k, ((orbit_rep, idx, wdim, mult), _) in enumerate(zip(entries, simples)):
        by_level = tuple(per_level_mult[li][k] for li in range(len(level_ranges)))
        if sum(by_level) != mult:
            warnings.append(f"level multiplicities of simple {k} do not add up")
        if mult == 0:
            absent.append(k)
            flag = None
        else:
            flags = [
                per_level_irr[li][k]
                for li in range(len(level_ranges))
                if per_level_mult[li][k]
            ]
            flag = bool(flags) and all(flags)
        final_entries.append(
            DualPairEntry(
                orbit_representative=orbit_rep,
                simple_index=idx,
                simple_dim=wdim,
                multiplicity_dim=mult,
                commutant_irreducible=flag,
                multiplicity_by_level=by_level,
            )
        )

    n = len(simples)
    ineq = [[True] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                ineq[i][j] = True
                continue
            distinct = True
            shared = False
            for li in range(len(level_ranges)):
                ai, aj = per_level_actions[li][i], per_level_actions[li][j]
                if ai is None or aj is None:
                    continue
                shared = True
                if hom_space(ai, aj, tolerance):
                    distinct = False
                    break
            # with no shared nonzero level the spaces are trivially inequivalent
            ineq[i][j] = distinct

    total_dim = act.dim
    accounting = sum(e.simple_dim * e.multiplicity_dim for e in final_entries) == total_dim
    commutant_dim = sum(len(C) for C, _ in per_level_commutants)
    matches = commutant_dim == sum(
        sum(per_level_mult[li][k] ** 2 for k in range(n)) for li in range(len(level_ranges))
    )
    return DualPairReport(
        total_dim=total_dim,
        entries=tuple(final_entries),
        pairwise_inequivalent=tuple(tuple(row) for row in ineq),
        accounting_ok=accounting,
        commutant_dim=commutant_dim,
        commutant_dim_matches=matches,
        absent=tuple(absent),
        warnings=tuple(warnings),
    )


def _commutant_action(C, R, tolerance):
    """Matrices of each commutant basis element on span(R); None if unstable."""
    if R.shape[1] == 0:
        return None
    out = []
    pinv = np.linalg.pinv(R)
    scale = max(1.0, float(np.abs(R).max()))
    for T in C:
        TR = T @ R
        X = pinv @ TR
        if not np.allclose(R @ X, TR, atol=tolerance * 1000 * scale):
            return None
        out.append(X)
    return out


# -- the unit group inside the double ------------------------------------------------------


def b_element(D: GeneralizedDouble, x: int, unit_exps) -> MonomialElement:
    """x (x) u for a unit u = sum_s zeta^{unit_exps[s]} e(s)."""
    coeffs = [CycScalar.zero()] * D.dim
    for s, e in enumerate(unit_exps):
        coeffs[D.index(x, s)] = D.scalar(int(e))
    return D.element(coeffs)


def b_product(D: GeneralizedDouble, left: tuple, right: tuple) -> tuple:
    """(y, v)(x, u) = (yx, alpha(y, x) v^x u) on exponent vectors."""
    y, v = left
    x, u = right
    G, S = D.group, D.gset
    n = D.conductor
    out = np.zeros(S.size, dtype=np.int64)
    xinv = G.inverse(x)
    for s in range(S.size):
        out[s] = (int(D.cocycle.exps[s, y, x]) + int(v[S.apply(s, xinv)]) + int(u[s])) % n
    return (G.times(y, x), out)
