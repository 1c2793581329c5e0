"""The generalized twisted double A_alpha(G, S).

The underlying space is C[G] (x) C[S] with basis g(x)e(s); the product is
g(x)e(s) . h(x)e(t) = alpha_t(g, h) gh (x) e(sh)e(t), so a basis product
either vanishes (when s.h != t) or is a root of unity times a basis vector.
Orbit blocks D(O_s) are two-sided ideals; each carries the subalgebra S(s)
isomorphic to the twisted group algebra of the stabilizer, and the nilpotent
complement N(s).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cocycles import (
    SetCocycle,
    SetCoboundary,
    alpha_regular_classes,
    apply_coboundary,
    is_normal_cocycle,
    restrict,
)
from .cyclotomic import CycScalar
from .groups import CosetTransversal, FiniteGroup, RightGSet, orbit_stabilizer, same_group, same_gset
from .monomial import MonomialAlgebra, MonomialElement, center_by_kernel
from .twisted_algebra import TwistedGroupAlgebra

__all__ = [
    "GeneralizedDouble",
    "DoubleElement",
    "OrbitBlock",
    "BlockDecomposition",
    "StabilizerSubalgebra",
    "CenterResult",
    "double_multiply",
    "double_identity",
    "cohomologous_iso",
    "decompose_blocks",
    "stabilizer_subalgebra_iso",
    "double_center_basis",
    "center_by_kernel",
]


class GeneralizedDouble(MonomialAlgebra):
    """A_alpha(G, S) with basis index s*|G| + g for the vector g(x)e(s)."""

    __slots__ = ("group", "gset", "cocycle", "dim", "conductor")

    def __init__(self, group: FiniteGroup, gset: RightGSet, cocycle: SetCocycle):
        if not same_group(cocycle.group, group) or not same_gset(cocycle.gset, gset):
            raise ValueError("cocycle does not match the group and G-set")
        self.group = group
        self.gset = gset
        self.cocycle = cocycle
        self.dim = group.order * gset.size
        self.conductor = cocycle.n

    def index(self, g: int, s: int) -> int:
        return s * self.group.order + g

    def pair(self, i: int) -> tuple[int, int]:
        return i % self.group.order, i // self.group.order

    def basis_product(self, i: int, j: int):
        g, s = self.pair(i)
        h, t = self.pair(j)
        if self.gset.apply(s, h) != t:
            return None
        return self.index(self.group.times(g, h), t), int(self.cocycle.exps[t, g, h])

    def identity_coeffs(self):
        z, one = CycScalar.zero(), CycScalar.one()
        coeffs = [z] * self.dim
        for t in range(self.gset.size):
            coeffs[self.index(self.group.identity, t)] = one
        return tuple(coeffs)

    def basis_label(self, i: int) -> str:
        g, s = self.pair(i)
        return f"[{self.group.label(g)}|e({s})]"

    def __repr__(self):
        return f"GeneralizedDouble(|G|={self.group.order}, |S|={self.gset.size}, N={self.conductor})"


DoubleElement = MonomialElement


def double_multiply(a: MonomialElement, b: MonomialElement) -> MonomialElement:
    return a * b


def double_identity(D: GeneralizedDouble) -> MonomialElement:
    """Sum over t of 1(x)e(t), the two-sided identity."""
    return D.one()


@dataclass(frozen=True)
class OrbitBlock:
    representative: int
    members: tuple[int, ...]          # orbit elements in transversal order
    stabilizer: tuple[int, ...]
    transversal: CosetTransversal
    basis_indices: tuple[int, ...]    # indices of D(O_s) inside the double


@dataclass(frozen=True)
class BlockDecomposition:
    double: GeneralizedDouble
    orbits: tuple[OrbitBlock, ...]


def decompose_blocks(D: GeneralizedDouble) -> BlockDecomposition:
    """Orbit blocks D(O_s), smallest-index representatives, greedy transversals."""
    blocks = []
    for orbit in D.gset.orbits(D.group):
        rep = orbit[0]
        orb, stab, trans = orbit_stabilizer(D.gset, D.group, rep)
        idx = tuple(D.index(g, t) for t in orb for g in range(D.group.order))
        blocks.append(
            OrbitBlock(
                representative=rep,
                members=tuple(orb),
                stabilizer=stab,
                transversal=trans,
                basis_indices=idx,
            )
        )
    return BlockDecomposition(double=D, orbits=tuple(blocks))


def subspace_indices(D: GeneralizedDouble, s: int, which: str) -> list[int]:
    """Basis indices of S(s), N(s) or D(s)."""
    _, stab, _ = orbit_stabilizer(D.gset, D.group, s)
    stab_set = set(stab)
    if which == "S":
        gs = [g for g in range(D.group.order) if g in stab_set]
    elif which == "N":
        gs = [g for g in range(D.group.order) if g not in stab_set]
    elif which == "D":
        gs = list(range(D.group.order))
    else:
        raise ValueError("which must be S, N or D")
    return [D.index(g, s) for g in gs]


def block_identity(D: GeneralizedDouble, block: OrbitBlock) -> MonomialElement:
    """Sum over t in the orbit of 1(x)e(t), the identity of D(O_s)."""
    coeffs = [CycScalar.zero()] * D.dim
    for t in block.members:
        coeffs[D.index(D.group.identity, t)] = CycScalar.one()
    return D.element(coeffs)


@dataclass(frozen=True)
class StabilizerSubalgebra:
    """S(s) together with the isomorphism onto C^{alpha_s}[G_s]."""

    double: GeneralizedDouble
    s: int
    local_group: FiniteGroup
    elems: tuple[int, ...]            # local index -> parent element
    algebra: TwistedGroupAlgebra

    def to_local(self, g: int) -> int:
        return self.elems.index(g)

    def embed(self, x: MonomialElement) -> MonomialElement:
        """C^{alpha_s}[G_s] element -> a(x)e(s) combination in the double."""
        coeffs = [CycScalar.zero()] * self.double.dim
        for i, c in enumerate(x.coeffs):
            coeffs[self.double.index(self.elems[i], self.s)] = c
        return self.double.element(coeffs)

    def project(self, x: MonomialElement) -> MonomialElement:
        """rho(a(x)e(s)) = a; drops coordinates outside S(s)."""
        coeffs = [CycScalar.zero()] * self.algebra.dim
        for i, g in enumerate(self.elems):
            coeffs[i] = x.coeffs[self.double.index(g, self.s)]
        return self.algebra.element(coeffs)


def stabilizer_subalgebra_iso(D: GeneralizedDouble, s: int) -> StabilizerSubalgebra:
    H, elems, gamma = restrict(D.cocycle, s)
    return StabilizerSubalgebra(
        double=D, s=s, local_group=H, elems=elems, algebra=TwistedGroupAlgebra(H, gamma)
    )


def cohomologous_iso(D_alpha: GeneralizedDouble, D_beta: GeneralizedDouble, lam: SetCoboundary):
    """The diagonal isomorphism f(g(x)e(s)) = lambda_s(g)^-1 g(x)e(s).

    Requires beta = alpha . (coboundary of lambda); raises otherwise.
    Returns (f, f_inverse) acting on elements.
    """
    expected = apply_coboundary(D_alpha.cocycle, lam)
    if expected != D_beta.cocycle:
        raise ValueError("beta is not alpha twisted by this coboundary")
    lam_p = lam.promote(D_beta.conductor) if D_beta.conductor % lam.n == 0 else lam

    def f(x: MonomialElement) -> MonomialElement:
        coeffs = [CycScalar.zero()] * D_beta.dim
        for i, c in enumerate(x.coeffs):
            if c.is_zero():
                continue
            g, s = D_alpha.pair(i)
            coeffs[i] = c * D_beta.scalar(-int(lam_p.exps[s, g]))
        return D_beta.element(coeffs)

    def f_inv(x: MonomialElement) -> MonomialElement:
        coeffs = [CycScalar.zero()] * D_alpha.dim
        for i, c in enumerate(x.coeffs):
            if c.is_zero():
                continue
            g, s = D_beta.pair(i)
            coeffs[i] = c * D_alpha.scalar(int(lam_p.exps[s, g]))
        return D_alpha.element(coeffs)

    return f, f_inv


@dataclass(frozen=True)
class CenterResult:
    elements: tuple[MonomialElement, ...]
    path: str                          # "formula" or "kernel"
    per_orbit_counts: tuple[int, ...]
    compatibility_ok: bool
    normality_ok: bool
    warnings: tuple[str, ...] = field(default_factory=tuple)


def _compatibility_ok(D: GeneralizedDouble, block: OrbitBlock, stab: StabilizerSubalgebra) -> bool:
    """The extra cocycle condition under which the conjugation-sum formula
    for Z(L_t) is central:

    alpha_{sg_i}(g_j^-1 h g_i, g_i^-1 a g_i) = alpha_{sg_i}(g_j^-1 h a h^-1 g_j, g_j^-1 h g_i)
    for transversal reps g_i, g_j, h in G_s and alpha_s-regular a in G_s.
    """
    G = D.group
    T = D.cocycle.exps
    reps = block.transversal.reps
    members = block.members
    regular_parent = [
        stab.elems[g]
        for cls in alpha_regular_classes(stab.algebra.cocycle)
        for g in cls.members
    ]
    for i, gi in enumerate(reps):
        sgi = members[i]
        for gj in reps:
            gj_inv = G.inverse(gj)
            for h in block.stabilizer:
                left_g = G.times(G.times(gj_inv, h), gi)
                for a in regular_parent:
                    lhs = T[sgi, left_g, G.conjugate(G.inverse(gi), a)]
                    hah = G.conjugate(h, a)
                    rhs = T[sgi, G.conjugate(gj_inv, hah), left_g]
                    if lhs != rhs:
                        return False
    return True


def double_center_basis(D: GeneralizedDouble) -> CenterResult:
    """Center basis of A_alpha(G, S).

    When every restricted cocycle is normal and the compatibility condition
    holds, uses the conjugation-sum formula
    Z(L_t) = sum_{a in L_t} sum_i g_i^-1 a g_i (x) e(s g_i)
    per regular class of each stabilizer; otherwise falls back to the exact
    kernel method and flags the path taken.  Every returned element is
    verified to commute with the whole basis.
    """
    dec = decompose_blocks(D)
    warnings = []
    formula_ok = True
    normality_ok = True
    blocks = []
    for block in dec.orbits:
        stab = stabilizer_subalgebra_iso(D, block.representative)
        if is_normal_cocycle(stab.algebra.cocycle) is not None:
            normality_ok = False
            formula_ok = False
            warnings.append(
                f"restricted cocycle at s={block.representative} is not normal"
            )
        elif not _compatibility_ok(D, block, stab):
            formula_ok = False
            warnings.append(
                f"compatibility condition fails on the orbit of s={block.representative}"
            )
        blocks.append((block, stab))

    if formula_ok:
        elements = []
        counts = []
        for block, stab in blocks:
            G = D.group
            count = 0
            for cls in alpha_regular_classes(stab.algebra.cocycle):
                coeffs = [CycScalar.zero()] * D.dim
                for a_loc in cls.members:
                    a = stab.elems[a_loc]
                    for i, gi in enumerate(block.transversal.reps):
                        gi_inv = G.inverse(gi)
                        target = G.conjugate(gi_inv, a)
                        idx = D.index(target, block.members[i])
                        coeffs[idx] = coeffs[idx] + CycScalar.one()
                elements.append(D.element(coeffs))
                count += 1
            counts.append(count)
        if all(_commutes_with_basis(D, z) for z in elements):
            return CenterResult(
                elements=tuple(elements),
                path="formula",
                per_orbit_counts=tuple(counts),
                compatibility_ok=True,
                normality_ok=normality_ok,
                warnings=tuple(warnings),
            )
        warnings.append("formula elements failed the commutation check; using kernel")

    elements = tuple(center_by_kernel(D))
    counts = []
    for block, stab in blocks:
        counts.append(len(alpha_regular_classes(stab.algebra.cocycle)))
    return CenterResult(
        elements=elements,
        path="kernel",
        per_orbit_counts=tuple(counts),
        compatibility_ok=formula_ok,
        normality_ok=normality_ok,
        warnings=tuple(warnings),
    )


def _commutes_with_basis(D: GeneralizedDouble, z: MonomialElement) -> bool:
    return all(z * D.basis(i) == D.basis(i) * z for i in range(D.dim))
