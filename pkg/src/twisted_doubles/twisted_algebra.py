"""The twisted group algebra C^alpha[G].

Basis vectors g-bar multiply by (a x-bar)(b y-bar) = a b alpha(x,y) xy-bar.
The center has one basis vector per alpha-regular conjugacy class, built from
conjugation sums over a transversal of the centralizer; semisimplicity is
certified by the trace form of the regular representation having zero kernel.
"""

from __future__ import annotations

from .cocycles import TwoCocycle, alpha_regular_classes
from .cyclotomic import CycScalar
from .exact_linalg import kernel_basis
from .groups import FiniteGroup, centralizer, left_transversal, same_group
from .monomial import MonomialAlgebra, MonomialElement

__all__ = [
    "TwistedGroupAlgebra",
    "AlgebraElement",
    "tga_multiply",
    "basis_inverse",
    "center_basis",
    "regular_representation",
    "is_semisimple",
]


class TwistedGroupAlgebra(MonomialAlgebra):
    """F^alpha[G] over the cyclotomic field Q(zeta_N)."""

    __slots__ = ("group", "cocycle", "dim", "conductor")

    def __init__(self, group: FiniteGroup, cocycle: TwoCocycle):
        if not same_group(cocycle.group, group):
            raise ValueError("cocycle is not defined on this group")
        self.group = group
        self.cocycle = cocycle
        self.dim = group.order
        self.conductor = cocycle.n

    def basis_product(self, i: int, j: int):
        return int(self.group.mul[i, j]), int(self.cocycle.exps[i, j])

    def identity_coeffs(self):
        z, one = CycScalar.zero(), CycScalar.one()
        return tuple(one if g == self.group.identity else z for g in range(self.dim))

    def basis_label(self, i: int) -> str:
        return f"[{self.group.label(i)}]"

    def __repr__(self):
        return f"TwistedGroupAlgebra(|G|={self.dim}, N={self.conductor})"


AlgebraElement = MonomialElement


def tga_multiply(a: MonomialElement, b: MonomialElement) -> MonomialElement:
    """Bilinear extension of (a x-bar)(b y-bar) = ab alpha(x,y) xy-bar."""
    return a * b


def basis_inverse(A: TwistedGroupAlgebra, g: int) -> MonomialElement:
    """g-bar^-1 = alpha(g^-1, g)^-1 (g^-1)-bar."""
    ginv = A.group.inverse(g)
    coeff = A.scalar(-int(A.cocycle.exps[ginv, g]))
    return A.basis(ginv).scale(coeff)


def center_basis(A: TwistedGroupAlgebra) -> list[MonomialElement]:
    """One element per alpha-regular class: z_i = sum over the transversal
    of t-bar g_i-bar t-bar^-1.

    Uses the general transversal formula, so it works for arbitrary valid
    cocycles, not just normal ones.
    """
    G, T, n = A.group, A.cocycle.exps, A.conductor
    out = []
    for cls in alpha_regular_classes(A.cocycle):
        gi = cls.representative
        trans = left_transversal(G, centralizer(G, gi))
        acc = [CycScalar.zero()] * A.dim
        for t in trans.reps:
            h = G.conjugate(t, gi)
            tgi = G.times(t, gi)
            tinv = G.inverse(t)
            e = (T[t, gi] + T[tgi, tinv] - T[t, tinv]) % n
            acc[h] = acc[h] + A.scalar(e)
        out.append(A.element(acc))
    return out


def regular_representation(A: TwistedGroupAlgebra):
    """Left multiplication matrices L_g-bar as an exact MatrixModule."""
    from .modules import regular_module

    return regular_module(A)


def is_semisimple(A: TwistedGroupAlgebra) -> bool:
    """Whether the trace form T(x,y) = tr(L_x L_y) of the regular
    representation is nondegenerate (always true in characteristic zero;
    a regression tripwire for the exact arithmetic)."""
    G, T, n = A.group, A.cocycle.exps, A.conductor
    size = A.dim
    gram = []
    for x in range(size):
        row = []
        for y in range(size):
            acc = CycScalar.zero()
            for z in range(size):
                yz = G.times(y, z)
                if G.times(x, yz) == z:
                    acc = acc + A.scalar(int(T[y, z]) + int(T[x, yz]))
            row.append(acc)
        gram.append(row)
    return len(kernel_basis(gram)) == 0
