"""Shared machinery for algebras with monomial structure constants.

The twisted group algebra and the generalized double both multiply basis
elements to a root of unity times a single basis element (or zero).  That
shape is what keeps every structural computation exact: products, identities,
associativity and centers reduce to integer exponent arithmetic plus exact
linear algebra over the cyclotomic field.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import CycScalar
from .exact_linalg import kernel_basis

__all__ = [
    "MonomialAlgebra",
    "MonomialElement",
    "center_by_kernel",
    "associativity_witness",
    "identity_witness",
]


@lru_cache(maxsize=None)
def _zeta_cache(n: int, k: int) -> CycScalar:
    return CycScalar.zeta(n, k)


class MonomialAlgebra:
    """Base class; subclasses provide dim, conductor, basis_product, identity_coeffs."""

    dim: int
    conductor: int

    def basis_product(self, i: int, j: int):
        """(k, exponent) with e_i e_j = zeta^exponent e_k, or None if the product is 0."""
        raise NotImplementedError

    def identity_coeffs(self):
        raise NotImplementedError

    def basis_label(self, i: int) -> str:
        return str(i)

    # -- elements ---------------------------------------------------------

    def scalar(self, exponent: int) -> CycScalar:
        return _zeta_cache(self.conductor, exponent % self.conductor)

    def element(self, coeffs) -> "MonomialElement":
        coeffs = tuple(coeffs)
        if len(coeffs) != self.dim:
            raise ValueError("coefficient vector has wrong length")
        return MonomialElement(self, coeffs)

    def basis(self, i: int) -> "MonomialElement":
        z, one = CycScalar.zero(), CycScalar.one()
        return MonomialElement(self, tuple(one if j == i else z for j in range(self.dim)))

    def zero(self) -> "MonomialElement":
        return MonomialElement(self, (CycScalar.zero(),) * self.dim)

    def one(self) -> "MonomialElement":
        return MonomialElement(self, tuple(self.identity_coeffs()))


class MonomialElement:
    """A coefficient vector over the algebra's distinguished basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: MonomialAlgebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def support(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._check(other)
        return MonomialElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return MonomialElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return MonomialElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "MonomialElement":
        return MonomialElement(self.algebra, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, MonomialElement):
            return self.scale(other)
        self._check(other)
        A = self.algebra
        acc = [CycScalar.zero()] * A.dim
        for i, a in self.support():
            for j, b in other.support():
                p = A.basis_product(i, j)
                if p is None:
                    continue
                k, e = p
                acc[k] = acc[k] + a * b * A.scalar(e)
        return MonomialElement(A, acc)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, MonomialElement):
            return NotImplemented
        return self.algebra is other.algebra and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, MonomialElement) or other.algebra is not self.algebra:
            raise ValueError("mismatched algebras")

    def __repr__(self):
        parts = [f"({c!r})*{self.algebra.basis_label(i)}" for i, c in self.support()]
        return " + ".join(parts) if parts else "0"


def associativity_witness(A: MonomialAlgebra):
    """First basis triple where (e_i e_j) e_k != e_i (e_j e_k), or None.

    For monomial algebras, associativity on basis triples is exactly the
    cocycle law, so this doubles as an independent validity check.
    """
    n = A.conductor
    for i in range(A.dim):
        for j in range(A.dim):
            p = A.basis_product(i, j)
            for k in range(A.dim):
                q = A.basis_product(j, k)
                left = None
                if p is not None:
                    r = A.basis_product(p[0], k)
                    if r is not None:
                        left = (r[0], (p[1] + r[1]) % n)
                right = None
                if q is not None:
                    r = A.basis_product(i, q[0])
                    if r is not None:
                        right = (r[0], (q[1] + r[1]) % n)
                if left != right:
                    return (i, j, k)
    return None


def identity_witness(A: MonomialAlgebra):
    """First basis element not fixed by the two-sided identity, or None."""
    one = A.one()
    for i in range(A.dim):
        b = A.basis(i)
        if one * b != b or b * one != b:
            return i
    return None


def center_by_kernel(A: MonomialAlgebra):
    """Exact basis of the center, by intersecting commutator kernels.

    Starts from the whole algebra and intersects ker [., e_b] one basis
    element at a time, so the working dimension only shrinks.
    """
    zero = CycScalar.zero()
    space = [list(A.basis(i).coeffs) for i in range(A.dim)]
    for b in range(A.dim):
        if not space:
            break
        columns = []
        for v in space:
            acc = [zero] * A.dim
            for i, c in enumerate(v):
                if c.is_zero():
                    continue
                p = A.basis_product(i, b)
                if p is not None:
                    acc[p[0]] = acc[p[0]] + c * A.scalar(p[1])
                q = A.basis_product(b, i)
                if q is not None:
                    acc[q[0]] = acc[q[0]] - c * A.scalar(q[1])
            columns.append(acc)
        rows = [[columns[j][i] for j in range(len(space))] for i in range(A.dim)]
        coeffs = kernel_basis(rows, ncols=len(space))
        space = [
            [sum((k[j] * space[j][i] for j in range(len(space))), zero) for i in range(A.dim)]
            for k in coeffs
        ]
    return [A.element(v) for v in space]
