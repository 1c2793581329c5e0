"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`CycScalar` is an element of Q(zeta_N) stored in the power basis
1, zeta, ..., zeta^(phi(N)-1) with Fraction coefficients, reduced modulo the
N-th cyclotomic polynomial.  Equality, inversion and kernel computations are
therefore exact, which is what makes regularity tests and center computations
decidable rather than tolerance-dependent.

:class:`RootOfUnity` is the lightweight form used in cocycle tables, where
every value is some zeta_N^k and only the exponent matters.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CycScalar",
    "RootOfUnity",
    "cyclotomic_polynomial",
    "euler_phi",
    "format_scalar",
    "parse_scalar",
    "lcm",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _polydiv_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials; den is monic, remainder is zero."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n in ascending degree, leading 1 included."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            num = _polydiv_int(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduced_powers(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis coordinates of zeta_n^e for e = 0..n-1."""
    phi = euler_phi(n)
    top = cyclotomic_polynomial(n)
    rows = []
    cur = [_ZERO] * phi
    cur[0] = _ONE
    for _ in range(n):
        rows.append(tuple(cur))
        carry = cur[phi - 1]
        cur = [_ZERO] + cur[:-1]
        if carry:
            for i in range(phi):
                cur[i] -= carry * top[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _embed_roots(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * e / n) for e in range(n))


def _pstrip(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pstrip(out)


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _pstrip(out)


def _pdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [_ZERO] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i] * inv_lead
        if c:
            q[i - len(b) + 1] = c
            for j, bj in enumerate(b):
                a[i - len(b) + 1 + j] -= c * bj
    return q, _pstrip(a)


class CycScalar:
    """An element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q) -> "CycScalar":
        return CycScalar(1, (Fraction(q),))

    @staticmethod
    def zero() -> "CycScalar":
        return _SCALAR_ZERO

    @staticmethod
    def one() -> "CycScalar":
        return _SCALAR_ONE

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CycScalar":
        return CycScalar(n, _reduced_powers(n)[k % n])

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return self.coeffs[0]

    def promote(self, m: int) -> "CycScalar":
        """Rewrite in Q(zeta_m); m must be a multiple of the conductor."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot promote conductor {self.n} to {m}")
        rows = _reduced_powers(m)
        phi = len(rows[0])
        step = m // self.n
        acc = [_ZERO] * phi
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            row = rows[(e * step) % m]
            for t, rt in enumerate(row):
                if rt:
                    acc[t] += c * rt
        return CycScalar(m, acc)

    def _pair(self, other: "CycScalar"):
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "CycScalar":
        if isinstance(x, CycScalar):
            return x
        if isinstance(x, RootOfUnity):
            return x.scalar()
        if isinstance(x, (int, Fraction)):
            return CycScalar.rational(x)
        return NotImplemented

    def __add__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return CycScalar(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.n, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        n = a.n
        phi = len(a.coeffs)
        rows = _reduced_powers(n)
        acc = [_ZERO] * phi
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(b.coeffs):
                if not bj:
                    continue
                c = ai * bj
                e = i + j
                if e < phi:
                    acc[e] += c
                else:
                    row = rows[e % n]
                    for t, rt in enumerate(row):
                        if rt:
                            acc[t] += c * rt
        return CycScalar(n, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero cyclotomic scalar")
        if self.is_rational():
            return CycScalar(self.n, (1 / self.coeffs[0],) + self.coeffs[1:])
        top = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        # extended Euclid keeping the cofactor of self: r_i = u_i*self (mod Phi_n)
        r0, u0 = top, [_ZERO]
        r1, u1 = _pstrip(list(self.coeffs)), [_ONE]
        while len(r1) > 1:
            q, r2 = _pdivmod(r0, r1)
            u2 = _psub(u0, _pmul(q, u1))
            r0, u0 = r1, u1
            r1, u1 = r2, u2
        # Phi_n is irreducible, so the gcd is a nonzero constant
        g = r1[0]
        phi = euler_phi(self.n)
        inv = [c / g for c in u1]
        if len(inv) > phi:
            _, inv = _pdivmod(inv, top)
        inv = list(inv) + [_ZERO] * (phi - len(inv))
        return CycScalar(self.n, inv[:phi])

    def __truediv__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycScalar":
        """Complex conjugate (the Galois map zeta -> zeta^(-1))."""
        n = self.n
        rows = _reduced_powers(n)
        phi = len(self.coeffs)
        acc = [_ZERO] * phi
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            row = rows[(n - e) % n]
            for t, rt in enumerate(row):
                if rt:
                    acc[t] += c * rt
        return CycScalar(n, acc)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    # -- output ------------------------------------------------------------

    def embed(self) -> complex:
        """Numerical value under zeta_n -> exp(2*pi*i/n)."""
        roots = _embed_roots(self.n)
        return sum((float(c) * roots[e] for e, c in enumerate(self.coeffs) if c), 0j)

    def __repr__(self):
        return format_scalar(self)


_SCALAR_ZERO = CycScalar(1, (_ZERO,))
_SCALAR_ONE = CycScalar(1, (_ONE,))


class RootOfUnity:
    """zeta_n^k, kept in lowest terms so equal values compare equal."""

    __slots__ = ("n", "k")

    def __init__(self, n: int, k: int):
        k %= n
        g = gcd(k, n)
        if k == 0:
            n = 1
        elif g > 1:
            n //= g
            k //= g
        self.n = n
        self.k = k

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.n, other.n)
        return RootOfUnity(m, self.k * (m // self.n) + other.k * (m // other.n))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.n, -self.k)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.n, self.k * e)

    @property
    def order(self) -> int:
        return self.n

    def scalar(self) -> CycScalar:
        return CycScalar.zeta(self.n, self.k)

    def embed(self) -> complex:
        return _embed_roots(self.n)[self.k]

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.n == other.n and self.k == other.k
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scalar() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.k))

    def __repr__(self):
        if self.n == 1:
            return "1"
        if self.n == 2:
            return "-1"
        return f"zeta({self.n})^{self.k}"


# -- text form -------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coef>-?\d+(?:/\d+)?)\*?)?"
    r"(?:zeta\((?P<n>\d+)\)(?:\^(?P<k>-?\d+))?)?$"
)


def format_scalar(x: CycScalar) -> str:
    """Render as a sum of rational multiples of zeta(N)^k powers."""
    if x.is_zero():
        return "0"
    if x.is_rational():
        return str(x.coeffs[0])
    parts = []
    for e, c in enumerate(x.coeffs):
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(f"zeta({x.n})^{e}")
        elif c == -1:
            parts.append(f"-zeta({x.n})^{e}")
        else:
            parts.append(f"{c}*zeta({x.n})^{e}")
    return "+".join(parts).replace("+-", "-")


def parse_scalar(token: str):
    """Parse a scalar token.

    Exact forms (rationals, zeta(N)^k and +/- combinations of both) give a
    CycScalar; anything with a decimal point or trailing j falls back to a
    Python complex for the numeric backend.  Raises ValueError otherwise.
    """
    text = token.strip().replace(" ", "")
    if not text:
        raise ValueError("empty scalar token")
    exact = _try_parse_exact(text)
    if exact is not None:
        return exact
    try:
        return complex(text)
    except ValueError:
        raise ValueError(f"cannot parse scalar {token!r}") from None


def _try_parse_exact(text: str):
    # split a top-level sum, keeping signs attached to each term
    pieces = re.split(r"(?<=[0-9a-z)])\+", text)
    terms = []
    for piece in pieces:
        for sub in _split_minus(piece):
            if not sub:
                return None
            terms.append(sub)
    total = CycScalar.zero()
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("n") is None):
            return None
        coef = Fraction(m.group("coef")) if m.group("coef") else _ONE
        if m.group("n"):
            n = int(m.group("n"))
            k = int(m.group("k")) if m.group("k") else 1
            total = total + CycScalar.zeta(n, k) * coef
        else:
            total = total + CycScalar.rational(coef)
    return total


def _split_minus(piece: str) -> list[str]:
    # split "a-b-c" into ["a", "-b", "-c"]; leading minus binds to first term
    out = []
    cur = ""
    for i, ch in enumerate(piece):
        if ch == "-" and i > 0 and piece[i - 1] not in "^(*+-":
            out.append(cur)
            cur = "-"
        else:
            cur += ch
    out.append(cur)
    return out
