"""2-cocycles on a finite group valued in mu_N or in the units of C[S].

Tables store exponents: alpha(x, y) = zeta_N^exps[x, y].  Keeping everything
in exponent arithmetic mod N makes validation, regularity and the coboundary
solver exact integer computations.  Construction never checks the cocycle law
(tests need to build broken tables on purpose); ``validate_cocycle`` is the
decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import RootOfUnity, lcm
from .exact_linalg import solve_mod
from .groups import (
    FiniteGroup,
    RightGSet,
    ConjugacyClass,
    abelian_digits,
    centralizer,
    conjugacy_classes,
    klein_four_group,
    left_transversal,
    orbit_stabilizer,
    subgroup_group,
)

__all__ = [
    "TwoCocycle",
    "SetCocycle",
    "Coboundary",
    "SetCoboundary",
    "ValidationReport",
    "validate_cocycle",
    "apply_coboundary",
    "is_alpha_regular",
    "alpha_regular_classes",
    "is_normal_cocycle",
    "normalize_cocycle",
    "restrict",
    "solve_coboundary",
    "trivial_cocycle",
    "bilinear_cocycle",
    "klein_nontrivial_cocycle",
    "trivial_set_cocycle",
    "set_cocycle_from_scalar",
    "induced_set_cocycle",
    "random_coboundary",
    "random_set_coboundary",
]


class TwoCocycle:
    """alpha: G x G -> mu_N as a table of exponents."""

    __slots__ = ("group", "n", "exps")

    def __init__(self, group: FiniteGroup, n: int, exps):
        e = np.array(exps, dtype=np.int64) % n
        if e.shape != (group.order, group.order):
            raise ValueError("cocycle table must be |G| x |G|")
        e.setflags(write=False)
        self.group = group
        self.n = n
        self.exps = e

    def value(self, x: int, y: int) -> RootOfUnity:
        return RootOfUnity(self.n, int(self.exps[x, y]))

    def promote(self, m: int) -> "TwoCocycle":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("conductor must grow to a multiple")
        return TwoCocycle(self.group, m, self.exps * (m // self.n))

    def __eq__(self, other):
        if not isinstance(other, TwoCocycle):
            return NotImplemented
        m = lcm(self.n, other.n)
        return (self.group is other.group or np.array_equal(self.group.mul, other.group.mul)) and np.array_equal(
            self.promote(m).exps, other.promote(m).exps
        )

    __hash__ = None

    def __repr__(self):
        return f"TwoCocycle(|G|={self.group.order}, N={self.n})"


class SetCocycle:
    """alpha: G x G -> U(C[S]) componentwise, exps[s, x, y] for alpha_s(x, y)."""

    __slots__ = ("group", "gset", "n", "exps")

    def __init__(self, group: FiniteGroup, gset: RightGSet, n: int, exps):
        e = np.array(exps, dtype=np.int64) % n
        if e.shape != (gset.size, group.order, group.order):
            raise ValueError("set cocycle table must be |S| x |G| x |G|")
        e.setflags(write=False)
        self.group = group
        self.gset = gset
        self.n = n
        self.exps = e

    def value(self, s: int, x: int, y: int) -> RootOfUnity:
        return RootOfUnity(self.n, int(self.exps[s, x, y]))

    def promote(self, m: int) -> "SetCocycle":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("conductor must grow to a multiple")
        return SetCocycle(self.group, self.gset, m, self.exps * (m // self.n))

    def __eq__(self, other):
        if not isinstance(other, SetCocycle):
            return NotImplemented
        m = lcm(self.n, other.n)
        return (
            (self.group is other.group or np.array_equal(self.group.mul, other.group.mul))
            and (self.gset is other.gset or np.array_equal(self.gset.action, other.gset.action))
            and np.array_equal(self.promote(m).exps, other.promote(m).exps)
        )

    __hash__ = None

    def __repr__(self):
        return f"SetCocycle(|G|={self.group.order}, |S|={self.gset.size}, N={self.n})"


class Coboundary:
    """lambda: G -> mu_N with lambda(1) = 1, as exponents."""

    __slots__ = ("group", "n", "exps")

    def __init__(self, group: FiniteGroup, n: int, exps):
        e = np.array(exps, dtype=np.int64) % n
        if e.shape != (group.order,):
            raise ValueError("coboundary must assign one value per element")
        if e[group.identity] != 0:
            raise ValueError("coboundary must satisfy lambda(1) = 1")
        e.setflags(write=False)
        self.group = group
        self.n = n
        self.exps = e

    def promote(self, m: int) -> "Coboundary":
        if m == self.n:
            return self
        return Coboundary(self.group, m, self.exps * (m // self.n))

    def inverse(self) -> "Coboundary":
        return Coboundary(self.group, self.n, -self.exps)


class SetCoboundary:
    """lambda: G -> U(C[S]) componentwise, exps[s, g], with lambda(1) = 1."""

    __slots__ = ("group", "gset", "n", "exps")

    def __init__(self, group: FiniteGroup, gset: RightGSet, n: int, exps):
        e = np.array(exps, dtype=np.int64) % n
        if e.shape != (gset.size, group.order):
            raise ValueError("set coboundary must be |S| x |G|")
        if np.any(e[:, group.identity]):
            raise ValueError("coboundary must satisfy lambda(1) = 1")
        e.setflags(write=False)
        self.group = group
        self.gset = gset
        self.n = n
        self.exps = e

    def promote(self, m: int) -> "SetCoboundary":
        if m == self.n:
            return self
        return SetCoboundary(self.group, self.gset, m, self.exps * (m // self.n))

    def inverse(self) -> "SetCoboundary":
        return SetCoboundary(self.group, self.gset, self.n, -self.exps)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str | None = None
    where: tuple | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "valid"
        return f"{self.kind} violated at {self.where}"


# -- validation ---------------------------------------------------------------


def validate_cocycle(alpha) -> ValidationReport:
    """Exhaustive check of normalization and the cocycle law."""
    if isinstance(alpha, TwoCocycle):
        return _validate_scalar(alpha)
    if isinstance(alpha, SetCocycle):
        return _validate_set(alpha)
    raise TypeError(f"not a cocycle: {alpha!r}")


def _validate_scalar(alpha: TwoCocycle) -> ValidationReport:
    G, T, n = alpha.group, alpha.exps, alpha.n
    e = G.identity
    if np.any(T[:, e]) or np.any(T[e, :]):
        bad = int(np.nonzero(T[:, e])[0][0]) if np.any(T[:, e]) else int(np.nonzero(T[e, :])[0][0])
        return ValidationReport(False, "normalization", (bad,))
    mul = G.mul
    lhs = (T[:, :, None] + T[mul, :]) % n
    rhs = (T[None, :, :] + T[:, mul]) % n
    if not np.array_equal(lhs, rhs):
        x, y, z = (int(v) for v in np.argwhere(lhs != rhs)[0])
        return ValidationReport(False, "cocycle law", (x, y, z))
    return ValidationReport(True)


def _validate_set(alpha: SetCocycle) -> ValidationReport:
    G, S, T, n = alpha.group, alpha.gset, alpha.exps, alpha.n
    e = G.identity
    if np.any(T[:, :, e]) or np.any(T[:, e, :]):
        return ValidationReport(False, "normalization", None)
    mul, act, inv = G.mul, S.action, G.inv
    for s in range(S.size):
        # alpha_s(hk, l) + alpha_{s.l^-1}(h, k) == alpha_s(h, kl) + alpha_s(k, l)
        # all arrays indexed [h, k, l]
        a = T[s][mul, :]
        b = np.transpose(T[act[s, inv], :, :], (1, 2, 0))
        c = T[s][:, mul]
        d = np.broadcast_to(T[s][None, :, :], a.shape)
        if not np.array_equal((a + b) % n, (c + d) % n):
            h, k, l = (int(v) for v in np.argwhere((a + b) % n != (c + d) % n)[0])
            return ValidationReport(False, "set cocycle law", (s, h, k, l))
    return ValidationReport(True)


# -- coboundary action ---------------------------------------------------------


def apply_coboundary(alpha, lam):
    """Multiply by the coboundary: beta(x,y) = alpha(x,y) lam(x) lam(y) lam(xy)^-1.

    In the set-valued case the first factor is twisted by the action:
    beta_s(x,y) = alpha_s(x,y) lam_{s.y^-1}(x) lam_s(y) lam_s(xy)^-1.
    """
    if isinstance(alpha, TwoCocycle) and isinstance(lam, Coboundary):
        m = lcm(alpha.n, lam.n)
        a, l = alpha.promote(m), lam.promote(m)
        G = alpha.group
        exps = (a.exps + l.exps[:, None] + l.exps[None, :] - l.exps[G.mul]) % m
        return TwoCocycle(G, m, exps)
    if isinstance(alpha, SetCocycle) and isinstance(lam, SetCoboundary):
        m = lcm(alpha.n, lam.n)
        a, l = alpha.promote(m), lam.promote(m)
        G, S = alpha.group, alpha.gset
        out = np.empty_like(a.exps)
        for s in range(S.size):
            twist = l.exps[S.action[s, G.inv], :].T      # [x, y] -> lam_{s.y^-1}(x)
            out[s] = (a.exps[s] + twist + l.exps[s][None, :] - l.exps[s][G.mul]) % m
        return SetCocycle(G, S, m, out)
    raise TypeError("mismatched cocycle/coboundary kinds")


# -- regularity -----------------------------------------------------------------


def is_alpha_regular(alpha: TwoCocycle, g: int) -> bool:
    """alpha(g, x) = alpha(x, g) for every x in the centralizer of g."""
    C = centralizer(alpha.group, g)
    return bool(np.array_equal(alpha.exps[g, C], alpha.exps[C, g]))


def alpha_regular_classes(alpha: TwoCocycle) -> list[ConjugacyClass]:
    """Conjugacy classes whose elements are alpha-regular.

    Regularity is a class property for valid cocycles; if the members of some
    class disagree the input was not a cocycle and a ValueError reports it.
    """
    out = []
    for cls in conjugacy_classes(alpha.group):
        flags = [is_alpha_regular(alpha, g) for g in cls.members]
        if any(flags) != all(flags):
            raise ValueError(
                f"regularity not constant on class of {cls.representative}; "
                "input violates the cocycle law"
            )
        if flags[0]:
            out.append(cls)
    return out


def is_normal_cocycle(alpha: TwoCocycle):
    """None if alpha(x,g) = alpha(xgx^-1, x) for all x and regular g, else a witness."""
    G = alpha.group
    regular = [g for cls in alpha_regular_classes(alpha) for g in cls.members]
    for x in range(G.order):
        for g in regular:
            if alpha.exps[x, g] != alpha.exps[G.conjugate(x, g), x]:
                return (x, g)
    return None


def normalize_cocycle(alpha: TwoCocycle) -> tuple[TwoCocycle, Coboundary]:
    """A normal cocycle cohomologous to alpha, with the witnessing coboundary.

    For each regular class the representative is the smallest member, the
    transversal of its centralizer is greedy, and lambda records the scalar
    by which t g_i t^-1 conjugated in the algebra differs from the plain
    basis vector.  lambda is 1 off the regular classes and at representatives.
    """
    G, T, n = alpha.group, alpha.exps, alpha.n
    lam = np.zeros(G.order, dtype=np.int64)
    for cls in alpha_regular_classes(alpha):
        gi = cls.representative
        trans = left_transversal(G, centralizer(G, gi))
        for t in trans.reps:
            h = G.conjugate(t, gi)
            tgi = G.times(t, gi)
            tinv = G.inverse(t)
            lam[h] = (T[t, gi] + T[tgi, tinv] - T[t, tinv]) % n
    cob = Coboundary(G, n, lam)
    return apply_coboundary(alpha, cob), cob


# -- restriction ----------------------------------------------------------------


def restrict(alpha: SetCocycle, s: int):
    """The s-component restricted to the stabilizer G_s.

    Returns (H, elems, gamma): H is G_s as its own group, elems maps H's
    indices to parent indices, gamma the restricted scalar cocycle on H.
    """
    G, S = alpha.group, alpha.gset
    _, stab, _ = orbit_stabilizer(S, G, s)
    H, elems = subgroup_group(G, stab)
    idx = np.array(elems, dtype=np.int64)
    table = alpha.exps[s][np.ix_(idx, idx)]
    gamma = TwoCocycle(H, alpha.n, table)
    report = validate_cocycle(gamma)
    if not report:
        raise ValueError(f"restriction is not a cocycle: {report.describe()}")
    return H, elems, gamma


# -- coboundary solving -----------------------------------------------------------


def solve_coboundary(alpha: TwoCocycle, beta: TwoCocycle, conductor: int | None = None):
    """A mu_N-valued lambda with apply_coboundary(alpha, lambda) == beta, or None.

    Decides mu_N-cohomology at N = lcm of the conductors (or the given one);
    callers wanting C*-equivalence should raise the conductor.
    """
    if not (alpha.group is beta.group or np.array_equal(alpha.group.mul, beta.group.mul)):
        raise ValueError("cocycles live on different groups")
    n = lcm(alpha.n, beta.n)
    if conductor is not None:
        n = lcm(n, conductor)
    a, b = alpha.promote(n), beta.promote(n)
    G = a.group
    d = (b.exps - a.exps) % n
    e = G.identity
    cols = [g for g in range(G.order) if g != e]
    col_of = {g: i for i, g in enumerate(cols)}
    rows, rhs = [], []
    for x in cols:
        for y in cols:
            row = [0] * len(cols)
            row[col_of[x]] += 1
            row[col_of[y]] += 1
            xy = G.times(x, y)
            if xy != e:
                row[col_of[xy]] -= 1
            rows.append(row)
            rhs.append(int(d[x, y]))
    sol = solve_mod(rows, rhs, n)
    if sol is None:
        return None
    exps = np.zeros(G.order, dtype=np.int64)
    for g, v in zip(cols, sol):
        exps[g] = v
    return Coboundary(G, n, exps)


# -- constructors -----------------------------------------------------------------


def trivial_cocycle(G: FiniteGroup, n: int = 1) -> TwoCocycle:
    return TwoCocycle(G, n, np.zeros((G.order, G.order), dtype=np.int64))


def bilinear_cocycle(G: FiniteGroup, orders, pairing, conductor: int) -> TwoCocycle:
    """exps[x, y] = sum_ij pairing[i][j] x_i y_j on a product of cyclic groups.

    G must be abelian_group(orders).  Bi-additivity requires
    pairing[i][j]*orders[i] and pairing[i][j]*orders[j] to vanish mod the
    conductor, which is checked.
    """
    orders = list(orders)
    total = 1
    for o in orders:
        total *= o
    if total != G.order:
        raise ValueError("orders do not match the group")
    for i, oi in enumerate(orders):
        for j, oj in enumerate(orders):
            p = pairing[i][j]
            if (p * oi) % conductor or (p * oj) % conductor:
                raise ValueError(f"pairing[{i}][{j}] is not bi-additive mod {conductor}")
    digits = [abelian_digits(g, orders) for g in range(G.order)]
    exps = np.zeros((G.order, G.order), dtype=np.int64)
    for x in range(G.order):
        for y in range(G.order):
            exps[x, y] = sum(
                pairing[i][j] * digits[x][i] * digits[y][j]
                for i in range(len(orders))
                for j in range(len(orders))
            )
    return TwoCocycle(G, conductor, exps)


def klein_nontrivial_cocycle() -> tuple[FiniteGroup, TwoCocycle]:
    """The Klein four-group with its standard nontrivial cocycle (-1)^(a2 b1)."""
    G = klein_four_group()
    return G, bilinear_cocycle(G, [2, 2], [[0, 0], [1, 0]], 2)


def trivial_set_cocycle(G: FiniteGroup, S: RightGSet, n: int = 1) -> SetCocycle:
    return SetCocycle(G, S, n, np.zeros((S.size, G.order, G.order), dtype=np.int64))


def set_cocycle_from_scalar(beta: TwoCocycle, S: RightGSet) -> SetCocycle:
    """The same scalar cocycle in every component; always valid."""
    exps = np.broadcast_to(beta.exps, (S.size,) + beta.exps.shape)
    return SetCocycle(beta.group, S, beta.n, np.array(exps))


def induced_set_cocycle(G: FiniteGroup, S: RightGSet, stabilizer_cocycles: dict) -> SetCocycle:
    """Extend scalar cocycles on orbit stabilizers to a full set cocycle.

    stabilizer_cocycles maps each orbit representative (smallest index) to a
    TwoCocycle on subgroup_group(G, G_s).  The extension composes the regular
    projective action of the stabilizer algebra along a right transversal;
    restricting the result back to a stabilizer recovers the input cocycle.
    """
    conductor = 1
    for gamma in stabilizer_cocycles.values():
        conductor = lcm(conductor, gamma.n)
    exps = np.zeros((S.size, G.order, G.order), dtype=np.int64)
    for orbit in S.orbits(G):
        rep = orbit[0]
        if rep not in stabilizer_cocycles:
            raise ValueError(f"missing stabilizer cocycle for orbit of {rep}")
        gamma = stabilizer_cocycles[rep].promote(conductor)
        orb, stab, trans = orbit_stabilizer(S, G, rep)
        local = {g: i for i, g in enumerate(sorted(stab))}
        if gamma.group.order != len(stab):
            raise ValueError("stabilizer cocycle has the wrong order")
        pos_in_orbit = {t: i for i, t in enumerate(orb)}
        reps = trans.reps
        for i, t_i in enumerate(orb):
            for x in range(G.order):
                l = pos_in_orbit[S.apply(t_i, G.inverse(x))]
                b = G.times(G.times(reps[i], G.inverse(x)), G.inverse(reps[l]))
                for y in range(G.order):
                    p = pos_in_orbit[S.apply(orb[l], G.inverse(y))]
                    c = G.times(G.times(reps[l], G.inverse(y)), G.inverse(reps[p]))
                    exps[t_i, y, x] = gamma.exps[
                        local[G.inverse(c)], local[G.inverse(b)]
                    ]
    return SetCocycle(G, S, conductor, exps)


# -- randomized inputs (seeded) -----------------------------------------------------


def random_coboundary(G: FiniteGroup, n: int, rng) -> Coboundary:
    exps = np.array([0 if g == G.identity else rng.randrange(n) for g in range(G.order)])
    return Coboundary(G, n, exps)


def random_set_coboundary(G: FiniteGroup, S: RightGSet, n: int, rng) -> SetCoboundary:
    exps = np.array(
        [[0 if g == G.identity else rng.randrange(n) for g in range(G.order)] for _ in range(S.size)]
    )
    return SetCoboundary(G, S, n, exps)
