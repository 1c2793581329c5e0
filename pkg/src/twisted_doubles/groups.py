"""Finite groups as explicit multiplication tables, plus right G-sets.

Elements are the indices 0..order-1.  Every constructed group is checked
exhaustively (associativity, two-sided identity and inverses), so downstream
code can trust the tables.  Canonical choices are always the smallest element
index, which keeps outputs deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _perms

import numpy as np

__all__ = [
    "FiniteGroup",
    "RightGSet",
    "ConjugacyClass",
    "CosetTransversal",
    "GroupTableError",
    "conjugacy_classes",
    "centralizer",
    "left_transversal",
    "right_transversal",
    "orbit_stabilizer",
    "subgroup_group",
    "trivial_group",
    "cyclic_group",
    "abelian_group",
    "klein_four_group",
    "symmetric_group",
    "dihedral_group",
    "quaternion_group",
    "direct_product",
    "trivial_gset",
    "regular_gset",
    "gset_from_rows",
]

DEFAULT_MAX_ORDER = 128


class GroupTableError(ValueError):
    """Raised when a table fails the group axioms or size limits."""


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    __slots__ = ("order", "mul", "identity", "inv", "labels")

    def __init__(self, table, labels=None, max_order: int = DEFAULT_MAX_ORDER):
        mul = np.array(table, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise GroupTableError("multiplication table must be square")
        n = mul.shape[0]
        if n == 0:
            raise GroupTableError("empty group")
        if n > max_order:
            raise GroupTableError(f"order {n} exceeds cap {max_order}")
        if mul.min() < 0 or mul.max() >= n:
            raise GroupTableError("table entries out of range")

        identity = None
        rng = np.arange(n)
        for e in range(n):
            if np.array_equal(mul[e], rng) and np.array_equal(mul[:, e], rng):
                identity = e
                break
        if identity is None:
            raise GroupTableError("no two-sided identity")

        # full associativity check: mul[mul[a,b],c] == mul[a,mul[b,c]]
        if not np.array_equal(mul[mul], mul[:, mul]):
            bad = np.argwhere(mul[mul] != mul[:, mul])[0]
            raise GroupTableError(f"associativity fails at {tuple(int(v) for v in bad)}")

        hits = mul == identity
        if not (hits.sum(axis=1) == 1).all():
            raise GroupTableError("missing or non-unique inverses")
        inv = hits.argmax(axis=1).astype(np.int64)
        if not np.array_equal(mul[inv, rng], np.full(n, identity)):
            raise GroupTableError("inverses are not two-sided")

        mul.setflags(write=False)
        inv.setflags(write=False)
        self.order = n
        self.mul = mul
        self.identity = int(identity)
        self.inv = inv
        self.labels = tuple(labels) if labels is not None else None

    # -- queries -----------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, x: int, g: int) -> int:
        """x g x^-1."""
        return int(self.mul[self.mul[x, g], self.inv[x]])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return np.array_equal(self.mul, self.mul.T)

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def closure(self, members) -> tuple[int, ...]:
        """Smallest subgroup containing the given elements."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = sorted(set(int(m) for m in members))
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (int(self.mul[x, g]), int(self.mul[g, x])):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return tuple(sorted(seen))

    def is_subgroup(self, members) -> bool:
        ms = sorted(set(int(m) for m in members))
        if not ms or self.identity not in ms:
            return False
        mset = set(ms)
        return all(int(self.mul[a, b]) in mset for a in ms for b in ms) and all(
            int(self.inv[a]) in mset for a in ms
        )

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_permutations(generators, max_order: int = DEFAULT_MAX_ORDER) -> "FiniteGroup":
        """Closure of permutation generators (tuples mapping i -> p[i]).

        Elements are sorted lexicographically, which puts the identity first.
        """
        gens = [tuple(g) for g in generators]
        if not gens:
            raise GroupTableError("need at least one generator")
        deg = len(gens[0])
        if any(len(g) != deg or sorted(g) != list(range(deg)) for g in gens):
            raise GroupTableError("generators must be permutations of equal degree")
        ident = tuple(range(deg))
        seen = {ident}
        frontier = [ident]
        while frontier:
            p = frontier.pop()
            for g in gens:
                q = tuple(p[g[i]] for i in range(deg))
                if q not in seen:
                    if len(seen) >= max_order:
                        raise GroupTableError(f"closure exceeds cap {max_order}")
                    seen.add(q)
                    frontier.append(q)
        elems = sorted(seen)
        index = {p: i for i, p in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for i, p in enumerate(elems):
            for j, q in enumerate(elems):
                table[i, j] = index[tuple(p[q[t]] for t in range(deg))]
        labels = ["(" + " ".join(str(v) for v in p) + ")" for p in elems]
        return FiniteGroup(table, labels=labels, max_order=max_order)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class CosetTransversal:
    subgroup: tuple[int, ...]
    reps: tuple[int, ...]
    side: str = "left"


class RightGSet:
    """A finite right G-set given by its action table s, g -> s.g."""

    __slots__ = ("size", "action")

    def __init__(self, action_table, group: FiniteGroup):
        act = np.array(action_table, dtype=np.int64)
        if act.ndim != 2 or act.shape[1] != group.order:
            raise GroupTableError("action table must be size x |G|")
        m = act.shape[0]
        if act.min() < 0 or act.max() >= m:
            raise GroupTableError("action entries out of range")
        if not np.array_equal(act[:, group.identity], np.arange(m)):
            raise GroupTableError("identity does not act trivially")
        # (s.g).h == s.(gh)
        if not np.array_equal(act[act], act[:, group.mul]):
            bad = np.argwhere(act[act] != act[:, group.mul])[0]
            raise GroupTableError(f"right action fails at {tuple(int(v) for v in bad)}")
        act.setflags(write=False)
        self.size = m
        self.action = act

    def apply(self, s: int, g: int) -> int:
        return int(self.action[s, g])

    def orbits(self, group: FiniteGroup) -> list[list[int]]:
        """Orbits with smallest-index representatives, in index order."""
        seen = set()
        out = []
        for s in range(self.size):
            if s in seen:
                continue
            orb = sorted(set(int(t) for t in self.action[s]))
            seen.update(orb)
            out.append(orb)
        return out

    def __repr__(self):
        return f"RightGSet(size={self.size})"


# -- operations --------------------------------------------------------------


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    return a is b or np.array_equal(a.mul, b.mul)


def same_gset(a: RightGSet, b: RightGSet) -> bool:
    return a is b or np.array_equal(a.action, b.action)


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Conjugation orbits, sorted members, representative = smallest index."""
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        members = sorted(set(G.conjugate(x, g) for x in range(G.order)))
        seen.update(members)
        classes.append(ConjugacyClass(representative=members[0], members=tuple(members)))
    return classes


def centralizer(G: FiniteGroup, g: int) -> list[int]:
    """All x with xg = gx, sorted."""
    return [int(x) for x in np.nonzero(G.mul[:, g] == G.mul[g, :])[0]]


def _transversal(G: FiniteGroup, H, side: str) -> CosetTransversal:
    members = tuple(sorted(set(int(h) for h in H)))
    if not G.is_subgroup(members):
        raise GroupTableError("not a subgroup")
    reps = []
    seen = set()
    for g in range(G.order):
        if g in seen:
            continue
        reps.append(g)
        if side == "left":
            seen.update(int(G.mul[g, h]) for h in members)
        else:
            seen.update(int(G.mul[h, g]) for h in members)
    return CosetTransversal(subgroup=members, reps=tuple(reps), side=side)


def left_transversal(G: FiniteGroup, H) -> CosetTransversal:
    """Greedy reps t_i with G the disjoint union of the cosets t_i H."""
    return _transversal(G, H, "left")


def right_transversal(G: FiniteGroup, H) -> CosetTransversal:
    """Greedy reps g_i with G the disjoint union of the cosets H g_i."""
    return _transversal(G, H, "right")


def orbit_stabilizer(S: RightGSet, G: FiniteGroup, s: int):
    """Orbit of s, its stabilizer, and a right transversal with g_1 = identity.

    The orbit is listed in transversal order, so orbit[i] == s . reps[i].
    """
    stab = tuple(int(g) for g in np.nonzero(S.action[s] == s)[0])
    reps = []
    orbit = []
    seen = set()
    for g in range(G.order):
        t = int(S.action[s, g])
        if t not in seen:
            seen.add(t)
            reps.append(g)
            orbit.append(t)
    transversal = CosetTransversal(subgroup=stab, reps=tuple(reps), side="right")
    if len(orbit) * len(stab) != G.order:
        raise GroupTableError("orbit-stabilizer accounting failed")
    return orbit, stab, transversal


def subgroup_group(G: FiniteGroup, members) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup on the given elements as its own FiniteGroup.

    Returns (H, elems) where elems[i] is the parent index of H's element i,
    in increasing parent order.
    """
    elems = tuple(sorted(set(int(m) for m in members)))
    if not G.is_subgroup(elems):
        raise GroupTableError("not a subgroup")
    pos = {g: i for i, g in enumerate(elems)}
    k = len(elems)
    table = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = pos[int(G.mul[a, b])]
    labels = [G.label(g) for g in elems] if G.labels else None
    return FiniteGroup(table, labels=labels), elems


# -- standard groups ----------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["1"])


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, labels=[str(i) for i in range(n)])


def abelian_group(orders) -> FiniteGroup:
    """Direct product of cyclic groups; index = mixed-radix encoding."""
    orders = list(orders)
    n = 1
    for o in orders:
        n *= o
    digits = [abelian_digits(i, orders) for i in range(n)]
    index = {tuple(d): i for i, d in enumerate(digits)}
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(digits):
        for j, b in enumerate(digits):
            table[i, j] = index[tuple((x + y) % o for x, y, o in zip(a, b, orders))]
    labels = ["(" + ",".join(str(v) for v in d) + ")" for d in digits]
    return FiniteGroup(table, labels=labels)


def abelian_digits(i: int, orders) -> list[int]:
    """Mixed-radix digits of element i of abelian_group(orders), last digit fastest."""
    out = []
    for o in reversed(list(orders)):
        out.append(i % o)
        i //= o
    return out[::-1]


def klein_four_group() -> FiniteGroup:
    return abelian_group([2, 2])


def symmetric_group(n: int) -> FiniteGroup:
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    if not gens:
        return trivial_group()
    return FiniteGroup.from_permutations(gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n, as permutations of vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((n - i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, flip])


def quaternion_group() -> FiniteGroup:
    """Q8 = {1,-1,i,-i,j,-j,k,-k} in that index order."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}

    def mul(a, b):
        sa = -1 if a.startswith("-") else 1
        sb = -1 if b.startswith("-") else 1
        ua, ub = a.lstrip("-"), b.lstrip("-")
        rules = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
        }
        s, u = rules[(ua, ub)]
        s *= sa * sb
        return ("" if s == 1 else "-") + u

    idx = {nm: i for i, nm in enumerate(names)}
    table = [[idx[mul(a, b)] for b in names] for a in names]
    return FiniteGroup(table, labels=names)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    n, m = A.order, B.order
    table = np.empty((n * m, n * m), dtype=np.int64)
    for a1 in range(n):
        for b1 in range(m):
            i = a1 * m + b1
            table[i] = (A.mul[a1][:, None] * m + B.mul[b1][None, :]).reshape(-1)
    labels = None
    if A.labels and B.labels:
        labels = [f"({A.labels[a]},{B.labels[b]})" for a in range(n) for b in range(m)]
    return FiniteGroup(table, labels=labels)


# -- standard G-sets -----------------------------------------------------------


def trivial_gset(G: FiniteGroup, size: int = 1) -> RightGSet:
    return RightGSet(np.tile(np.arange(size)[:, None], (1, G.order)), G)


def regular_gset(G: FiniteGroup) -> RightGSet:
    """G acting on itself by right multiplication."""
    return RightGSet(G.mul, G)


def gset_from_rows(rows, G: FiniteGroup) -> RightGSet:
    return RightGSet(rows, G)
