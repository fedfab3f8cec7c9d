"""Finite groups by multiplication table, homomorphisms, structural maps.

Elements are indices 0..order-1 with the identity at 0.  Every constructor
validates the full group axioms; orders in play stay small enough that the
cubic associativity check is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np


class InvalidGroup(ValueError):
    pass


class InvalidHom(ValueError):
    pass


class InvalidTheta(ValueError):
    pass


class NotNormal(ValueError):
    pass


class NotSubgroup(ValueError):
    pass


class NotSurjective(ValueError):
    pass


class FiniteGroup:
    """Group given by an order x order table of element indices."""

    def __init__(self, table, labels=None, validate: bool = True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise InvalidGroup("table must be square")
        self.order = int(t.shape[0])
        self.table = t
        self.table.setflags(write=False)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.order:
            raise InvalidGroup("labels length mismatch")
        if validate:
            self._validate()
        self._inverses = self._compute_inverses()

    def _validate(self):
        n = self.order
        t = self.table
        if n == 0:
            raise InvalidGroup("empty group")
        if t.min() < 0 or t.max() >= n:
            raise InvalidGroup("table entries out of range")
        if not (t[0] == np.arange(n)).all() or not (t[:, 0] == np.arange(n)).all():
            raise InvalidGroup("element 0 is not a two-sided identity")
        for a in range(n):
            # (a*b)*c == a*(b*c) for all b, c
            lhs = t[t[a]]
            rhs = t[a][t]
            if not (lhs == rhs).all():
                raise InvalidGroup("multiplication is not associative")
        for a in range(n):
            if not (sorted(t[a]) == list(range(n))):
                raise InvalidGroup("row %d is not a bijection" % a)

    def _compute_inverses(self):
        inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            hits = np.where(self.table[a] == 0)[0]
            if len(hits) != 1:
                raise InvalidGroup("element %d has no unique inverse" % a)
            inv[a] = hits[0]
        inv.setflags(write=False)
        return inv

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverses[a])

    def conj(self, g: int, x: int) -> int:
        return self.mul(self.mul(g, x), self.inv(g))

    def elements(self) -> range:
        return range(self.order)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        r = 0
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def exponent(self) -> int:
        e = 1
        for a in self.elements():
            e = _lcm(e, self.element_order(a))
        return e

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.order == other.order
            and (self.table == other.table).all()
        )

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))


def _lcm(a, b):
    import math

    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.order:
            raise InvalidHom("map length mismatch")
        if self.validate:
            if self.map[0] != 0:
                raise InvalidHom("identity not preserved")
            s, t, f = self.source, self.target, self.map
            for a in s.elements():
                fa = f[a]
                for b in s.elements():
                    if f[s.mul(a, b)] != t.mul(fa, f[b]):
                        raise InvalidHom("not multiplicative at (%d,%d)" % (a, b))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self o other."""
        if other.target is not self.source and other.target != self.source:
            raise InvalidHom("composition mismatch")
        return GroupHom(
            other.source, self.target, tuple(self.map[x] for x in other.map),
            validate=False,
        )

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def kernel(self) -> tuple:
        return tuple(a for a in self.source.elements() if self.map[a] == 0)

    def image(self) -> tuple:
        return tuple(sorted(set(self.map)))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements()), validate=False)


# ---------------------------------------------------------------------------
# construction


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidGroup("order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteGroup(table, labels=labels)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Index of (a, b) is a + g.order * b, so (0, 0) = 0."""
    n, m = g.order, h.order
    table = np.empty((n * m, n * m), dtype=np.int64)
    for a, b in product(range(n), range(m)):
        for c, d in product(range(n), range(m)):
            table[a + n * b, c + n * d] = g.mul(a, c) + n * h.mul(b, d)
    return FiniteGroup(table)


def product_embeddings(g: FiniteGroup, h: FiniteGroup, p: FiniteGroup):
    """Embeddings and projections for p = direct_product(g, h)."""
    n, m = g.order, h.order
    e1 = GroupHom(g, p, tuple(a for a in range(n)), validate=False)
    e2 = GroupHom(h, p, tuple(n * b for b in range(m)), validate=False)
    p1 = GroupHom(p, g, tuple(x % n for x in range(n * m)), validate=False)
    p2 = GroupHom(p, h, tuple(x // n for x in range(n * m)), validate=False)
    return e1, e2, p1, p2


def group_from_permutations(perms) -> FiniteGroup:
    """Closure of a set of permutations (tuples) under composition."""
    deg = len(perms[0])
    ident = tuple(range(deg))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    gens = [tuple(p) for p in perms]
    while frontier:
        new = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[i]] for i in range(deg))
                if r not in seen:
                    seen.add(r)
                    elems.append(r)
                    new.append(r)
        frontier = new
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(p[q[k]] for k in range(deg))]
    return FiniteGroup(table)


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return trivial_group()
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return group_from_permutations([swap, cycle])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    if n == 1:
        return cyclic_group(2)
    if n == 2:
        return direct_product(cyclic_group(2), cyclic_group(2))
    rot = tuple(list(range(1, n)) + [0])
    ref = tuple((n - i) % n for i in range(n))
    return group_from_permutations([rot, ref])


def quaternion_group(n: int = 8) -> FiniteGroup:
    """Generalized quaternion group of order n (n = 4m, m >= 2)."""
    if n % 4 != 0 or n < 8:
        raise InvalidGroup("quaternion group order must be 4m, m >= 2")
    m = n // 2
    # elements a^i b^j, 0<=i<m, j in {0,1}; b a b^-1 = a^-1, b^2 = a^(m/2)
    def idx(i, j):
        return i + m * j

    table = np.empty((n, n), dtype=np.int64)
    half = m // 2
    for i, j in product(range(m), range(2)):
        for k, l in product(range(m), range(2)):
            # (a^i b^j)(a^k b^l) with b a^k = a^-k b and b^2 = a^half
            if j == 0:
                ii, jj = (i + k) % m, l
            elif l == 0:
                ii, jj = (i - k) % m, 1
            else:
                ii, jj = (i - k + half) % m, 0
            table[idx(i, j), idx(k, l)] = idx(ii, jj)
    return FiniteGroup(table)


def semidihedral_group_16() -> FiniteGroup:
    """Order 16: r^8 = s^2 = 1, s r s = r^3."""
    n = 16

    def idx(i, j):
        return i + 8 * j

    table = np.empty((n, n), dtype=np.int64)
    for i, j in product(range(8), range(2)):
        for k, l in product(range(8), range(2)):
            if j == 0:
                ii, jj = (i + k) % 8, l
            else:
                ii, jj = (i + 3 * k) % 8, 1 - l
            table[idx(i, j), idx(k, l)] = idx(ii, jj)
    return FiniteGroup(table)


def alternating_group_4() -> FiniteGroup:
    return group_from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)])


def special_linear_2_3() -> FiniteGroup:
    """SL(2, F_3), order 24."""
    mats = []
    for a, b, c, d in product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append((a, b, c, d))
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    mats.insert(0, ident)
    index = {mm: i for i, mm in enumerate(mats)}
    n = len(mats)
    table = np.empty((n, n), dtype=np.int64)
    for i, (a, b, c, d) in enumerate(mats):
        for j, (e, f_, g_, h) in enumerate(mats):
            mm = (
                (a * e + b * g_) % 3,
                (a * f_ + b * h) % 3,
                (c * e + d * g_) % 3,
                (c * f_ + d * h) % 3,
            )
            table[i, j] = index[mm]
    return FiniteGroup(table)


def dicyclic_group(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m (m >= 2); m = 2 gives the quaternions."""
    return quaternion_group(4 * m)


# ---------------------------------------------------------------------------
# semidirect products


@dataclass(frozen=True)
class SemidirectDatum:
    n: FiniteGroup
    q: FiniteGroup
    theta: tuple  # per q-element permutation of n's elements

    def __post_init__(self):
        th = tuple(tuple(int(x) for x in row) for row in self.theta)
        object.__setattr__(self, "theta", th)
        if len(th) != self.q.order:
            raise InvalidTheta("one automorphism per q element required")
        for y, perm in enumerate(th):
            if sorted(perm) != list(range(self.n.order)):
                raise InvalidTheta("theta(%d) is not a bijection" % y)
            for a in self.n.elements():
                for b in self.n.elements():
                    if perm[self.n.mul(a, b)] != self.n.mul(perm[a], perm[b]):
                        raise InvalidTheta("theta(%d) is not multiplicative" % y)
        if th[0] != tuple(range(self.n.order)):
            raise InvalidTheta("theta(identity) must be the identity")
        for y1 in self.q.elements():
            for y2 in self.q.elements():
                composed = tuple(th[y1][th[y2][a]] for a in self.n.elements())
                if composed != th[self.q.mul(y1, y2)]:
                    raise InvalidTheta("theta is not a homomorphism")


@dataclass(frozen=True)
class SemidirectProduct:
    group: FiniteGroup
    embed_n: GroupHom
    embed_q: GroupHom
    project_q: GroupHom


def semidirect_product(d: SemidirectDatum) -> SemidirectProduct:
    """(n1, q1)(n2, q2) = (n1 * theta(q1)(n2), q1 q2); index = n + |N| * q."""
    N, Q, th = d.n, d.q, d.theta
    nn, nq = N.order, Q.order
    size = nn * nq

    def idx(a, y):
        return a + nn * y

    table = np.empty((size, size), dtype=np.int64)
    for a, y in product(range(nn), range(nq)):
        for b, z in product(range(nn), range(nq)):
            table[idx(a, y), idx(b, z)] = idx(N.mul(a, th[y][b]), Q.mul(y, z))
    g = FiniteGroup(table)
    embed_n = GroupHom(N, g, tuple(idx(a, 0) for a in range(nn)), validate=False)
    embed_q = GroupHom(Q, g, tuple(idx(0, y) for y in range(nq)), validate=False)
    project_q = GroupHom(g, Q, tuple(x // nn for x in range(size)), validate=False)
    return SemidirectProduct(g, embed_n, embed_q, project_q)


def heisenberg_group(l: int) -> tuple[SemidirectProduct, dict]:
    """Extraspecial group of order l^3 and exponent l (l an odd prime).

    Returned as the semidirect product (C_l x C_l) x| C_l with
    theta(c^i): a -> a b^i, b -> b.  The dict carries the generator indices.
    """
    if l < 3 or l % 2 == 0:
        raise InvalidGroup("l must be an odd prime")
    N = direct_product(cyclic_group(l), cyclic_group(l))  # (x, y) = a^x b^y
    Q = cyclic_group(l)
    theta = []
    for i in range(l):
        perm = [0] * (l * l)
        for x, y in product(range(l), range(l)):
            perm[x + l * y] = x + l * ((y + i * x) % l)
        theta.append(tuple(perm))
    sp = semidirect_product(SemidirectDatum(N, Q, tuple(theta)))
    a = sp.embed_n(1)  # (1, 0)
    b = sp.embed_n(l)  # (0, 1)
    c = sp.embed_q(1)
    return sp, {"a": a, "b": b, "c": c}


# ---------------------------------------------------------------------------
# structure


def conjugacy_classes(g: FiniteGroup) -> tuple:
    """Classes as sorted tuples, ordered by minimal element."""
    seen = [False] * g.order
    classes = []
    for x in g.elements():
        if seen[x]:
            continue
        cls = {g.conj(t, x) for t in g.elements()}
        for y in cls:
            seen[y] = True
        classes.append(tuple(sorted(cls)))
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def centralizer(g: FiniteGroup, x: int) -> tuple:
    cz = tuple(y for y in g.elements() if g.mul(y, x) == g.mul(x, y))
    assert is_subgroup(g, cz)
    return cz


def center(g: FiniteGroup) -> tuple:
    t = g.table
    return tuple(int(y) for y in range(g.order) if (t[y] == t[:, y]).all())


def is_subgroup(g: FiniteGroup, elems) -> bool:
    s = set(elems)
    if 0 not in s:
        return False
    return all(g.mul(a, b) in s for a in s for b in s)


def is_normal(g: FiniteGroup, elems) -> bool:
    s = set(elems)
    return is_subgroup(g, elems) and all(
        g.conj(t, a) in s for t in g.elements() for a in s
    )


def generated_subgroup(g: FiniteGroup, gens) -> tuple:
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(elems))


def generating_set(g: FiniteGroup) -> tuple:
    """Greedy small generating set, deterministic."""
    gens = []
    current = {0}
    for x in g.elements():
        if x not in current:
            gens.append(x)
            current = set(generated_subgroup(g, gens))
            if len(current) == g.order:
                break
    # drop redundant generators (keeps the set small for cohomology work)
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            trial = gens[:i] + gens[i + 1 :]
            if trial and len(generated_subgroup(g, trial)) == g.order:
                gens = trial
                changed = True
                break
    if not gens:
        gens = [0]
    return tuple(gens)


def all_subgroups(g: FiniteGroup) -> tuple:
    """Every subgroup, found by closing each subgroup with one more element."""
    trivial = (0,)
    found = {trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for h in frontier:
            hset = set(h)
            for x in g.elements():
                if x in hset:
                    continue
                k = generated_subgroup(g, list(h) + [x])
                if k not in found:
                    found.add(k)
                    new.append(k)
        frontier = new
    return tuple(sorted(found, key=lambda h: (len(h), h)))


def quotient(g: FiniteGroup, n) -> tuple[FiniteGroup, GroupHom]:
    """Coset group and projection; cosets ordered by minimal element."""
    nset = tuple(sorted(set(n)))
    if not is_normal(g, nset):
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * g.order
    cosets = []
    for x in g.elements():
        if coset_of[x] >= 0:
            continue
        cs = tuple(sorted(g.mul(x, a) for a in nset))
        ci = len(cosets)
        cosets.append(cs)
        for y in cs:
            coset_of[y] = ci
    # identity coset contains 0 and is found first, so identity index is 0
    m = len(cosets)
    table = np.empty((m, m), dtype=np.int64)
    for i, ci in enumerate(cosets):
        for j, cj in enumerate(cosets):
            table[i, j] = coset_of[g.mul(ci[0], cj[0])]
    q = FiniteGroup(table)
    proj = GroupHom(g, q, tuple(coset_of), validate=False)
    return q, proj


def class_fiber(q: GroupHom, cls) -> tuple:
    """Conjugacy classes of the source inside the preimage of a target class."""
    if not q.is_surjective():
        raise NotSurjective("class fiber needs a surjective homomorphism")
    cset = set(cls)
    tgt_classes = conjugacy_classes(q.target)
    if tuple(sorted(cset)) not in tgt_classes:
        raise ValueError("input is not a conjugacy class of the target")
    fiber = {x for x in q.source.elements() if q(x) in cset}
    out = [c for c in conjugacy_classes(q.source) if set(c) <= fiber]
    assert set().union(*out) == fiber if out else not fiber
    return tuple(out)
