"""Finite left G-sets: orbits, stabilizers, coset actions, equivariant isos.

The acting group is always a finite quotient of the relevant Galois group;
points are indices 0..size-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, NotSubgroup, is_subgroup


class InvalidAction(ValueError):
    pass


class GSet:
    """Left action: action[g][x] is the image of point x under g."""

    def __init__(self, group: FiniteGroup, action, validate: bool = True):
        self.group = group
        a = np.asarray(action, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != group.order:
            raise InvalidAction("need one permutation per group element")
        self.size = int(a.shape[1])
        self.action = a
        self.action.setflags(write=False)
        if validate:
            self._validate()

    def _validate(self):
        n, m = self.group.order, self.size
        a = self.action
        if m and (a.min() < 0 or a.max() >= m):
            raise InvalidAction("point indices out of range")
        if not (a[0] == np.arange(m)).all():
            raise InvalidAction("identity must act trivially")
        t = self.group.table
        for g in range(n):
            # action[g*h] == action[g] o action[h]
            composed = a[g][a]
            if not (a[t[g]] == composed).all():
                raise InvalidAction("not an action at element %d" % g)

    def apply(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def points(self) -> range:
        return range(self.size)

    def __eq__(self, other):
        return (
            isinstance(other, GSet)
            and self.group == other.group
            and self.size == other.size
            and (self.action == other.action).all()
        )

    def __repr__(self):
        return f"GSet(group order {self.group.order}, {self.size} points)"


@dataclass(frozen=True)
class EtaleDecomposition:
    """Orbit partition with the stabilizer of each orbit's minimal point."""

    gset: GSet = field(compare=False)
    orbits: tuple  # of (points tuple, stabilizer tuple)

    @property
    def orbit_sets(self) -> tuple:
        return tuple(o for o, _ in self.orbits)

    @property
    def stabilizers(self) -> tuple:
        return tuple(s for _, s in self.orbits)


def orbits(x: GSet) -> EtaleDecomposition:
    seen = [False] * x.size
    out = []
    for p in x.points():
        if seen[p]:
            continue
        orb = tuple(sorted({x.apply(g, p) for g in x.group.elements()}))
        for q in orb:
            seen[q] = True
        stab = tuple(g for g in x.group.elements() if x.apply(g, p) == p)
        assert is_subgroup(x.group, stab)
        assert len(orb) * len(stab) == x.group.order
        out.append((orb, stab))
    out.sort(key=lambda t: t[0][0])
    return EtaleDecomposition(x, tuple(out))


def trivial_gset(g: FiniteGroup, size: int) -> GSet:
    return GSet(g, np.tile(np.arange(size), (g.order, 1)), validate=False)


def regular_gset(g: FiniteGroup) -> GSet:
    return GSet(g, g.table.copy())


def coset_gset(g: FiniteGroup, h) -> GSet:
    """Left action on left cosets xH, cosets ordered by minimal element."""
    hset = tuple(sorted(set(h)))
    if not is_subgroup(g, hset):
        raise NotSubgroup("not a subgroup")
    coset_of = [-1] * g.order
    cosets = []
    for x in g.elements():
        if coset_of[x] >= 0:
            continue
        cs = tuple(sorted(g.mul(x, a) for a in hset))
        ci = len(cosets)
        cosets.append(cs)
        for y in cs:
            coset_of[y] = ci
    m = len(cosets)
    action = np.empty((g.order, m), dtype=np.int64)
    for t in g.elements():
        for i, cs in enumerate(cosets):
            action[t, i] = coset_of[g.mul(t, cs[0])]
    return GSet(g, action)


def conjugation_twist(g: FiniteGroup) -> GSet:
    """g acting on its own elements by conjugation.

    This is the translation action twisted by the tautological cocycle; its
    orbits are the conjugacy classes.
    """
    action = np.empty((g.order, g.order), dtype=np.int64)
    for t in g.elements():
        for x in g.elements():
            action[t, x] = g.conj(t, x)
    return GSet(g, action)


def sub_gset(x: GSet, points) -> GSet:
    """Restriction of the action to an invariant subset of points."""
    pts = tuple(sorted(set(points)))
    pos = {p: i for i, p in enumerate(pts)}
    action = np.empty((x.group.order, len(pts)), dtype=np.int64)
    for g in x.group.elements():
        for i, p in enumerate(pts):
            q = x.apply(g, p)
            if q not in pos:
                raise InvalidAction("subset is not invariant")
            action[g, i] = pos[q]
    return GSet(x.group, action, validate=False)


def disjoint_union(x: GSet, y: GSet) -> GSet:
    if x.group != y.group:
        raise InvalidAction("actions of different groups")
    action = np.concatenate([x.action, y.action + x.size], axis=1)
    return GSet(x.group, action, validate=False)


def _subgroups_conjugate(g: FiniteGroup, a, b):
    """Return t with t a t^-1 = b, or None; exhaustive."""
    aset, bset = set(a), set(b)
    if len(aset) != len(bset):
        return None
    for t in g.elements():
        if {g.conj(t, x) for x in aset} == bset:
            return t
    return None


def _transversal(x: GSet, base: int, orbit) -> dict:
    """For each point of the orbit, one group element mapping base to it."""
    reach = {base: 0}
    frontier = [base]
    while frontier:
        new = []
        for p in frontier:
            for g in x.group.elements():
                q = x.apply(g, p)
                if q not in reach:
                    reach[q] = x.group.mul(g, reach[p])
                    new.append(q)
        frontier = new
    assert set(reach) == set(orbit)
    return reach


def gset_iso(x: GSet, y: GSet):
    """An equivariant bijection x -> y as a tuple, or None.

    Orbit-by-orbit: transitive pieces are isomorphic iff their point
    stabilizers are conjugate; matching is greedy over orbits.
    """
    if x.group != y.group:
        raise InvalidAction("actions of different groups")
    if x.size != y.size:
        return None
    g = x.group
    dx, dy = orbits(x), orbits(y)
    if sorted(len(o) for o in dx.orbit_sets) != sorted(len(o) for o in dy.orbit_sets):
        return None
    used = [False] * len(dy.orbits)
    mapping = [-1] * x.size
    for ox, sx in dx.orbits:
        matched = False
        for j, (oy, sy) in enumerate(dy.orbits):
            if used[j] or len(oy) != len(ox):
                continue
            t = _subgroups_conjugate(g, sy, sx)
            if t is None:
                continue
            # stab_x(base_x) = t stab_y(base_y) t^-1 = stab_y(t . base_y)
            target = y.apply(t, oy[0])
            trans = _transversal(x, ox[0], ox)
            for p in ox:
                mapping[p] = y.apply(trans[p], target)
            used[j] = True
            matched = True
            break
        if not matched:
            return None
    mapping = tuple(mapping)
    assert sorted(mapping) == list(range(y.size))
    for g_ in g.elements():
        for p in x.points():
            assert mapping[x.apply(g_, p)] == y.apply(g_, mapping[p])
    return mapping


@dataclass(frozen=True)
class DescentFactor:
    orbit: tuple
    representative: int
    stabilizer: tuple
    degree: int  # index of the stabilizer = size of the orbit


def descent_orbit_decomposition(x: GSet) -> tuple:
    """Orbit/stabilizer bookkeeping of a descent datum on a product.

    Each orbit of the index set contributes one restriction-of-scalars
    factor whose field degree is the orbit size.
    """
    dec = orbits(x)
    out = []
    for orb, stab in dec.orbits:
        out.append(
            DescentFactor(
                orbit=orb,
                representative=orb[0],
                stabilizer=stab,
                degree=x.group.order // len(stab),
            )
        )
    return tuple(out)
