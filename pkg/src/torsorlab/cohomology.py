"""H^0/H^1 of a finite group, twisting, and the lim^1 obstruction recipe.

Coefficients come in three flavours: free integer lattices (ZGLattice),
finite abelian modules, and arbitrary finite groups with action.  Abelian
H^1 is solved exactly over the integers: a cocycle is determined by its
values on a generating set, the spanning tree of the Cayley graph turns
every value into a linear expression in those unknowns, and the non-tree
edges contribute the relation constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .groups import FiniteGroup, generating_set
from .lattices import ZGLattice, permutation_lattice
from .gsets import coset_gset


class NotCocycle(ValueError):
    pass


class NotAction(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotLevelEquivalent(ValueError):
    pass


DEFAULT_BUDGET = 10**6


# ---------------------------------------------------------------------------
# coefficient objects


class GammaGroup:
    """A finite group `underlying` with `gamma` acting by automorphisms."""

    def __init__(self, gamma: FiniteGroup, underlying: FiniteGroup, action,
                 validate: bool = True):
        self.gamma = gamma
        self.underlying = underlying
        a = np.asarray(action, dtype=np.int64)
        if a.shape != (gamma.order, underlying.order):
            raise NotAction("action table shape mismatch")
        self.action = a
        self.action.setflags(write=False)
        if validate:
            self._validate()

    def _validate(self):
        g, n, a = self.gamma, self.underlying, self.action
        if not (a[0] == np.arange(n.order)).all():
            raise NotAction("identity must act trivially")
        for t in g.elements():
            row = a[t]
            if sorted(row) != list(range(n.order)):
                raise NotAction("element %d does not act bijectively" % t)
            for x in n.elements():
                for y in n.elements():
                    if row[n.mul(x, y)] != n.mul(row[x], row[y]):
                        raise NotAction("element %d not an automorphism" % t)
        for t1 in g.elements():
            for t2 in g.elements():
                composed = a[t1][a[t2]]
                if not (a[g.mul(t1, t2)] == composed).all():
                    raise NotAction("action is not a homomorphism")

    def act(self, t: int, x: int) -> int:
        return int(self.action[t, x])

    def fixed_points(self) -> tuple:
        return tuple(
            x
            for x in self.underlying.elements()
            if all(self.act(t, x) == x for t in self.gamma.elements())
        )

    def __eq__(self, other):
        return (
            isinstance(other, GammaGroup)
            and self.gamma == other.gamma
            and self.underlying == other.underlying
            and (self.action == other.action).all()
        )

    def __repr__(self):
        return (
            f"GammaGroup(|gamma|={self.gamma.order}, "
            f"|underlying|={self.underlying.order})"
        )


def trivial_gamma_group(gamma: FiniteGroup, underlying: FiniteGroup) -> GammaGroup:
    action = np.tile(np.arange(underlying.order), (gamma.order, 1))
    return GammaGroup(gamma, underlying, action, validate=False)


def gamma_group_product(factors) -> tuple[GammaGroup, tuple]:
    """Product Gamma-group plus (embedding, projection) index maps per factor."""
    factors = list(factors)
    gamma = factors[0].gamma
    if any(f.gamma != gamma for f in factors):
        raise NotAction("factors over different groups")
    from .groups import direct_product

    und = factors[0].underlying
    offsets = [und.order]
    for f in factors[1:]:
        und = direct_product(und, f.underlying)
        offsets.append(und.order)

    sizes = [f.underlying.order for f in factors]

    def split(x):
        out = []
        for s in sizes:
            out.append(x % s)
            x //= s
        return tuple(out)

    def join(parts):
        x = 0
        for s, p in zip(reversed(sizes), reversed(parts)):
            x = x * s + p
        return x

    action = np.empty((gamma.order, und.order), dtype=np.int64)
    for t in gamma.elements():
        for x in range(und.order):
            parts = split(x)
            action[t, x] = join([f.act(t, p) for f, p in zip(factors, parts)])
    prod = GammaGroup(gamma, und, action)
    maps = tuple(
        (
            i,
            tuple(split(x)[i] for x in range(und.order)),
        )
        for i in range(len(factors))
    )
    return prod, maps


class FiniteModule:
    """Finite abelian module Z^n / diag(relations) with integer action."""

    def __init__(self, gamma: FiniteGroup, relations, mats, validate: bool = True):
        self.gamma = gamma
        self.relations = tuple(int(d) for d in relations)
        if any(d <= 0 for d in self.relations):
            raise ValueError("relations must be positive (finite module)")
        self.ngens = len(self.relations)
        self.mats = tuple(la.intmat(m) for m in mats)
        if validate:
            self._validate()

    def _validate(self):
        if len(self.mats) != self.gamma.order:
            raise NotAction("one matrix per group element required")
        n = self.ngens
        for m in self.mats:
            if m.shape != (n, n):
                raise NotAction("matrix shape mismatch")
            # columns must respect the relation lattice
            for j, dj in enumerate(self.relations):
                for i, di in enumerate(self.relations):
                    if (dj * m[i, j]) % di != 0:
                        raise NotAction("action does not preserve relations")
        for s in generating_set(self.gamma):
            for h in self.gamma.elements():
                prod_ = self.mats[s] @ self.mats[h]
                tgt = self.mats[self.gamma.mul(s, h)]
                diff = prod_ - tgt
                for i, di in enumerate(self.relations):
                    if any(int(v) % di != 0 for v in diff[i, :]):
                        raise NotAction("action not multiplicative mod relations")

    def reduce(self, vec) -> tuple:
        return tuple(int(v) % d for v, d in zip(np.asarray(vec).ravel(), self.relations))

    def act(self, t: int, vec) -> tuple:
        return self.reduce(self.mats[t] @ la.intmat(vec).reshape(-1, 1))

    def elements(self):
        out = [()]
        for d in self.relations:
            out = [t + (k,) for t in out for k in range(d)]
        return out

    def order(self) -> int:
        n = 1
        for d in self.relations:
            n *= d
        return n

    def relation_matrix(self):
        m = la.zeros(self.ngens, self.ngens)
        for i, d in enumerate(self.relations):
            m[i, i] = d
        return m


# ---------------------------------------------------------------------------
# coefficient protocol shims


class _Ops:
    """Uniform neutral/op/inv/act/canon over the three coefficient kinds."""

    def __init__(self, coeff):
        self.coeff = coeff
        if isinstance(coeff, GammaGroup):
            n = coeff.underlying
            self.gamma = coeff.gamma
            self.neutral = 0
            self.op = n.mul
            self.inv = n.inv
            self.act = coeff.act
            self.canon = lambda x: int(x)
        elif isinstance(coeff, ZGLattice):
            self.gamma = coeff.group
            self.neutral = (0,) * coeff.rank
            self.op = lambda a, b: tuple(x + y for x, y in zip(a, b))
            self.inv = lambda a: tuple(-x for x in a)
            self.act = lambda t, a: tuple(
                int(v) for v in (coeff.rho[t] @ la.intmat(a).reshape(-1, 1)).ravel()
            )
            self.canon = lambda a: tuple(int(x) for x in a)
        elif isinstance(coeff, FiniteModule):
            self.gamma = coeff.gamma
            self.neutral = (0,) * coeff.ngens
            self.op = lambda a, b: coeff.reduce([x + y for x, y in zip(a, b)])
            self.inv = lambda a: coeff.reduce([-x for x in a])
            self.act = lambda t, a: coeff.act(t, a)
            self.canon = lambda a: coeff.reduce(a)
        else:
            raise TypeError("unsupported coefficient type")


@dataclass(frozen=True)
class CrossedHom:
    """1-cocycle: values per group element with f(st) = f(s) * (s . f(t))."""

    group: FiniteGroup
    coefficient: object
    values: tuple
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        ops = _Ops(self.coefficient)
        vals = tuple(ops.canon(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.group.order:
            raise NotCocycle("one value per group element required")
        if self.validate:
            if vals[0] != ops.neutral:
                raise NotCocycle("value at the identity must be neutral")
            g = self.group
            for s in g.elements():
                for t in g.elements():
                    want = ops.op(vals[s], ops.act(s, vals[t]))
                    if ops.canon(want) != vals[g.mul(s, t)]:
                        raise NotCocycle("cocycle law fails at (%d,%d)" % (s, t))

    def __call__(self, t: int):
        return self.values[t]

    @classmethod
    def from_generators(cls, group, coefficient, gen_values: dict) -> "CrossedHom":
        """Close generator values over a spanning tree; reject inconsistency."""
        ops = _Ops(coefficient)
        vals = {0: ops.neutral}
        gens = list(gen_values)
        frontier = [0]
        while frontier:
            new = []
            for g in frontier:
                for s in gens:
                    t = group.mul(g, s)
                    v = ops.canon(ops.op(vals[g], ops.act(g, ops.canon(gen_values[s]))))
                    if t not in vals:
                        vals[t] = v
                        new.append(t)
                    elif vals[t] != v:
                        raise NotCocycle("generator values are inconsistent")
            frontier = new
        if len(vals) != group.order:
            raise NotCocycle("generators do not generate the group")
        return cls(group, coefficient, tuple(vals[t] for t in group.elements()))


def trivial_cocycle(group: FiniteGroup, coefficient) -> CrossedHom:
    ops = _Ops(coefficient)
    return CrossedHom(
        group, coefficient, tuple(ops.neutral for _ in group.elements()), validate=False
    )


def coboundary(coefficient, a) -> CrossedHom:
    """The cocycle t -> a^-1 * (t . a)."""
    ops = _Ops(coefficient)
    a = ops.canon(a)
    vals = tuple(ops.op(ops.inv(a), ops.act(t, a)) for t in ops.gamma.elements())
    return CrossedHom(ops.gamma, coefficient, vals, validate=False)


def twist_cocycle(f: CrossedHom, a) -> CrossedHom:
    """f'(t) = a^-1 * f(t) * (t . a)."""
    ops = _Ops(f.coefficient)
    a = ops.canon(a)
    ai = ops.inv(a)
    vals = tuple(
        ops.op(ops.op(ai, f(t)), ops.act(t, a)) for t in f.group.elements()
    )
    return CrossedHom(f.group, f.coefficient, vals, validate=False)


# ---------------------------------------------------------------------------
# H^0


@dataclass(frozen=True)
class FixedSubmodule:
    basis: np.ndarray  # columns span the fixed sublattice / lattice lift
    rank: int
    invariants: tuple = ()  # finite part, for finite modules


def h0(gamma: FiniteGroup, coeff):
    """Fixed points: sublattice, finite-subgroup data, or element tuple."""
    if isinstance(coeff, GammaGroup):
        return coeff.fixed_points()
    gens = generating_set(gamma)
    if isinstance(coeff, ZGLattice):
        if coeff.rank == 0:
            return FixedSubmodule(la.zeros(0, 0), 0)
        stack = np.concatenate(
            [coeff.rho[s] - la.identity(coeff.rank) for s in gens], axis=0
        )
        K = la.kernel_basis(stack)
        return FixedSubmodule(K, K.shape[1])
    if isinstance(coeff, FiniteModule):
        n = coeff.ngens
        rel = coeff.relation_matrix()
        blocks = []
        for s in gens:
            blocks.append(coeff.mats[s] - la.identity(n))
        C = np.concatenate(blocks, axis=0)
        slack = la.zeros(C.shape[0], len(gens) * n)
        for i in range(len(gens)):
            slack[i * n : (i + 1) * n, i * n : (i + 1) * n] = rel
        K = la.kernel_basis(np.concatenate([C, slack], axis=1))
        lift = K[:n, :] if K.size else la.zeros(n, 0)
        L = la.column_space_basis(np.concatenate([lift, rel], axis=1))
        X = la.solve_int(L, rel)
        inv = la.cokernel_invariants(X, ambient_rank=L.shape[1])
        return FixedSubmodule(L, L.shape[1], invariants=inv)
    raise TypeError("unsupported coefficient type")


# ---------------------------------------------------------------------------
# abelian H^1


@dataclass(frozen=True)
class CohomologyGroup:
    invariants: tuple  # elementary divisors, 1s dropped, 0 marks a free factor
    generators: tuple  # CrossedHom representatives, one per invariant

    def order(self):
        if any(d == 0 for d in self.invariants):
            return None
        n = 1
        for d in self.invariants:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.invariants


def _tree_expressions(gamma: FiniteGroup, mats, r: int, gens):
    """Linear expression of each cocycle value in the generator unknowns.

    Returns (exprs, constraints): exprs[g] is r x (len(gens) * r); the
    constraints stack enforces the non-tree Cayley edges.
    """
    k = len(gens)
    width = k * r
    blocks = {}
    for i, s in enumerate(gens):
        b = la.zeros(r, width)
        b[:, i * r : (i + 1) * r] = la.identity(r)
        blocks[s] = b
    exprs = {0: la.zeros(r, width)}
    constraints = []
    frontier = [0]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                t = gamma.mul(g, s)
                e = exprs[g] + mats[g] @ blocks[s]
                if t not in exprs:
                    exprs[t] = e
                    new.append(t)
                else:
                    constraints.append(e - exprs[t])
        frontier = new
    assert len(exprs) == gamma.order
    if constraints:
        C = np.concatenate(constraints, axis=0)
    else:
        C = la.zeros(0, width)
    return exprs, C


def _closure_values(gamma, ops, gens, gen_vals):
    return CrossedHom.from_generators(
        gamma, ops.coeff, {s: v for s, v in zip(gens, gen_vals)}
    )


def h1_abelian(gamma: FiniteGroup, coeff) -> CohomologyGroup:
    """Z^1/B^1 over the integers, exact; finite for lattice coefficients."""
    if isinstance(coeff, ZGLattice):
        r = coeff.rank
        mats = coeff.rho
        relations = None
    elif isinstance(coeff, FiniteModule):
        r = coeff.ngens
        mats = coeff.mats
        relations = coeff.relations
    else:
        raise TypeError("abelian H^1 needs a lattice or finite module")
    if r == 0:
        return CohomologyGroup((), ())
    gens = generating_set(gamma)
    k = len(gens)
    width = k * r
    exprs, C = _tree_expressions(gamma, mats, r, gens)

    if relations is None:
        Z = la.kernel_basis(C) if C.shape[0] else la.identity(width)
    else:
        rel = la.intmat(np.diag(np.array(relations, dtype=object)))
        nrows = C.shape[0]
        nblocks = nrows // r
        slack = la.zeros(nrows, nblocks * r)
        for i in range(nblocks):
            slack[i * r : (i + 1) * r, i * r : (i + 1) * r] = rel
        K = (
            la.kernel_basis(np.concatenate([C, slack], axis=1))
            if nrows
            else la.identity(width)
        )
        proj = K[:width, :] if K.size else la.zeros(width, 0)
        lam = la.zeros(width, width)
        for i in range(k):
            lam[i * r : (i + 1) * r, i * r : (i + 1) * r] = rel
        Z = la.column_space_basis(np.concatenate([proj, lam], axis=1))

    # coboundaries: values (rho(s) - 1) m on the generators
    D = np.concatenate([mats[s] - la.identity(r) for s in gens], axis=0)
    if relations is not None:
        lam = la.zeros(width, width)
        rel = la.intmat(np.diag(np.array(relations, dtype=object)))
        for i in range(k):
            lam[i * r : (i + 1) * r, i * r : (i + 1) * r] = rel
        D = np.concatenate([D, lam], axis=1)
    if Z.shape[1] == 0:
        return CohomologyGroup((), ())
    Y = la.solve_int(Z, D)
    assert Y is not None, "coboundaries must lie in the cocycle lattice"
    s = la.smith_normal_form(Y)
    z = Z.shape[1]
    invs = []
    gens_out = []
    ops = _Ops(coeff)
    for i in range(z):
        d = s.diagonal[i] if i < len(s.diagonal) else 0
        if d == 1:
            continue
        invs.append(int(d))
        gen_coords = Z @ s.left_inv[:, i].reshape(-1, 1)
        gen_vals = [
            tuple(int(v) for v in gen_coords[j * r : (j + 1) * r, 0]) for j in range(k)
        ]
        gens_out.append(_closure_values(gamma, ops, gens, gen_vals))
    order = [(d if d else 0) for d in invs]
    # deterministic: nonzero divisors ascending, then free factors
    paired = sorted(zip(order, gens_out), key=lambda t: (t[0] == 0, t[0]))
    return CohomologyGroup(
        tuple(d for d, _ in paired), tuple(g for _, g in paired)
    )


def shapiro_check(g: FiniteGroup, h) -> bool:
    """H^1(G, Z[G/H]) must vanish: the lattice shadow of Hilbert 90."""
    m = permutation_lattice(coset_gset(g, h))
    return h1_abelian(g, m).is_trivial


# ---------------------------------------------------------------------------
# nonabelian H^1


@dataclass(frozen=True)
class NonabelianH1:
    classes: tuple  # CrossedHom representatives, lex-least value tables
    sizes: tuple  # orbit sizes under twisted conjugation

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def cocycle_count(self) -> int:
        return sum(self.sizes)


def enumerate_cocycles(gamma: FiniteGroup, n: GammaGroup,
                       budget: int = DEFAULT_BUDGET) -> tuple:
    """All crossed homomorphisms gamma -> n, as value tuples."""
    gens = generating_set(gamma)
    total = n.underlying.order ** len(gens)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate maps exceed budget {budget}")
    und = n.underlying
    out = []
    for assignment in product(und.elements(), repeat=len(gens)):
        try:
            f = CrossedHom.from_generators(
                gamma, n, {s: v for s, v in zip(gens, assignment)}
            )
        except NotCocycle:
            continue
        out.append(f.values)
    return tuple(sorted(out))


def h1_nonabelian(gamma: FiniteGroup, n: GammaGroup,
                  budget: int = DEFAULT_BUDGET) -> NonabelianH1:
    cocycles = enumerate_cocycles(gamma, n, budget)
    und = n.underlying
    seen = set()
    classes = []
    sizes = []
    for vals in cocycles:
        if vals in seen:
            continue
        orbit = set()
        for a in und.elements():
            ai = und.inv(a)
            tw = tuple(
                und.mul(und.mul(ai, vals[t]), n.act(t, a))
                for t in gamma.elements()
            )
            orbit.add(tw)
        assert orbit <= set(cocycles)
        seen |= orbit
        rep = min(orbit)
        classes.append(CrossedHom(gamma, n, rep, validate=False))
        sizes.append(len(orbit))
    order = sorted(range(len(classes)), key=lambda i: classes[i].values)
    return NonabelianH1(
        tuple(classes[i] for i in order), tuple(sizes[i] for i in order)
    )


# ---------------------------------------------------------------------------
# twisting


@dataclass(frozen=True)
class AutValuedCocycle:
    """Cocycle valued in Aut(N): autos[t] is a permutation of N's elements."""

    base: GammaGroup
    autos: tuple

    def __post_init__(self):
        autos = tuple(tuple(int(x) for x in a) for a in self.autos)
        object.__setattr__(self, "autos", autos)
        g, n = self.base.gamma, self.base.underlying
        if len(autos) != g.order:
            raise NotCocycle("one automorphism per group element required")
        for a in autos:
            if sorted(a) != list(range(n.order)):
                raise NotCocycle("value is not a bijection")
            for x in n.elements():
                for y in n.elements():
                    if a[n.mul(x, y)] != n.mul(a[x], a[y]):
                        raise NotCocycle("value is not an automorphism")
        if autos[0] != tuple(range(n.order)):
            raise NotCocycle("value at identity must be the identity")
        # cocycle law in Aut(N): f(st) = f(s) o (s . f(t)),
        # with (s . alpha)(x) = s . alpha(s^-1 . x)
        for s in g.elements():
            for t in g.elements():
                lhs = autos[g.mul(s, t)]
                rhs = tuple(
                    autos[s][self.base.act(s, autos[t][self.base.act(g.inv(s), x)])]
                    for x in n.elements()
                )
                if lhs != rhs:
                    raise NotCocycle("automorphism cocycle law fails")


def twist_group(n: GammaGroup, f) -> GammaGroup:
    """Twist the action: inner by a cocycle into n, or by Aut-valued f."""
    g, und = n.gamma, n.underlying
    if isinstance(f, CrossedHom):
        if f.coefficient is not n and f.coefficient != n:
            raise NotCocycle("cocycle must take values in the twisted group")
        action = np.empty((g.order, und.order), dtype=np.int64)
        for t in g.elements():
            ft = f(t)
            fti = und.inv(ft)
            for x in und.elements():
                action[t, x] = und.mul(und.mul(ft, n.act(t, x)), fti)
        return GammaGroup(g, und, action)
    if isinstance(f, AutValuedCocycle):
        if f.base is not n and f.base != n:
            raise NotCocycle("cocycle base mismatch")
        action = np.empty((g.order, und.order), dtype=np.int64)
        for t in g.elements():
            for x in und.elements():
                action[t, x] = f.autos[t][n.act(t, x)]
        return GammaGroup(g, und, action)
    raise TypeError("unsupported twisting datum")


def twist_lattice(m: ZGLattice, f: CrossedHom, value_matrices) -> ZGLattice:
    """New action rho'(t) = nu(f(t)) . rho(t) for an auxiliary action nu of
    the cocycle's value group on the lattice.

    Compatibility nu(t . x) rho(t) == rho(t) nu(x) is checked on generators.
    """
    if not isinstance(f.coefficient, GammaGroup):
        raise NotCocycle("twisting needs a group-valued cocycle")
    n = f.coefficient
    nu = [la.intmat(v) for v in value_matrices]
    if len(nu) != n.underlying.order:
        raise NotAction("one matrix per value-group element required")
    gamma = m.group
    if n.gamma != gamma:
        raise NotAction("cocycle and lattice have different acting groups")
    for v in nu:
        if v.shape != (m.rank, m.rank):
            raise NotAction("value matrices must match the lattice rank")
    for s in generating_set(gamma):
        for x in n.underlying.elements():
            lhs = nu[n.act(s, x)] @ m.rho[s]
            rhs = m.rho[s] @ nu[x]
            if not la.mat_eq(lhs, rhs):
                raise NotAction("auxiliary action incompatible with the twist")
    rho = [nu[f(t)] @ m.rho[t] for t in gamma.elements()]
    try:
        return ZGLattice(gamma, rho, validate=True)
    except ValueError as e:
        raise NotAction(str(e)) from e


# ---------------------------------------------------------------------------
# truncated systems of Gamma-groups and the obstruction sequence


@dataclass(frozen=True)
class TruncatedGammaSystem:
    """Levels of Gamma-groups with equivariant transitions level n+1 -> n."""

    levels: tuple
    transitions: tuple

    def __post_init__(self):
        lv, tr = self.levels, self.transitions
        if len(tr) != len(lv) - 1:
            raise ValueError("need one transition per adjacent pair")
        gamma = lv[0].gamma
        for g in lv:
            if g.gamma != gamma:
                raise ValueError("levels over different acting groups")
        for i, u in enumerate(tr):
            if u.source != lv[i + 1].underlying or u.target != lv[i].underlying:
                raise ValueError("transition %d connects the wrong groups" % i)
            for t in gamma.elements():
                for x in lv[i + 1].underlying.elements():
                    if u(lv[i + 1].act(t, x)) != lv[i].act(t, u(x)):
                        raise ValueError("transition %d is not equivariant" % i)

    @property
    def gamma(self) -> FiniteGroup:
        return self.levels[0].gamma

    def __len__(self):
        return len(self.levels)


def compatible_family(system: TruncatedGammaSystem, top: CrossedHom) -> tuple:
    """Push a top-level cocycle down through the transitions."""
    fams = [top]
    for i in range(len(system) - 2, -1, -1):
        u = system.transitions[i]
        upper = fams[0]
        fams.insert(
            0,
            CrossedHom(
                system.gamma,
                system.levels[i],
                tuple(u(v) for v in upper.values),
                validate=False,
            ),
        )
    return tuple(fams)


def check_family(system: TruncatedGammaSystem, family) -> None:
    if len(family) != len(system):
        raise ValueError("family length mismatch")
    for i, f in enumerate(family):
        if f.coefficient != system.levels[i]:
            raise ValueError("level %d cocycle has wrong coefficient" % i)
    for i, u in enumerate(system.transitions):
        upper, lower = family[i + 1], family[i]
        if tuple(u(v) for v in upper.values) != lower.values:
            raise ValueError("family is not compatible at level %d" % i)


def level_witnesses(f: CrossedHom, fprime: CrossedHom) -> tuple:
    """All a with f'(t) = a^-1 f(t) (t.a) for every t."""
    n: GammaGroup = f.coefficient
    und = n.underlying
    out = []
    for a in und.elements():
        ai = und.inv(a)
        if all(
            fprime(t) == und.mul(und.mul(ai, f(t)), n.act(t, a))
            for t in f.group.elements()
        ):
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class ObstructionReport:
    witnesses: tuple  # chosen a_n per level
    obstruction: tuple  # e_n = a_n * u(a_{n+1})^-1, one per transition
    memberships_verified: bool  # each e_n lies in the twisted fixed group
    trivial: bool
    trivialization: tuple  # c_n with e_n = c_n * u(c_{n+1})^-1 when trivial

    @property
    def equivalent_on_truncation(self) -> bool:
        return self.trivial


def lim1_obstruction(
    system: TruncatedGammaSystem,
    family,
    family_prime,
    witnesses=None,
) -> ObstructionReport:
    """Obstruction sequence for two levelwise-equivalent cocycle families.

    e_n = a_n * u(a_{n+1})^-1 lands in the f-twisted fixed group at each
    level; the verdict says whether (e_n) is the trivial class of the
    truncated lim^1 orbit set, i.e. whether the witnesses can be corrected
    to a single coherent equivalence on the truncation.
    """
    check_family(system, family)
    check_family(system, family_prime)
    N = len(system) - 1
    if witnesses is None:
        chosen = []
        for i in range(len(system)):
            opts = level_witnesses(family[i], family_prime[i])
            if not opts:
                raise NotLevelEquivalent("no witness at level %d" % i)
            chosen.append(opts[0])
        witnesses = tuple(chosen)
    else:
        witnesses = tuple(witnesses)
        for i, a in enumerate(witnesses):
            if a not in level_witnesses(family[i], family_prime[i]):
                raise NotLevelEquivalent("supplied witness fails at level %d" % i)

    twisted = [twist_group(system.levels[i], family[i]) for i in range(len(system))]
    fixed = [set(t.fixed_points()) for t in twisted]

    obstruction = []
    member_ok = True
    for i in range(N):
        u = system.transitions[i]
        und = system.levels[i].underlying
        e = und.mul(witnesses[i], und.inv(u(witnesses[i + 1])))
        obstruction.append(e)
        member_ok = member_ok and (e in fixed[i])
    obstruction = tuple(obstruction)

    # solve e_n = c_n * u(c_{n+1})^-1 inside the fixed groups, top down
    cs = [None] * len(system)
    cs[-1] = 0
    ok = True
    for i in range(N - 1, -1, -1):
        und = system.levels[i].underlying
        u = system.transitions[i]
        c = und.mul(obstruction[i], u(cs[i + 1]))
        if c not in fixed[i]:
            ok = False
            break
        cs[i] = c
    trivial = ok and member_ok
    trivialization = tuple(cs) if ok else ()
    if ok:
        for i in range(N):
            und = system.levels[i].underlying
            u = system.transitions[i]
            assert obstruction[i] == und.mul(cs[i], und.inv(u(cs[i + 1])))
    return ObstructionReport(
        witnesses, obstruction, member_ok, trivial, trivialization
    )
