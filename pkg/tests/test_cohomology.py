import itertools

import numpy as np
import pytest

from torsorlab import cohomology as co
from torsorlab import groups as gr
from torsorlab import gsets as gs
from torsorlab import lattices as lt
from torsorlab import linalg as la


def sign_lattice(c2):
    return lt.ZGLattice(c2, [la.identity(1), la.intmat([[-1]])])


def cyclic_h1_oracle(n, mat):
    """H^1(C_n, Z^r) = ker(Norm) / im(sigma - 1), computed independently."""
    r = mat.shape[0]
    norm = la.zeros(r, r)
    p = la.identity(r)
    for _ in range(n):
        norm = norm + p
        p = mat @ p
    ker = la.kernel_basis(norm)
    imgen = (mat - la.identity(r)) @ la.identity(r)
    X = la.solve_int(ker, imgen)
    assert X is not None
    return tuple(d for d in la.cokernel_invariants(X, ambient_rank=ker.shape[1]) if d != 0) or ()


def brute_module_h1_order(gamma, mod):
    elems = mod.elements()
    z1 = 0
    for vals in itertools.product(elems, repeat=gamma.order):
        if vals[0] != (0,) * mod.ngens:
            continue
        good = True
        for s in gamma.elements():
            for t in gamma.elements():
                want = mod.reduce([x + y for x, y in zip(vals[s], mod.act(s, vals[t]))])
                if want != vals[gamma.mul(s, t)]:
                    good = False
                    break
            if not good:
                break
        if good:
            z1 += 1
    cob = {
        tuple(
            mod.reduce([x - y for x, y in zip(mod.act(t, a), a)])
            for t in gamma.elements()
        )
        for a in elems
    }
    assert z1 % len(cob) == 0
    return z1 // len(cob)


def test_crossed_hom_validation_and_closure():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    n = co.trivial_gamma_group(c2, s3)
    f = co.CrossedHom.from_generators(c2, n, {1: 1})  # 1 is an involution in S3
    assert f(1) == 1
    with pytest.raises(co.NotCocycle):
        co.CrossedHom.from_generators(c2, n, {1: 2})  # order-3 value, not a hom
    with pytest.raises(co.NotCocycle):
        co.CrossedHom(c2, n, (0, 2))


def test_h0_lattice_and_module_and_group():
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    fixed = co.h0(c2, reg)
    assert fixed.rank == 1
    v = fixed.basis[:, 0]
    assert v[0] == v[1] != 0  # the norm element spans the fixed line
    assert co.h0(c2, sign_lattice(c2)).rank == 0
    assert co.h0(c2, lt.trivial_lattice(c2, 3)).rank == 3
    mod = co.FiniteModule(c2, (4,), [la.identity(1), la.intmat([[-1]])])
    h = co.h0(c2, mod)
    assert h.invariants == (2,)  # {0, 2} inside Z/4
    n = co.trivial_gamma_group(c2, gr.symmetric_group(3))
    assert co.h0(c2, n) == tuple(range(6))


def test_h1_sign_action():
    c2 = gr.cyclic_group(2)
    H = co.h1_abelian(c2, sign_lattice(c2))
    assert H.invariants == (2,)
    assert H.order() == 2
    f = H.generators[0]
    # generator is an honest nontrivial cocycle
    assert f.values[0] == (0,) and f.values[1] != (0,)


def test_h1_regular_vanishes():
    for g in [gr.cyclic_group(4), gr.symmetric_group(3), gr.quaternion_group(8)]:
        m = lt.permutation_lattice(gs.regular_gset(g))
        assert co.h1_abelian(g, m).is_trivial


def test_h1_trivial_group():
    c1 = gr.trivial_group()
    assert co.h1_abelian(c1, lt.trivial_lattice(c1, 3)).is_trivial


def test_h1_cyclic_oracle_agreement():
    # C_n acting on small lattices: compare with ker(Norm)/im(sigma-1)
    cases = []
    c2 = gr.cyclic_group(2)
    cases.append((c2, [la.identity(1), la.intmat([[-1]])]))
    cases.append((c2, [la.identity(2), la.intmat([[0, 1], [1, 0]])]))
    c4 = gr.cyclic_group(4)
    rot = la.intmat([[0, -1], [1, 0]])
    cases.append((c4, [la.identity(2), rot, rot @ rot, rot @ rot @ rot]))
    c3 = gr.cyclic_group(3)
    m3 = la.intmat([[0, -1], [1, -1]])
    cases.append((c3, [la.identity(2), m3, m3 @ m3]))
    for g, rho in cases:
        mine = co.h1_abelian(g, lt.ZGLattice(g, rho)).invariants
        oracle = cyclic_h1_oracle(g.order, rho[1])
        assert tuple(sorted(mine)) == tuple(sorted(oracle))


def test_h1_finite_module_matches_enumeration():
    c2 = gr.cyclic_group(2)
    cases = [
        co.FiniteModule(c2, (4,), [la.identity(1), la.intmat([[-1]])]),
        co.FiniteModule(c2, (2, 2), [la.identity(2), la.intmat([[0, 1], [1, 0]])]),
        co.FiniteModule(c2, (3,), [la.identity(1), la.intmat([[-1]])]),
    ]
    c4 = gr.cyclic_group(4)
    swap = la.intmat([[0, 1], [1, 0]])
    cases.append(co.FiniteModule(c4, (2, 2), [la.identity(2), swap, la.identity(2), swap]))
    for mod in cases:
        mine = co.h1_abelian(mod.gamma, mod).order()
        brute = brute_module_h1_order(mod.gamma, mod)
        assert mine == brute


def test_shapiro_various():
    s3 = gr.symmetric_group(3)
    for h in gr.all_subgroups(s3):
        assert co.shapiro_check(s3, h)
    assert co.shapiro_check(s3, tuple(s3.elements()))
    assert co.shapiro_check(s3, (0,))


def test_nonabelian_h1_examples():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    H = co.h1_nonabelian(c2, co.trivial_gamma_group(c2, s3))
    assert H.count == 2
    assert H.sizes == (1, 3)
    # trivial coefficient group
    H = co.h1_nonabelian(c2, co.trivial_gamma_group(c2, gr.trivial_group()))
    assert H.count == 1
    # C2 on C3 by inversion: all three cocycles cobound
    c3 = gr.cyclic_group(3)
    n = co.GammaGroup(c2, c3, np.array([[0, 1, 2], [0, 2, 1]]))
    H = co.h1_nonabelian(c2, n)
    assert H.count == 1 and H.cocycle_count == 3


def test_nonabelian_count_matches_abelian_order():
    c2 = gr.cyclic_group(2)
    # abelian coefficients: class count equals the abelian H^1 order
    pairs = [
        (co.GammaGroup(c2, gr.cyclic_group(4), np.array([[0, 1, 2, 3], [0, 3, 2, 1]])),
         co.FiniteModule(c2, (4,), [la.identity(1), la.intmat([[-1]])])),
        (co.trivial_gamma_group(c2, gr.cyclic_group(2)),
         co.FiniteModule(c2, (2,), [la.identity(1), la.identity(1)])),
    ]
    for n, mod in pairs:
        assert co.h1_nonabelian(c2, n).count == co.h1_abelian(c2, mod).order()


def test_budget():
    g = gr.symmetric_group(3)
    n = co.trivial_gamma_group(g, gr.symmetric_group(4))
    with pytest.raises(co.BudgetExceeded):
        co.h1_nonabelian(g, n, budget=10)


def test_twist_group_trivial_and_translation():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    n = co.trivial_gamma_group(c2, s3)
    f = co.trivial_cocycle(c2, n)
    assert co.twist_group(n, f) == n
    # a group acting trivially on itself, twisted by the identity cocycle,
    # becomes the conjugation action
    selfn = co.trivial_gamma_group(s3, s3)
    taut = co.CrossedHom(s3, selfn, tuple(s3.elements()))
    tw = co.twist_group(selfn, taut)
    conj = gs.conjugation_twist(s3)
    assert (tw.action == conj.action).all()


def test_twist_group_double_twist_recovers():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    n = co.trivial_gamma_group(c2, s3)
    f = co.CrossedHom.from_generators(c2, n, {1: 1})
    tw = co.twist_group(n, f)
    # inverse cocycle is a cocycle for the twisted action
    ginv = co.CrossedHom(c2, tw, tuple(s3.inv(v) for v in f.values))
    back = co.twist_group(tw, ginv)
    assert (back.action == n.action).all()


def test_twist_group_aut_valued():
    c2 = gr.cyclic_group(2)
    c3 = gr.cyclic_group(3)
    n = co.trivial_gamma_group(c2, c3)
    inv_auto = (0, 2, 1)
    f = co.AutValuedCocycle(n, (tuple(range(3)), inv_auto))
    tw = co.twist_group(n, f)
    assert tw.act(1, 1) == 2  # inversion action appears


def test_twist_lattice_conjugation():
    s3 = gr.symmetric_group(3)
    # right-translation action: rho(t) e_s = e_{s t^-1}
    rho = []
    for t in s3.elements():
        m = la.zeros(6, 6)
        for x in s3.elements():
            m[s3.mul(x, s3.inv(t)), x] = 1
        rho.append(m)
    right = lt.ZGLattice(s3, rho)
    selfn = co.trivial_gamma_group(s3, s3)
    taut = co.CrossedHom(s3, selfn, tuple(s3.elements()))
    left = []
    for x in s3.elements():
        m = la.zeros(6, 6)
        for y in s3.elements():
            m[s3.mul(x, y), y] = 1
        left.append(m)
    tw = co.twist_lattice(right, taut, left)
    conj = lt.permutation_lattice(gs.conjugation_twist(s3))
    assert tw == conj
    # trivial cocycle leaves the lattice unchanged
    tw0 = co.twist_lattice(right, co.trivial_cocycle(s3, selfn), left)
    assert tw0 == right
    # rank and unimodularity preserved
    for g in s3.elements():
        assert abs(la.bareiss_det(tw.rho[g])) == 1


def test_twist_lattice_rejects_left_action_base():
    s3 = gr.symmetric_group(3)
    left_lattice = lt.permutation_lattice(gs.regular_gset(s3))
    selfn = co.trivial_gamma_group(s3, s3)
    taut = co.CrossedHom(s3, selfn, tuple(s3.elements()))
    left = [left_lattice.rho[x] for x in s3.elements()]
    with pytest.raises(co.NotAction):
        co.twist_lattice(left_lattice, taut, left)


def make_system(gamma, levels, transitions):
    return co.TruncatedGammaSystem(tuple(levels), tuple(transitions))


def test_lim1_obstruction_trivial_pair():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    lv = [co.trivial_gamma_group(c2, s3)] * 3
    tr = [gr.identity_hom(s3)] * 2
    system = make_system(c2, lv, tr)
    top = co.CrossedHom.from_generators(c2, lv[2], {1: 1})
    fam = co.compatible_family(system, top)
    rep = co.lim1_obstruction(system, fam, fam)
    assert rep.trivial and rep.memberships_verified
    assert all(e == 0 for e in rep.obstruction)


def test_lim1_obstruction_membership_and_choice_independence():
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    lv = [co.trivial_gamma_group(c2, s3)] * 3
    tr = [gr.identity_hom(s3)] * 2
    system = make_system(c2, lv, tr)
    top = co.CrossedHom.from_generators(c2, lv[2], {1: 1})
    fam = co.compatible_family(system, top)
    # twist by a coherent witness family
    a_top = 4
    avals = [a_top, a_top, a_top]
    famp = tuple(
        co.twist_cocycle(f, a) for f, a in zip(fam, avals)
    )
    co.check_family(system, famp)
    verdicts = set()
    all_wit = [co.level_witnesses(fam[i], famp[i]) for i in range(3)]
    assert all(all_wit)
    for choice in itertools.product(*all_wit):
        rep = co.lim1_obstruction(system, fam, famp, witnesses=choice)
        assert rep.memberships_verified
        verdicts.add(rep.trivial)
    assert verdicts == {True}


def test_lim1_obstruction_not_equivalent():
    c2 = gr.cyclic_group(2)
    c3 = gr.cyclic_group(3)
    n = co.GammaGroup(c2, c3, np.array([[0, 1, 2], [0, 2, 1]]))
    lv = [n, n]
    tr = [gr.identity_hom(c3)]
    system = make_system(c2, lv, tr)
    f = co.trivial_cocycle(c2, n)
    g = co.CrossedHom(c2, n, (0, 1))
    # both exist levelwise (inversion cobounds everything), so build a real
    # failure with a map that is not even levelwise equivalent: trivial action
    n2 = co.trivial_gamma_group(c2, c3)
    system2 = make_system(c2, [n2, n2], [gr.identity_hom(c3)])
    f2 = co.trivial_cocycle(c2, n2)
    # no hom C2 -> C3 is nontrivial, so cocycles into trivial-action C3 are
    # only the trivial one; manufacture inequivalence at the level of S3
    s3 = gr.symmetric_group(3)
    n3 = co.trivial_gamma_group(c2, s3)
    system3 = make_system(c2, [n3, n3], [gr.identity_hom(s3)])
    triv = co.trivial_cocycle(c2, n3)
    transp = co.CrossedHom.from_generators(c2, n3, {1: 1})
    with pytest.raises(co.NotLevelEquivalent):
        co.lim1_obstruction(system3, (triv, triv), (transp, transp))


def test_enumerate_cocycles_is_complete():
    # |Z^1| by generator enumeration matches whole-map filtering
    c2 = gr.cyclic_group(2)
    s3 = gr.symmetric_group(3)
    n = co.trivial_gamma_group(c2, s3)
    via_gens = co.enumerate_cocycles(c2, n)
    brute = []
    for vals in itertools.product(range(6), repeat=2):
        if vals[0] != 0:
            continue
        ok = all(
            vals[c2.mul(s, t)] == s3.mul(vals[s], n.act(s, vals[t]))
            for s in range(2)
            for t in range(2)
        )
        if ok:
            brute.append(vals)
    assert sorted(via_gens) == sorted(tuple(v) for v in brute)
