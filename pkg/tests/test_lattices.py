import numpy as np
import pytest

from torsorlab import groups as gr
from torsorlab import gsets as gs
from torsorlab import lattices as lt
from torsorlab import linalg as la


def sign_lattice(c2):
    return lt.ZGLattice(c2, [la.intmat([[1]]), la.intmat([[-1]])])


def test_zglattice_validation():
    c2 = gr.cyclic_group(2)
    sign_lattice(c2)  # valid
    with pytest.raises(ValueError):
        lt.ZGLattice(c2, [la.intmat([[1]]), la.intmat([[2]])])  # 2 not unimodular here
    with pytest.raises(ValueError):
        lt.ZGLattice(c2, [la.intmat([[-1]]), la.intmat([[-1]])])  # identity wrong


def test_permutation_lattice_and_fixed_rank():
    s3 = gr.symmetric_group(3)
    m = lt.permutation_lattice(gs.conjugation_twist(s3))
    assert m.rank == 6
    # fixed sublattice rank = number of orbits (Burnside cross-check)
    stack = np.concatenate(
        [m.rho[g] - la.identity(6) for g in s3.elements()], axis=0
    )
    fixed_rank = la.kernel_basis(stack).shape[1]
    assert fixed_rank == len(gr.conjugacy_classes(s3)) == 3
    # regular C2 lattice is the swap
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    assert la.mat_eq(reg.rho[1], la.intmat([[0, 1], [1, 0]]))
    one = lt.permutation_lattice(gs.trivial_gset(c2, 1))
    assert one.rank == 1 and la.mat_eq(one.rho[1], la.identity(1))


def test_fixed_rank_counts_orbits():
    # Burnside cross-check over assorted actions
    s3 = gr.symmetric_group(3)
    d4 = gr.dihedral_group(4)
    cases = [
        gs.conjugation_twist(s3),
        gs.conjugation_twist(d4),
        gs.coset_gset(s3, gr.generated_subgroup(s3, [1])),
        gs.trivial_gset(d4, 5),
        gs.disjoint_union(gs.regular_gset(s3), gs.trivial_gset(s3, 2)),
    ]
    for x in cases:
        m = lt.permutation_lattice(x)
        stack = np.concatenate(
            [m.rho[g] - la.identity(m.rank) for g in x.group.elements()], axis=0
        )
        fixed_rank = la.kernel_basis(stack).shape[1]
        assert fixed_rank == len(gs.orbits(x).orbits)


def test_permutation_lattice_unimodular_rhos():
    d4 = gr.dihedral_group(4)
    m = lt.permutation_lattice(gs.coset_gset(d4, (0,)))
    for g in d4.elements():
        assert abs(la.bareiss_det(m.rho[g])) == 1


def test_equivariant_sublattice_antisymmetric_line():
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    # n + (swap n) = 0
    sub, incl = lt.equivariant_sublattice(reg, [[1, 1]])
    assert sub.rank == 1
    v = incl.matrix[:, 0]
    assert sorted([int(v[0]), int(v[1])]) == [-1, 1]
    # no conditions: everything
    whole, i2 = lt.equivariant_sublattice(reg, la.zeros(0, 2))
    assert whole.rank == 2 and lt.is_equivariant_iso(i2)
    # v = 0: rank 0
    zero, _ = lt.equivariant_sublattice(reg, la.identity(2))
    assert zero.rank == 0


def test_equivariant_sublattice_not_stable():
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    with pytest.raises(lt.NotStable):
        lt.equivariant_sublattice(reg, [[1, 0]])  # first coordinate not invariant


def test_exactness_split_sequence():
    c1 = gr.trivial_group()
    z = lt.trivial_lattice(c1, 1)
    z2 = lt.trivial_lattice(c1, 2)
    zero = lt.zero_lattice(c1)
    seq = [
        lt.zero_map(zero, z),
        lt.LatticeMap(z, z2, [[1], [1]]),
        lt.LatticeMap(z2, z, [[1, -1]]),
        lt.zero_map(z, zero),
    ]
    rep = lt.exactness_report(seq)
    assert rep.exact
    # 0 -> Z -(2)-> Z -(0)-> Z -> 0 fails integrally at the middle
    seq2 = [
        lt.zero_map(zero, z),
        lt.LatticeMap(z, z, [[2]]),
        lt.LatticeMap(z, z, [[0]]),
    ]
    rep2 = lt.exactness_report(seq2)
    assert rep2.joints[1].composite_zero
    assert rep2.joints[1].image_equals_kernel_saturated
    assert not rep2.joints[1].image_equals_kernel_integral
    assert not rep2.exact


def test_exactness_requires_composability():
    c1 = gr.trivial_group()
    z = lt.trivial_lattice(c1, 1)
    z2 = lt.trivial_lattice(c1, 2)
    with pytest.raises(lt.NotComposable):
        lt.exactness_report([lt.LatticeMap(z, z2, [[1], [0]]), lt.LatticeMap(z2, z2, la.identity(2)), lt.LatticeMap(z, z, [[1]])])


def test_is_equivariant_iso():
    c1 = gr.trivial_group()
    z = lt.trivial_lattice(c1, 1)
    assert lt.is_equivariant_iso(lt.LatticeMap(z, z, [[1]]))
    assert not lt.is_equivariant_iso(lt.LatticeMap(z, z, [[2]]))
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    swap = lt.LatticeMap(reg, reg, [[0, 1], [1, 0]])
    assert lt.is_equivariant_iso(swap)


def test_equivariance_enforced():
    c2 = gr.cyclic_group(2)
    reg = lt.permutation_lattice(gs.regular_gset(c2))
    sgn = sign_lattice(c2)
    with pytest.raises(lt.NotEquivariant):
        lt.LatticeMap(reg, sgn, [[1, 1]])
    lt.LatticeMap(reg, sgn, [[1, -1]])  # the norm-twisted projection is fine


def test_induced_lattice():
    s3 = gr.symmetric_group(3)
    assert lt.induced_lattice(s3, tuple(s3.elements())).rank == 1
    assert lt.induced_lattice(s3, (0,)).rank == 6
    h = gr.generated_subgroup(s3, [1])
    m = lt.induced_lattice(s3, h)
    assert m.rank == 3
    with pytest.raises(gr.NotSubgroup):
        lt.induced_lattice(s3, (0, 1, 2))


def test_direct_sum():
    c2 = gr.cyclic_group(2)
    m = lt.direct_sum(sign_lattice(c2), lt.trivial_lattice(c2, 1))
    assert m.rank == 2
    assert la.mat_eq(m.rho[1], la.intmat([[-1, 0], [0, 1]]))
