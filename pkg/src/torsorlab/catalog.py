"""Named corpus of small groups driving the verification suites."""

from __future__ import annotations

from .groups import (
    FiniteGroup,
    SemidirectDatum,
    alternating_group_4,
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    semidihedral_group_16,
    semidirect_product,
    special_linear_2_3,
    symmetric_group,
)


def _frobenius_20() -> FiniteGroup:
    # C5 x| C4 with the generator acting by x -> 2x
    c5, c4 = cyclic_group(5), cyclic_group(4)
    theta = []
    for i in range(4):
        mult = pow(2, i, 5)
        theta.append(tuple((mult * x) % 5 for x in range(5)))
    return semidirect_product(SemidirectDatum(c5, c4, tuple(theta))).group


def _frobenius_21() -> FiniteGroup:
    # C7 x| C3 with the generator acting by x -> 2x (2^3 = 1 mod 7)
    c7, c3 = cyclic_group(7), cyclic_group(3)
    theta = []
    for i in range(3):
        mult = pow(2, i, 7)
        theta.append(tuple((mult * x) % 7 for x in range(7)))
    return semidirect_product(SemidirectDatum(c7, c3, tuple(theta))).group


def group_catalog(max_order: int = 24) -> tuple:
    """(name, group) pairs, deduplicated by name, orders <= max_order."""
    c2 = cyclic_group(2)
    entries = []
    for n in range(1, 25):
        entries.append((f"C{n}", cyclic_group(n)))
    entries += [
        ("C2xC2", direct_product(c2, c2)),
        ("C2xC4", direct_product(c2, cyclic_group(4))),
        ("C2xC6", direct_product(c2, cyclic_group(6))),
        ("C2xC8", direct_product(c2, cyclic_group(8))),
        ("C2xC10", direct_product(c2, cyclic_group(10))),
        ("C2xC12", direct_product(c2, cyclic_group(12))),
        ("C3xC3", direct_product(cyclic_group(3), cyclic_group(3))),
        ("C3xC6", direct_product(cyclic_group(3), cyclic_group(6))),
        ("C4xC4", direct_product(cyclic_group(4), cyclic_group(4))),
        ("C2xC2xC2", direct_product(c2, direct_product(c2, c2))),
        ("C2xC2xC4", direct_product(c2, direct_product(c2, cyclic_group(4)))),
        ("C2xC2xC6", direct_product(c2, direct_product(c2, cyclic_group(6)))),
        (
            "C2xC2xC2xC2",
            direct_product(direct_product(c2, c2), direct_product(c2, c2)),
        ),
        ("S3", symmetric_group(3)),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group(8)),
        ("D5", dihedral_group(5)),
        ("D6", dihedral_group(6)),
        ("Dic3", quaternion_group(12)),
        ("A4", alternating_group_4()),
        ("D7", dihedral_group(7)),
        ("D8", dihedral_group(8)),
        ("Q16", quaternion_group(16)),
        ("SD16", semidihedral_group_16()),
        ("C2xD4", direct_product(c2, dihedral_group(4))),
        ("C2xQ8", direct_product(c2, quaternion_group(8))),
        ("D9", dihedral_group(9)),
        ("C3xS3", direct_product(cyclic_group(3), symmetric_group(3))),
        ("D10", dihedral_group(10)),
        ("Dic5", quaternion_group(20)),
        ("F20", _frobenius_20()),
        ("F21", _frobenius_21()),
        ("D11", dihedral_group(11)),
        ("S4", symmetric_group(4)),
        ("SL(2,3)", special_linear_2_3()),
        ("C2xA4", direct_product(c2, alternating_group_4())),
        ("D12", dihedral_group(12)),
        ("Dic6", quaternion_group(24)),
        ("C3xD4", direct_product(cyclic_group(3), dihedral_group(4))),
        ("C3xQ8", direct_product(cyclic_group(3), quaternion_group(8))),
    ]
    return tuple((name, g) for name, g in entries if g.order <= max_order)


def central_involutions(g: FiniteGroup) -> tuple:
    from .groups import center

    return tuple(
        x for x in center(g) if x != g.identity and g.mul(x, x) == g.identity
    )
