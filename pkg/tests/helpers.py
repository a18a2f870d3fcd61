"""Standing fixture families shared across the test modules."""
from fractions import Fraction

from rwedf import (
    CyclicGroup,
    DihedralGroup,
    DisjointFamily,
    ElementaryAbelianGroup,
    f21_fixture,
    heisenberg_partition,
)

HALF = Fraction(1, 2)


def weighted_z8():
    """Three sets in Z_8 with constant half-weighted sum 3."""
    g = CyclicGroup(8)
    fam = DisjointFamily.of(g, (0, 1, 3), (4, 5, 7), (2, 6))
    return fam, (HALF, HALF, HALF)


def mixed_z10():
    # constant reciprocal sum 2 without any of the classical structures
    g = CyclicGroup(10)
    return DisjointFamily.of(g, (0,), (5,), (1, 9), (2, 3))


def bimodal_z12():
    g = CyclicGroup(12)
    return DisjointFamily.of(g, (3, 6, 9), (4, 8), (1,), (2,), (5,), (7,), (10,), (11,))


def coset_z33():
    # digits (a, b) encode as 3a + b
    g = ElementaryAbelianGroup(3, 2)
    return DisjointFamily.of(g, (4, 8), (1, 2), (5, 7), (3, 6))


def pair_z7():
    g = CyclicGroup(7)
    return DisjointFamily.of(g, (0, 1, 3), (2, 4, 5, 6))


def star_d10():
    # five reflections then the rotation subgroup star; s*5+r encoding
    g = DihedralGroup(5)
    return DisjointFamily.of(g, (5,), (6,), (7,), (8,), (9,), (1, 2, 3, 4))


def all_fixtures():
    """(label, family, weights) for the eight standing examples."""
    fam8, w8 = weighted_z8()
    return [
        ("weighted_z8", fam8, w8),
        ("mixed_z10", mixed_z10(), None),
        ("bimodal_z12", bimodal_z12(), None),
        ("coset_z33", coset_z33(), None),
        ("pair_z7", pair_z7(), None),
        ("pair_f21", f21_fixture(), None),
        ("star_d10", star_d10(), None),
        ("heisenberg_27", heisenberg_partition(3), None),
    ]
