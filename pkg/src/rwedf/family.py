"""Disjoint set families and their external difference profiles.

Conventions used everywhere: sets hold element indices of one finite group,
the identity is 0, and the difference of a pair (a, b) is the left difference
a * b^-1.  Row i of a difference profile counts, for each delta != 0, the
ordered pairs (a, b) with a in A_i, b in any other set, and a * b^-1 = delta.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import BadWeight, IdentityDelta
from .groups import FiniteGroup, Subgroup, closure


@dataclass(frozen=True)
class DisjointFamily:
    """An ordered family of pairwise disjoint, non-empty subsets of one group."""

    group: FiniteGroup
    sets: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = self.group.order
        union = 0
        for i, members in enumerate(self.sets):
            if not members:
                raise ValueError(f"set {i} is empty")
            mask = 0
            prev = -1
            for x in members:
                if not 0 <= x < n:
                    raise ValueError(f"element {x} out of range in set {i}")
                if x <= prev:
                    raise ValueError(f"set {i} must be strictly increasing")
                prev = x
                mask |= 1 << x
            if union & mask:
                raise ValueError(f"set {i} overlaps an earlier set")
            union |= mask
        object.__setattr__(self, "_union_mask", union)

    @classmethod
    def of(cls, group: FiniteGroup, *sets: Sequence[int]) -> "DisjointFamily":
        return cls(group, tuple(tuple(sorted(s)) for s in sets))

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def total(self) -> int:
        return sum(len(s) for s in self.sets)

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def union_mask(self) -> int:
        return self._union_mask

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(x for s in self.sets for x in s))

    def is_partition_of_group(self) -> bool:
        return self.total == self.n

    def is_partition_of_nonidentity(self) -> bool:
        return self.total == self.n - 1 and not (self._union_mask & 1)

    def translate(self, g: int) -> "DisjointFamily":
        """Right-translate every member by g; left differences are unchanged."""
        mul = self.group.mul
        return DisjointFamily(
            self.group, tuple(tuple(sorted(mul(x, g) for x in s)) for s in self.sets)
        )

    def canonical_key(self) -> Tuple:
        """Order-free fingerprint: sets sorted by (size desc, members)."""
        return tuple(sorted(self.sets, key=lambda s: (-len(s), s)))


@dataclass(frozen=True)
class DifferenceProfile:
    """Dense count matrix: rows are family sets, columns are delta = 1..n-1."""

    family: DisjointFamily
    counts: Tuple[Tuple[int, ...], ...]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.counts[i]

    def cell(self, i: int, delta: int) -> int:
        if delta == 0:
            raise IdentityDelta("delta must be a non-identity element")
        return self.counts[i][delta - 1]

    def column_sum(self, delta: int) -> int:
        if delta == 0:
            raise IdentityDelta("delta must be a non-identity element")
        return sum(row[delta - 1] for row in self.counts)


def difference_profile(family: DisjointFamily) -> DifferenceProfile:
    """Count external differences a * b^-1 out of each set into the rest."""
    g = family.group
    n = g.order
    support = family.support()
    owner = {}
    for i, members in enumerate(family.sets):
        for x in members:
            owner[x] = i
    if n <= 2048:
        rows = g.diff_rows
        counts = [[0] * n for _ in family.sets]
        for a in support:
            row_a = rows[a]
            ca = counts[owner[a]]
            oa = owner[a]
            for b in support:
                if owner[b] != oa:
                    ca[row_a[b]] += 1
    else:
        counts = [[0] * n for _ in family.sets]
        for a in support:
            ca = counts[owner[a]]
            oa = owner[a]
            for b in support:
                if owner[b] != oa:
                    ca[g.diff(a, b)] += 1
    return DifferenceProfile(family, tuple(tuple(row[1:]) for row in counts))


def scaled_weights(sizes: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Common denominator K = lcm(sizes) and integer weights K / k_i."""
    k = lcm(*sizes) if len(sizes) > 1 else sizes[0]
    return k, tuple(k // s for s in sizes)


def reciprocal_sums(profile: DifferenceProfile) -> Tuple[int, List[int]]:
    """Integer-scaled reciprocal row sums: K and [K * sum_i N_i(delta)/k_i] per delta."""
    k, coef = scaled_weights(profile.family.sizes)
    cols = len(profile.counts[0]) if profile.counts else 0
    sums = [0] * cols
    for c, row in zip(coef, profile.counts):
        for d in range(cols):
            if row[d]:
                sums[d] += c * row[d]
    return k, sums


def e_delta(family: DisjointFamily, profile: DifferenceProfile, delta: int) -> Fraction:
    """Exact adversary success probability at shift delta."""
    if delta == 0:
        raise IdentityDelta("delta must be a non-identity element")
    total = Fraction(0)
    for k, row in zip(family.sizes, profile.counts):
        total += Fraction(row[delta - 1], k)
    return total / family.m


def e_hat(family: DisjointFamily, profile: Optional[DifferenceProfile] = None) -> Fraction:
    """Worst-case success probability: max over delta of e_delta."""
    if family.n < 2:
        raise ValueError("e_hat needs a group with at least one non-identity element")
    if profile is None:
        profile = difference_profile(family)
    k, sums = reciprocal_sums(profile)
    return Fraction(max(sums), k * family.m)


def r_bound(n: int, m: int, total: int) -> Fraction:
    """Averaging lower bound (m-1)*T / (m*(n-1)) on the worst-case rate."""
    if n < 2:
        raise ValueError("bound needs n >= 2")
    if m < 1 or total < m or total > n:
        raise ValueError(f"no family has m={m} sets with {total} elements in a group of {n}")
    return Fraction((m - 1) * total, m * (n - 1))


def internal_differences(group: FiniteGroup, members: Sequence[int]) -> Tuple[int, ...]:
    """Sorted distinct differences a * b^-1 over ordered pairs within one set."""
    ms = sorted(set(members))
    out = set()
    for a in ms:
        for b in ms:
            if a != b:
                out.add(group.diff(a, b))
    return tuple(sorted(out))


def internal_difference_group(group: FiniteGroup, members: Sequence[int]) -> Subgroup:
    """Subgroup generated by the internal differences; trivial for singletons."""
    return closure(group, internal_differences(group, members))


class BimodalVerdict(NamedTuple):
    holds: bool
    witness: Optional[Tuple[int, int, int]]  # (set index, delta, offending count)


def is_bimodal(family: DisjointFamily, profile: Optional[DifferenceProfile] = None) -> BimodalVerdict:
    """Every count N_i(delta) is either 0 or the full set size k_i.

    Scan order is rows then deltas, so the witness is deterministic: the first
    (i, delta) whose count falls strictly between.
    """
    if profile is None:
        profile = difference_profile(family)
    for i, (k, row) in enumerate(zip(family.sizes, profile.counts)):
        for d, c in enumerate(row):
            if c != 0 and c != k:
                return BimodalVerdict(False, (i, d + 1, c))
    return BimodalVerdict(True, None)


def check_weights(m: int, weights: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    if len(weights) != m:
        raise BadWeight(f"need {m} weights, got {len(weights)}")
    out = []
    for w in weights:
        w = Fraction(w)
        if not 0 < w <= 1:
            raise BadWeight(f"weight {w} outside (0, 1]")
        out.append(w)
    return tuple(out)


def weighted_sum(
    family: DisjointFamily,
    profile: DifferenceProfile,
    weights: Sequence[Fraction],
    delta: int,
) -> Fraction:
    """sum_i w_i * N_i(delta) for positive weights w_i <= 1."""
    if delta == 0:
        raise IdentityDelta("delta must be a non-identity element")
    ws = check_weights(family.m, weights)
    return sum((w * row[delta - 1] for w, row in zip(ws, profile.counts)), Fraction(0))
