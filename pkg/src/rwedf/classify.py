"""Classifiers for external difference family variants and a combined report.

Family kinds, all over one group G of order n with m disjoint sets of sizes
k_1..k_m and T = sum k_i:

  EDF    equal sizes, sum_i N_i(delta) constant over delta != 0
  SEDF   every single row N_i constant (equal sizes, m >= 2)
  GSEDF  row i constant with its own value lambda_i
  WEDF   weighted row sum with given weights constant
  RWEDF  the reciprocal weighting 1/k_i; the constant is called ell

The worst-case adversary rate e_hat equals the averaging bound exactly when
the family is an RWEDF, which is what makes this weighting the optimal one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .family import (
    DifferenceProfile,
    DisjointFamily,
    check_weights,
    difference_profile,
    e_hat,
    is_bimodal,
    r_bound,
    reciprocal_sums,
    BimodalVerdict,
)
from .groups import FiniteGroup


def check_edf(profile: DifferenceProfile) -> Optional[int]:
    """Common column sum if sizes are equal, m >= 2, and sums are constant."""
    fam = profile.family
    if fam.m < 2 or len(set(fam.sizes)) != 1:
        return None
    cols = [sum(row[d] for row in profile.counts) for d in range(fam.n - 1)]
    if len(set(cols)) != 1:
        return None
    return cols[0]


def check_sedf(profile: DifferenceProfile) -> Optional[int]:
    """Common per-row count if every row is constant with one shared value."""
    fam = profile.family
    if fam.m < 2 or len(set(fam.sizes)) != 1:
        return None
    values = set()
    for row in profile.counts:
        values.update(row)
        if len(values) > 1:
            return None
    return values.pop()


def check_gsedf(profile: DifferenceProfile) -> Optional[Tuple[int, ...]]:
    """Per-row constants (lambda_1..lambda_m) if each row is constant."""
    fam = profile.family
    if fam.m < 2:
        return None
    out = []
    for row in profile.counts:
        vals = set(row)
        if len(vals) != 1:
            return None
        out.append(vals.pop())
    return tuple(out)


def check_wedf(
    family: DisjointFamily,
    profile: DifferenceProfile,
    weights: Sequence[Fraction],
) -> Optional[Fraction]:
    """Constant weighted column sum under the given weights, if constant."""
    ws = check_weights(family.m, weights)
    first: Optional[Fraction] = None
    for d in range(family.n - 1):
        s = sum((w * row[d] for w, row in zip(ws, profile.counts)), Fraction(0))
        if first is None:
            first = s
        elif s != first:
            return None
    return first


def check_rwedf(
    family: DisjointFamily, profile: Optional[DifferenceProfile] = None
) -> Optional[Fraction]:
    """The constant ell = sum_i N_i(delta)/k_i, or None if it varies."""
    if profile is None:
        profile = difference_profile(family)
    k, sums = reciprocal_sums(profile)
    if not sums:
        return None
    first = sums[0]
    for s in sums:
        if s != first:
            return None
    return Fraction(first, k)


def rwedf_failure_witness(
    family: DisjointFamily, profile: DifferenceProfile
) -> Optional[int]:
    """Smallest delta whose reciprocal sum differs from delta = 1's, if any."""
    _, sums = reciprocal_sums(profile)
    first = sums[0]
    for d, s in enumerate(sums):
        if s != first:
            return d + 1
    return None


def check_difference_set(group: FiniteGroup, members: Sequence[int]) -> Optional[int]:
    """lambda if every non-identity element arises exactly lambda times as d1*d2^-1."""
    ms = sorted(set(members))
    n = group.order
    counts = [0] * n
    for a in ms:
        for b in ms:
            if a != b:
                counts[group.diff(a, b)] += 1
    lam = counts[1] if n > 1 else 0
    for delta in range(2, n):
        if counts[delta] != lam:
            return None
    return lam


def check_partial_difference_set(
    group: FiniteGroup, members: Sequence[int]
) -> Optional[Tuple[int, int]]:
    """(lambda, mu) multiplicities split between members and non-members.

    Internal differences must hit every delta in d \\ {0} lambda times and every
    delta outside d (and != 0) mu times.  Abelian groups only; sets of size
    at most 1 report absent by convention.
    """
    if not group.abelian:
        raise ValueError("partial difference sets are defined here for abelian groups")
    ms = sorted(set(members))
    if len(ms) <= 1:
        return None
    n = group.order
    counts = [0] * n
    for a in ms:
        for b in ms:
            if a != b:
                counts[group.diff(a, b)] += 1
    inside = {counts[x] for x in ms if x != 0}
    outside = {counts[x] for x in range(1, n) if x not in set(ms)}
    if len(inside) > 1 or len(outside) > 1:
        return None
    lam = inside.pop() if inside else 0
    mu = outside.pop() if outside else 0
    return lam, mu


def m2_ell_bound_holds(n: int, ell: Fraction) -> bool:
    """Exact test of ell^2 >= 2/(n-1), the two-set lower bound on ell."""
    return Fraction(ell) ** 2 >= Fraction(2, n - 1)


def m2_ell_bound_tight(n: int, ell: Fraction) -> bool:
    return Fraction(ell) ** 2 == Fraction(2, n - 1)


@dataclass
class ClassificationReport:
    """Everything the verifier knows about one family."""

    n: int
    m: int
    sizes: Tuple[int, ...]
    trivial: bool
    edf: Optional[int]
    sedf: Optional[int]
    gsedf: Optional[Tuple[int, ...]]
    rwedf: Optional[Fraction]
    rwedf_witness: Optional[int]
    bimodal: BimodalVerdict
    e_hat: Fraction
    r_bound: Fraction
    r_optimal: bool
    param_identity_ok: bool
    ell_below_m: Optional[bool]
    m2_structure: str
    key_prop: Optional[Tuple[int, int]]
    wedf_weights: Optional[Tuple[Fraction, ...]] = None
    wedf: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        from .files import frac_str

        out = {
            "n": self.n,
            "m": self.m,
            "sizes": list(self.sizes),
            "trivial": self.trivial,
            "edf": self.edf,
            "sedf": self.sedf,
            "gsedf": list(self.gsedf) if self.gsedf is not None else None,
            "rwedf": frac_str(self.rwedf) if self.rwedf is not None else None,
            "rwedf_witness": self.rwedf_witness,
            "bimodal": self.bimodal.holds,
            "bimodal_witness": list(self.bimodal.witness) if self.bimodal.witness else None,
            "e_hat": frac_str(self.e_hat),
            "r_bound": frac_str(self.r_bound),
            "r_optimal": self.r_optimal,
            "param_identity_ok": self.param_identity_ok,
            "ell_below_m": self.ell_below_m,
            "m2_structure": self.m2_structure,
            "key_prop": list(self.key_prop) if self.key_prop is not None else None,
        }
        if self.wedf_weights is not None:
            out["wedf_weights"] = [frac_str(w) for w in self.wedf_weights]
            out["wedf"] = frac_str(self.wedf) if self.wedf is not None else None
        return out


def _is_trivial_shape(family: DisjointFamily) -> bool:
    # Degenerate shapes: any single set (ell = 0 vacuously, with the whole
    # group as the canonical case) and the partition into n singletons
    # (ell = n).  Only these may violate ell < m.
    if family.m == 1:
        return True
    return family.total == family.n and all(k == 1 for k in family.sizes)


def classify(
    family: DisjointFamily, weights: Optional[Sequence[Fraction]] = None
) -> ClassificationReport:
    """Run every checker once over a shared profile."""
    if family.n < 2:
        raise ValueError("classification needs a group of order at least 2")
    profile = difference_profile(family)
    m = family.m
    sizes = family.sizes

    if m == 1:
        edf = sedf = None
        gsedf = None
        rwedf: Optional[Fraction] = Fraction(0)
        witness = None
    else:
        edf = check_edf(profile)
        sedf = check_sedf(profile)
        gsedf = check_gsedf(profile)
        rwedf = check_rwedf(family, profile)
        witness = None if rwedf is not None else rwedf_failure_witness(family, profile)

    bimodal = is_bimodal(family, profile)
    ehat = e_hat(family, profile)
    bound = r_bound(family.n, m, family.total)
    trivial = _is_trivial_shape(family)

    param_ok = True
    ell_below_m: Optional[bool] = None
    if rwedf is not None:
        param_ok = (family.n - 1) * rwedf == (m - 1) * family.total
        ell_below_m = trivial or rwedf < m

    if m == 2 and rwedf is not None:
        m2 = "EDF" if sizes[0] == sizes[1] else "GSEDF"
    else:
        m2 = "not-applicable"

    key_prop: Optional[Tuple[int, int]] = None
    if bimodal.holds and m >= 1 and family.n > 1:
        nonzero = [sum(1 for row in profile.counts if row[d]) for d in range(family.n - 1)]
        if len(set(nonzero)) == 1:
            lam = nonzero[0]
            key_prop = (lam, m - lam)

    report = ClassificationReport(
        n=family.n,
        m=m,
        sizes=sizes,
        trivial=trivial,
        edf=edf,
        sedf=sedf,
        gsedf=gsedf,
        rwedf=rwedf,
        rwedf_witness=witness,
        bimodal=bimodal,
        e_hat=ehat,
        r_bound=bound,
        r_optimal=ehat == bound,
        param_identity_ok=param_ok,
        ell_below_m=ell_below_m,
        m2_structure=m2,
        key_prop=key_prop,
    )
    if weights is not None:
        report.wedf_weights = check_weights(m, weights)
        report.wedf = check_wedf(family, profile, weights)
    return report
