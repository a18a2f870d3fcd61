"""Exhaustive search for families with required classifications.

Canonical generation: sets are filled in size order (largest first), each set's
members ascend, and among runs of equal-sized sets the least members (anchors)
increase.  Every unordered family of the requested sizes is therefore visited
exactly once.  Pruning never drops a branch that could still complete into a
family passing the final classification filter; the naive generate-and-test
path below is the oracle for that claim.
"""
from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import List, Optional, Tuple

from .classify import check_wedf, classify
from .errors import BudgetExceeded, GroupTooLarge, InfeasibleParameters
from .family import DisjointFamily, check_weights, difference_profile, scaled_weights
from .groups import FiniteGroup, Subgroup, closure, enumerate_subgroups

KNOWN_FLAGS = frozenset(
    {"rwedf", "bimodal", "edf", "sedf", "gsedf", "wedf", "star_partition"}
)
STAR_PARTITION_ORDER_LIMIT = 128


@dataclass(frozen=True)
class SearchSpec:
    group: FiniteGroup
    sizes: Tuple[int, ...]
    require: frozenset = frozenset()
    weights: Optional[Tuple[Fraction, ...]] = None
    target_ell: Optional[Fraction] = None
    dedup: str = "none"  # "none" | "translation"
    node_budget: int = 10**8
    result_cap: Optional[int] = None


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0
    complete: bool = True


@dataclass
class SearchResult:
    families: List[DisjointFamily]
    stats: SearchStats


class _StopSearch(Exception):
    pass


def _validate_spec(spec: SearchSpec) -> Tuple[Tuple[int, ...], Optional[Fraction]]:
    sizes = tuple(spec.sizes)
    if not sizes or any(k < 1 for k in sizes):
        raise InfeasibleParameters(f"sizes must be positive, got {sizes}")
    if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
        raise InfeasibleParameters("sizes must be non-increasing (canonical order)")
    n = spec.group.order
    total = sum(sizes)
    if total > n:
        raise InfeasibleParameters(f"total size {total} exceeds group order {n}")
    unknown = set(spec.require) - KNOWN_FLAGS
    if unknown:
        raise InfeasibleParameters(f"unknown requirement flags {sorted(unknown)}")
    if "wedf" in spec.require:
        if spec.weights is None:
            raise InfeasibleParameters("the wedf flag needs a weight vector")
        check_weights(len(sizes), spec.weights)
    ell = spec.target_ell
    if ell is not None:
        ell = Fraction(ell)
        if n < 2 or (n - 1) * ell != (len(sizes) - 1) * total:
            raise InfeasibleParameters(
                f"(n-1)*ell = {(n - 1) * ell} but (m-1)*T = {(len(sizes) - 1) * total}"
            )
    return sizes, ell


def _require_rwedf(spec: SearchSpec) -> bool:
    return "rwedf" in spec.require or spec.target_ell is not None


@dataclass
class _Caps:
    cell: Tuple[int, ...]  # per-set upper bound on one count
    col: Optional[int]  # bound on plain column sums (edf)
    scaled: Optional[Tuple[Tuple[int, ...], int]]  # (coefficients, bound) reciprocal
    wscaled: Optional[Tuple[Tuple[int, ...], int]]  # same for explicit weights
    feasible: bool = True


def _build_caps(spec: SearchSpec, sizes: Tuple[int, ...]) -> _Caps:
    n = spec.group.order
    m = len(sizes)
    total = sum(sizes)
    cell = []
    for k in sizes:
        bound = min(k, total - k)
        if "sedf" in spec.require or "gsedf" in spec.require:
            # each row must be constant: k*(T-k) spread over n-1 columns
            num = k * (total - k)
            if num % (n - 1):
                return _Caps((), None, None, None, feasible=False)
            bound = min(bound, num // (n - 1))
        cell.append(bound)
    col = None
    if "edf" in spec.require:
        if len(set(sizes)) != 1 or m < 2:
            return _Caps((), None, None, None, feasible=False)
        num = sum(k * (total - k) for k in sizes)
        if num % (n - 1):
            return _Caps((), None, None, None, feasible=False)
        col = num // (n - 1)
    if "sedf" in spec.require and (len(set(sizes)) != 1 or m < 2):
        return _Caps((), None, None, None, feasible=False)
    if "gsedf" in spec.require and m < 2:
        return _Caps((), None, None, None, feasible=False)
    scaled = None
    if _require_rwedf(spec):
        k_lcm, coef = scaled_weights(sizes)
        target = Fraction((m - 1) * total * k_lcm, n - 1)
        if target.denominator != 1:
            return _Caps((), None, None, None, feasible=False)
        scaled = (coef, int(target))
    wscaled = None
    if "wedf" in spec.require and spec.weights is not None:
        ws = [Fraction(w) for w in spec.weights]
        denom = lcm(*(w.denominator for w in ws)) if ws else 1
        coef_w = tuple(int(w * denom) for w in ws)
        target_w = Fraction(sum(c * k * (total - k) for c, k in zip(coef_w, sizes)), n - 1)
        if target_w.denominator != 1:
            return _Caps((), None, None, None, feasible=False)
        wscaled = (coef_w, int(target_w))
    return _Caps(tuple(cell), col, scaled, wscaled)


def _passes_require(family: DisjointFamily, spec: SearchSpec, ell: Optional[Fraction]) -> bool:
    req = spec.require
    if not req and ell is None:
        return True
    if "star_partition" in req and not _is_star_partition(family):
        return False
    heavy = req & {"rwedf", "bimodal", "edf", "sedf", "gsedf", "wedf"}
    if not heavy and ell is None:
        return True
    report = classify(family)
    if _require_rwedf(spec):
        if report.rwedf is None:
            return False
        if ell is not None and report.rwedf != ell:
            return False
    if "bimodal" in req and not report.bimodal.holds:
        return False
    if "edf" in req and report.edf is None:
        return False
    if "sedf" in req and report.sedf is None:
        return False
    if "gsedf" in req and report.gsedf is None:
        return False
    if "wedf" in req:
        profile = difference_profile(family)
        if check_wedf(family, profile, spec.weights) is None:
            return False
    return True


def _is_star_partition(family: DisjointFamily) -> bool:
    if not family.is_partition_of_nonidentity():
        return False
    g = family.group
    for members in family.sets:
        carrier = set(members) | {0}
        for a in carrier:
            for b in carrier:
                if g.mul(a, b) not in carrier:
                    return False
    return True


class _Searcher:
    def __init__(self, spec: SearchSpec, sizes: Tuple[int, ...], ell: Optional[Fraction],
                 caps: _Caps, budget_cell: List[int]):
        g = spec.group
        self.spec = spec
        self.sizes = sizes
        self.ell = ell
        self.caps = caps
        self.group = g
        self.n = g.order
        self.m = len(sizes)
        self.diff = g.diff_rows
        self.budget = budget_cell  # [remaining]; shared across workers
        self.stats = SearchStats()
        self.results: List[DisjointFamily] = []
        # mutable search state
        self.slots: List[List[int]] = [[] for _ in sizes]
        self.owner = [-1] * self.n
        self.placed: List[int] = []
        self.counts = [0] * (self.m * self.n)
        self.colsum = [0] * self.n
        self.ssum = [0] * self.n
        self.wsum = [0] * self.n
        self.banned = 0
        self.coset_cut = "bimodal" in spec.require and g.abelian
        self.star_cut = "star_partition" in spec.require

    def run(self, anchor_filter=None) -> None:
        try:
            self._fill_set(0, anchor_filter)
        except _StopSearch:
            self.stats.complete = False

    # -- incremental counting ------------------------------------------------

    def _apply(self, x: int, i: int, sign: int) -> bool:
        """Add (sign=+1) or remove (sign=-1) element x of set i; check caps on add."""
        diff = self.diff
        diff_x = diff[x]
        counts = self.counts
        colsum = self.colsum
        owner = self.owner
        caps = self.caps
        n = self.n
        base_i = i * n
        cell = caps.cell
        cell_i = cell[i]
        col = caps.col
        adding = sign > 0
        ok = True
        if caps.scaled is None and caps.wscaled is None:
            # hot path: free and bimodal searches carry no scaled caps
            for y in self.placed:
                j = owner[y]
                if j == i:
                    continue
                d1 = diff_x[y]
                d2 = diff[y][x]
                counts[base_i + d1] += sign
                counts[j * n + d2] += sign
                colsum[d1] += sign
                colsum[d2] += sign
                if adding and ok:
                    if counts[base_i + d1] > cell_i or counts[j * n + d2] > cell[j]:
                        ok = False
                    elif col is not None and (colsum[d1] > col or colsum[d2] > col):
                        ok = False
            return ok
        ssum = self.ssum
        wsum = self.wsum
        coef = caps.scaled[0] if caps.scaled else None
        slim = caps.scaled[1] if caps.scaled else None
        wcoef = caps.wscaled[0] if caps.wscaled else None
        wlim = caps.wscaled[1] if caps.wscaled else None
        coef_i = coef[i] if coef is not None else 0
        wcoef_i = wcoef[i] if wcoef is not None else 0
        for y in self.placed:
            j = owner[y]
            if j == i:
                continue
            d1 = diff_x[y]
            d2 = diff[y][x]
            counts[base_i + d1] += sign
            counts[j * n + d2] += sign
            colsum[d1] += sign
            colsum[d2] += sign
            if coef is not None:
                ssum[d1] += sign * coef_i
                ssum[d2] += sign * coef[j]
            if wcoef is not None:
                wsum[d1] += sign * wcoef_i
                wsum[d2] += sign * wcoef[j]
            if adding and ok:
                if counts[base_i + d1] > cell_i or counts[j * n + d2] > cell[j]:
                    ok = False
                elif col is not None and (colsum[d1] > col or colsum[d2] > col):
                    ok = False
                elif coef is not None and (ssum[d1] > slim or ssum[d2] > slim):
                    ok = False
                elif wcoef is not None and (wsum[d1] > wlim or wsum[d2] > wlim):
                    ok = False
        return ok

    # -- completed-set cuts --------------------------------------------------

    def _set_completion_ban(self, i: int) -> Optional[int]:
        """Extra forbidden elements once set i is full, or None to cut the branch."""
        members = self.slots[i]
        extra = 0
        if self.star_cut:
            carrier = set(members) | {0}
            g = self.group
            for a in carrier:
                for b in carrier:
                    if g.mul(a, b) not in carrier:
                        return None
        if self.coset_cut and len(members) >= 2:
            g = self.group
            diffs = {g.diff(a, b) for a in members for b in members if a != b}
            sub = closure(g, diffs)
            a0 = members[0]
            coset = {g.mul(h, a0) for h in sub.carrier}
            inside = set(members)
            for y in coset:
                if y in inside:
                    continue
                if self.owner[y] >= 0:
                    return None  # an earlier set intrudes on this coset
                extra |= 1 << y
        return extra

    # -- recursion -----------------------------------------------------------

    def _fill_set(self, i: int, anchor_filter=None) -> None:
        if i == self.m:
            self._emit()
            return
        size = self.sizes[i]
        lo = 0
        if i > 0 and self.sizes[i - 1] == size:
            lo = self.slots[i - 1][0] + 1
        self._extend_set(i, size, lo, anchor_filter)

    def _extend_set(self, i: int, remaining: int, lo: int, anchor_filter=None) -> None:
        if remaining == 0:
            extra = self._set_completion_ban(i)
            if extra is None:
                self.stats.pruned += 1
                return
            saved = self.banned
            self.banned |= extra
            self._fill_set(i + 1)
            self.banned = saved
            return
        slot = self.slots[i]
        is_anchor = not slot
        for x in range(lo, self.n - remaining + 1):
            if self.owner[x] >= 0 or self.banned >> x & 1:
                continue
            if is_anchor and anchor_filter is not None and not anchor_filter(x):
                continue
            if self.budget[0] <= 0:
                self.stats.complete = False
                raise BudgetExceeded(
                    "node budget exhausted", families=self.results, stats=self.stats
                )
            self.budget[0] -= 1
            self.stats.nodes += 1
            ok = self._apply(x, i, +1)
            if ok:
                self.owner[x] = i
                self.placed.append(x)
                slot.append(x)
                self._extend_set(i, remaining - 1, x + 1, None)
                slot.pop()
                self.placed.pop()
                self.owner[x] = -1
            else:
                self.stats.pruned += 1
            self._apply(x, i, -1)

    def _emit(self) -> None:
        family = DisjointFamily(self.group, tuple(tuple(s) for s in self.slots))
        if _passes_require(family, self.spec, self.ell):
            self.results.append(family)
            cap = self.spec.result_cap
            if cap is not None and len(self.results) >= cap:
                raise _StopSearch


def _flat_key(family: DisjointFamily) -> Tuple[int, ...]:
    return tuple(x for s in family.sets for x in s)


def _translation_classes(families: List[DisjointFamily]) -> List[DisjointFamily]:
    """Keep one canonical representative (least canonical key) per orbit."""
    out = []
    for fam in families:
        key = fam.canonical_key()
        least = min(fam.translate(g).canonical_key() for g in fam.group.elements())
        if key == least:
            out.append(fam)
    return out


def enumerate_families(spec: SearchSpec, workers: int = 1) -> SearchResult:
    """All families of the given sizes whose classification meets every flag."""
    sizes, ell = _validate_spec(spec)
    if ell is None and _require_rwedf(spec):
        m, total, n = len(sizes), sum(sizes), spec.group.order
        ell = Fraction((m - 1) * total, n - 1)
    caps = _build_caps(spec, sizes)
    stats = SearchStats()
    if not caps.feasible:
        stats.pruned = 1
        return SearchResult([], stats)
    budget = [spec.node_budget]
    if workers <= 1:
        searcher = _Searcher(spec, sizes, ell, caps, budget)
        searcher.run()
        families, stats = searcher.results, searcher.stats
    else:
        anchors = list(range(spec.group.order))
        shards = [anchors[w::workers] for w in range(workers)]

        def _work(shard: List[int]):
            s = _Searcher(spec, sizes, ell, caps, budget)
            member = set(shard)
            s.run(anchor_filter=member.__contains__)
            return s.results, s.stats

        families = []
        stats = SearchStats()
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            for part, pstats in pool.map(_work, shards):
                families.extend(part)
                stats.nodes += pstats.nodes
                stats.pruned += pstats.pruned
                stats.complete = stats.complete and pstats.complete
    if spec.dedup == "translation":
        families = _translation_classes(families)
    elif spec.dedup != "none":
        raise InfeasibleParameters(f"unknown dedup mode {spec.dedup!r}")
    families.sort(key=_flat_key)
    return SearchResult(families, stats)


def naive_enumerate(spec: SearchSpec) -> SearchResult:
    """Generate-and-test oracle: same canonical order, no pruning at all."""
    sizes, ell = _validate_spec(spec)
    if ell is None and _require_rwedf(spec):
        m, total, n = len(sizes), sum(sizes), spec.group.order
        ell = Fraction((m - 1) * total, n - 1)
    g = spec.group
    n = g.order
    stats = SearchStats()
    results: List[DisjointFamily] = []
    slots: List[Tuple[int, ...]] = []

    def rec(i: int, used: int) -> None:
        if i == len(sizes):
            stats.nodes += 1
            family = DisjointFamily(g, tuple(slots))
            if _passes_require(family, spec, ell):
                results.append(family)
            return
        lo = 0
        if i > 0 and sizes[i - 1] == sizes[i]:
            lo = slots[i - 1][0] + 1
        pool = [x for x in range(lo, n) if not used >> x & 1]
        for combo in combinations(pool, sizes[i]):
            mask = 0
            for x in combo:
                mask |= 1 << x
            slots.append(combo)
            rec(i + 1, used | mask)
            slots.pop()

    rec(0, 0)
    if spec.dedup == "translation":
        results = _translation_classes(results)
    results.sort(key=_flat_key)
    return SearchResult(results, stats)


def enumerate_star_partitions(
    group: FiniteGroup, limit: int = STAR_PARTITION_ORDER_LIMIT
) -> List[List[Subgroup]]:
    """All ways to partition the non-identity elements into subgroup stars.

    Exact cover over the stars of the non-trivial subgroups; the whole group
    always provides the one-part cover.  Results are sorted by part count then
    carrier tuples, each cover's subgroups by carrier.
    """
    if group.order > limit:
        raise GroupTooLarge(f"order {group.order} exceeds star partition limit {limit}")
    subs = [s for s in enumerate_subgroups(group) if s.order > 1]
    full = (1 << group.order) - 2  # non-identity elements
    star_masks = []
    for s in subs:
        mask = 0
        for x in s.star():
            mask |= 1 << x
        star_masks.append(mask)
    covers: List[List[Subgroup]] = []
    chosen: List[Subgroup] = []

    def rec(uncovered: int) -> None:
        if not uncovered:
            covers.append(sorted(chosen, key=lambda s: s.carrier))
            return
        least = (uncovered & -uncovered).bit_length() - 1
        for s, mask in zip(subs, star_masks):
            if mask >> least & 1 and not (mask & ~uncovered):
                chosen.append(s)
                rec(uncovered & ~mask)
                chosen.pop()

    rec(full)
    covers.sort(key=lambda c: (len(c), tuple(s.carrier for s in c)))
    return covers


@dataclass
class CensusStats:
    families: int = 0
    rwedf: int = 0
    violations: int = 0
    cross_checked: int = 0
    cross_failures: int = 0


def rwedf_census(group: FiniteGroup, cross_check_every: int = 0) -> CensusStats:
    """Sweep every family over the group (every support, every set partition).

    For each family it evaluates, in exact integer arithmetic, whether the
    reciprocally weighted column sums are constant and whether the worst-case
    rate meets the averaging bound, counting any family where the two verdicts
    disagree.  With cross_check_every = s > 0, every s-th family is re-checked
    through the classify pipeline.
    """
    n = group.order
    diff = group.diff_rows
    stats = CensusStats()
    blocks: List[List[int]] = []
    counts = [0] * (n * n)  # row b at offset b*n
    owner = [-1] * n
    placed: List[int] = []

    def leaf() -> None:
        if not blocks:
            return
        stats.families += 1
        sizes = [len(b) for b in blocks]
        m = len(sizes)
        total = sum(sizes)
        k_lcm = sizes[0] if m == 1 else lcm(*sizes)
        coef = [k_lcm // k for k in sizes]
        constant = True
        best = 0
        first = None
        for d in range(1, n):
            s = 0
            for b in range(m):
                c = counts[b * n + d]
                if c:
                    s += coef[b] * c
            if first is None:
                first = s
            elif s != first:
                constant = False
            if s > best:
                best = s
        meets_bound = best * (n - 1) == k_lcm * (m - 1) * total
        if constant != meets_bound:
            stats.violations += 1
        if constant:
            stats.rwedf += 1
        if cross_check_every and n > 1 and stats.families % cross_check_every == 0:
            stats.cross_checked += 1
            fam = DisjointFamily(group, tuple(tuple(sorted(b)) for b in blocks))
            report = classify(fam)
            lib_rwedf = report.rwedf is not None
            lib_bound = report.e_hat == report.r_bound
            expected = Fraction(first, k_lcm) if constant else None
            if (
                lib_rwedf != constant
                or lib_bound != meets_bound
                or (constant and report.rwedf != expected)
                or report.e_hat != Fraction(best, k_lcm * m)
            ):
                stats.cross_failures += 1

    def place(x: int, b: int, sign: int) -> None:
        dx = diff[x]
        for y in placed:
            j = owner[y]
            if j != b:
                counts[b * n + dx[y]] += sign
                counts[j * n + diff[y][x]] += sign

    def rec(x: int) -> None:
        if x == n:
            leaf()
            return
        # skip x entirely
        rec(x + 1)
        # put x into an existing block, or open a new one
        open_blocks = len(blocks)
        for b in range(open_blocks + 1):
            if b == open_blocks:
                blocks.append([])
            place(x, b, +1)
            owner[x] = b
            placed.append(x)
            blocks[b].append(x)
            rec(x + 1)
            blocks[b].pop()
            placed.pop()
            owner[x] = -1
            place(x, b, -1)
            if b == open_blocks:
                blocks.pop()

    rec(0)
    return stats
