"""Finite groups on dense element indices 0..n-1 with the identity pinned at 0."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import GroupTooLarge, IdentityNotZero, NotAGroup

SUBGROUP_ORDER_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FiniteGroup:
    """Base class: subclasses define mul/inv arithmetic on indices.

    The identity is always index 0.  Composition is written multiplicatively;
    for the additive groups in this package mul is addition.
    """

    kind = "abstract"

    def __init__(self, order: int):
        if order < 1:
            raise NotAGroup(f"order must be positive, got {order}")
        self.order = order

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def diff(self, a: int, b: int) -> int:
        """Left difference a * b^-1; the one difference convention used throughout."""
        return self.mul(a, self.inv(b))

    @cached_property
    def abelian(self) -> bool:
        n = self.order
        mul = self.mul
        return all(mul(a, b) == mul(b, a) for a in range(n) for b in range(a + 1, n))

    @cached_property
    def inv_table(self) -> Tuple[int, ...]:
        return tuple(self.inv(a) for a in range(self.order))

    @cached_property
    def diff_rows(self) -> List[List[int]]:
        """diff_rows[a][b] == a * b^-1, built lazily for hot loops."""
        inv = self.inv_table
        mul = self.mul
        return [[mul(a, inv[b]) for b in range(self.order)] for a in range(self.order)]

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def describe(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"


class CyclicGroup(FiniteGroup):
    """Integers mod n under addition."""

    kind = "cyclic"

    def __init__(self, n: int):
        super().__init__(n)
        self.n = n

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def inv(self, a: int) -> int:
        return (-a) % self.n

    @cached_property
    def abelian(self) -> bool:
        return True

    def describe(self) -> dict:
        return {"kind": "cyclic", "n": self.n}


class DirectProductGroup(FiniteGroup):
    """Pairs (a, b) composed componentwise, encoded as a * |H| + b."""

    kind = "product"

    def __init__(self, g: FiniteGroup, h: FiniteGroup):
        super().__init__(g.order * h.order)
        self.g = g
        self.h = h

    def _encode(self, a: int, b: int) -> int:
        return a * self.h.order + b

    def _decode(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.h.order)

    def mul(self, x: int, y: int) -> int:
        xa, xb = self._decode(x)
        ya, yb = self._decode(y)
        return self._encode(self.g.mul(xa, ya), self.h.mul(xb, yb))

    def inv(self, x: int) -> int:
        a, b = self._decode(x)
        return self._encode(self.g.inv(a), self.h.inv(b))

    @cached_property
    def abelian(self) -> bool:
        return self.g.abelian and self.h.abelian

    def describe(self) -> dict:
        return {"kind": "product", "factors": [self.g.describe(), self.h.describe()]}


class ElementaryAbelianGroup(FiniteGroup):
    """Z_p^e with componentwise addition; index digits base p, coordinate 0 major."""

    kind = "elementary_abelian"

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise NotAGroup(f"{p} is not prime")
        if e < 1:
            raise NotAGroup(f"exponent must be positive, got {e}")
        super().__init__(p**e)
        self.p = p
        self.e = e

    def to_vector(self, x: int) -> Tuple[int, ...]:
        digits = []
        for _ in range(self.e):
            x, d = divmod(x, self.p)
            digits.append(d)
        return tuple(reversed(digits))

    def from_vector(self, vec: Sequence[int]) -> int:
        x = 0
        for d in vec:
            x = x * self.p + d % self.p
        return x

    def mul(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        power = 1
        for _ in range(self.e):
            out += ((a + b) % p) * power
            a //= p
            b //= p
            power *= p
        return out

    def inv(self, a: int) -> int:
        p = self.p
        out = 0
        power = 1
        for _ in range(self.e):
            out += (-a % p) * power
            a //= p
            power *= p
        return out

    @cached_property
    def abelian(self) -> bool:
        return True

    def describe(self) -> dict:
        return {"kind": "elementary_abelian", "p": self.p, "e": self.e}


class DihedralGroup(FiniteGroup):
    """Dihedral group of order 2n: rotations x^r and reflections y x^r.

    Index encodes (reflection bit s, rotation exponent r) as s*n + r, so the
    identity x^0 is 0.  Relations: x^n = y^2 = 1 and x y = y x^-1.
    """

    kind = "dihedral"

    def __init__(self, n: int):
        if n < 1:
            raise NotAGroup(f"rotation order must be positive, got {n}")
        super().__init__(2 * n)
        self.n = n

    def _decode(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.n)

    def mul(self, a: int, b: int) -> int:
        n = self.n
        s, r = divmod(a, n)
        t, u = divmod(b, n)
        if t:
            return (s ^ t) * n + (u - r) % n
        return s * n + (r + u) % n

    def inv(self, a: int) -> int:
        n = self.n
        s, r = divmod(a, n)
        if s:
            return a
        return (-r) % n

    @cached_property
    def abelian(self) -> bool:
        return self.n <= 2

    def describe(self) -> dict:
        return {"kind": "dihedral", "n": self.n}


class HeisenbergGroup(FiniteGroup):
    """Upper unitriangular 3x3 matrices over Z_p, encoded as triples (a, b, c).

    (a, b, c) stands for the matrix with a top-middle, b top-right, c middle-right;
    index is a*p^2 + b*p + c.  For odd p every non-identity element has order p.
    """

    kind = "heisenberg"

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotAGroup(f"{p} is not prime")
        super().__init__(p**3)
        self.p = p

    def to_triple(self, x: int) -> Tuple[int, int, int]:
        x, c = divmod(x, self.p)
        a, b = divmod(x, self.p)
        return a, b, c

    def from_triple(self, a: int, b: int, c: int) -> int:
        p = self.p
        return (a % p) * p * p + (b % p) * p + (c % p)

    def mul(self, x: int, y: int) -> int:
        p = self.p
        a, b, c = self.to_triple(x)
        d, e, f = self.to_triple(y)
        return self.from_triple(a + d, b + e + a * f, c + f)

    def inv(self, x: int) -> int:
        a, b, c = self.to_triple(x)
        return self.from_triple(-a, a * c - b, -c)

    @cached_property
    def abelian(self) -> bool:
        return False

    def describe(self) -> dict:
        return {"kind": "heisenberg", "p": self.p}


class CayleyTableGroup(FiniteGroup):
    """Group given by an explicit n x n composition table, validated on construction."""

    kind = "cayley_table"

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        super().__init__(n)
        rows = [tuple(row) for row in table]
        for i, row in enumerate(rows):
            if len(row) != n:
                raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise NotAGroup(f"entry {v} in row {i} out of range")
        self.table = rows
        self._validate()
        self._inv = self._build_inverses()

    def _validate(self) -> None:
        import numpy as np

        n = self.order
        t = np.array(self.table, dtype=np.int64)
        # Latin square: each row and column a permutation.
        ref = np.arange(n)
        if not (np.all(np.sort(t, axis=1) == ref) and np.all(np.sort(t, axis=0) == ref[:, None])):
            raise NotAGroup("table rows/columns are not permutations")
        if not (np.array_equal(t[0], ref) and np.array_equal(t[:, 0], ref)):
            raise IdentityNotZero("index 0 does not act as the identity")
        # Associativity, one slice of c at a time to keep memory flat.
        for c in range(n):
            if not np.array_equal(t[t, c], t[:, t[:, c]]):
                raise NotAGroup(f"associativity fails against element {c}")

    def _build_inverses(self) -> Tuple[int, ...]:
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        return tuple(inv)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def describe(self) -> dict:
        return {"kind": "cayley_table", "table": [list(r) for r in self.table]}


def group_from_descriptor(desc: dict) -> FiniteGroup:
    """Rebuild a group from its JSON descriptor."""
    kind = desc.get("kind")
    if kind == "cyclic":
        return CyclicGroup(desc["n"])
    if kind == "product":
        factors = [group_from_descriptor(d) for d in desc["factors"]]
        if len(factors) < 2:
            raise NotAGroup("product descriptor needs at least two factors")
        g = factors[0]
        for h in factors[1:]:
            g = DirectProductGroup(g, h)
        return g
    if kind == "elementary_abelian":
        return ElementaryAbelianGroup(desc["p"], desc["e"])
    if kind == "dihedral":
        return DihedralGroup(desc["n"])
    if kind == "heisenberg":
        return HeisenbergGroup(desc["p"])
    if kind == "cayley_table":
        return CayleyTableGroup(desc["table"])
    raise NotAGroup(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as its sorted carrier plus the generators that produced it."""

    group: FiniteGroup = field(compare=False)
    carrier: Tuple[int, ...]
    generators: Tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.carrier)

    @property
    def mask(self) -> int:
        m = 0
        for x in self.carrier:
            m |= 1 << x
        return m

    def star(self) -> Tuple[int, ...]:
        """The carrier with the identity removed."""
        return tuple(x for x in self.carrier if x != 0)

    def __contains__(self, x: int) -> bool:
        return x in set(self.carrier)


def closure(group: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the generators (BFS over right multiplication)."""
    gens = sorted(set(generators))
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"generator {g} out of range for order {group.order}")
    seen = {0}
    queue = [0]
    while queue:
        x = queue.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(group, tuple(sorted(seen)), tuple(gens))


def _carrier_of(group: FiniteGroup, subgroup) -> Tuple[int, ...]:
    if isinstance(subgroup, Subgroup):
        return subgroup.carrier
    members = tuple(sorted(set(subgroup)))
    if 0 not in members:
        raise ValueError("subgroup carrier must contain the identity 0")
    mset = set(members)
    for a in members:
        for b in members:
            if group.mul(a, b) not in mset:
                raise ValueError("carrier is not closed under composition")
    return members


def left_cosets(group: FiniteGroup, subgroup) -> List[Tuple[int, ...]]:
    """Left cosets g*H, the coset of the identity first, the rest by least member."""
    carrier = _carrier_of(group, subgroup)
    seen = [False] * group.order
    cosets = []
    for x in range(group.order):
        if seen[x]:
            continue
        coset = sorted(group.mul(x, h) for h in carrier)
        for y in coset:
            seen[y] = True
        cosets.append(tuple(coset))
    return cosets


def enumerate_subgroups(group: FiniteGroup, limit: int = SUBGROUP_ORDER_LIMIT) -> List[Subgroup]:
    """All subgroups, found by closing each known subgroup with one more element.

    Sorted by order, then lexicographically on the carrier.  Guarded by a group
    order limit: beyond it the subgroup lattice can explode combinatorially.
    """
    if group.order > limit:
        raise GroupTooLarge(f"order {group.order} exceeds subgroup enumeration limit {limit}")
    trivial = Subgroup(group, (0,), ())
    found = {(0,): trivial}
    frontier = [trivial]
    while frontier:
        fresh = []
        for sub in frontier:
            carrier_set = set(sub.carrier)
            for g in range(1, group.order):
                if g in carrier_set:
                    continue
                bigger = closure(group, set(sub.generators) | {g})
                if bigger.carrier not in found:
                    found[bigger.carrier] = bigger
                    fresh.append(bigger)
        frontier = fresh
    return sorted(found.values(), key=lambda s: (s.order, s.carrier))
