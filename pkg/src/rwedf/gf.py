"""Arithmetic in GF(p^a) with elements packed into indices 0..p^a-1.

An element with polynomial coordinates c_0 + c_1 x + ... + c_{a-1} x^{a-1}
gets the index sum c_i * p^i, so the additive structure coincides with the
elementary abelian group on the same indices.  The reducing modulus is the
lexicographically least irreducible monic of degree a (compared high
coefficient first, which is plain integer order on the packed index).
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from .errors import NotPrimePower
from .groups import is_prime


def prime_power_factor(q: int) -> Optional[Tuple[int, int]]:
    """(p, a) with q = p^a for prime p, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            a = 0
            while q % p == 0:
                q //= p
                a += 1
            return (p, a) if q == 1 else None
        p += 1
    return (q, 1)


def _poly_mulmod(u: List[int], v: List[int], modulus: List[int], p: int) -> List[int]:
    """Product of coefficient lists reduced by the monic modulus, over Z_p."""
    prod = [0] * (len(u) + len(v) - 1)
    for i, cu in enumerate(u):
        if cu:
            for j, cv in enumerate(v):
                prod[i + j] = (prod[i + j] + cu * cv) % p
    deg = len(modulus) - 1
    for top in range(len(prod) - 1, deg - 1, -1):
        c = prod[top]
        if c:
            prod[top] = 0
            for j in range(deg):
                prod[top - deg + j] = (prod[top - deg + j] - c * modulus[j]) % p
    out = prod[:deg]
    while len(out) < deg:
        out.append(0)
    return out


class FieldGF:
    """The finite field with p^a elements."""

    def __init__(self, p: int, a: int):
        if not is_prime(p):
            raise NotPrimePower(f"{p} is not prime")
        if a < 1:
            raise NotPrimePower(f"degree must be positive, got {a}")
        self.p = p
        self.a = a
        self.q = p**a
        self.modulus = self._least_irreducible()

    def _decode(self, x: int) -> List[int]:
        coeffs = []
        for _ in range(self.a):
            x, c = divmod(x, self.p)
            coeffs.append(c)
        return coeffs

    def _encode(self, coeffs: List[int]) -> int:
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + c % self.p
        return x

    def _is_irreducible(self, candidate: List[int]) -> bool:
        # Trial division by every lower-degree monic, degree 1..a//2.
        a = len(candidate) - 1
        for deg in range(1, a // 2 + 1):
            for enc in range(self.p**deg):
                divisor = self._decode_any(enc, deg) + [1]
                if self._poly_divides(divisor, candidate):
                    return False
        return True

    def _decode_any(self, x: int, length: int) -> List[int]:
        coeffs = []
        for _ in range(length):
            x, c = divmod(x, self.p)
            coeffs.append(c)
        return coeffs

    def _poly_divides(self, divisor: List[int], target: List[int]) -> bool:
        p = self.p
        rem = list(target)
        dd = len(divisor) - 1
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c:
                rem[top] = 0
                for j in range(dd):
                    rem[top - dd + j] = (rem[top - dd + j] - c * divisor[j]) % p
        return not any(rem[:dd])

    def _least_irreducible(self) -> List[int]:
        for enc in range(self.q):
            candidate = self._decode_any(enc, self.a) + [1]
            if self._is_irreducible(candidate):
                return candidate
        raise NotPrimePower(f"no irreducible monic of degree {self.a} over GF({self.p})")

    def add(self, x: int, y: int) -> int:
        p = self.p
        out = 0
        power = 1
        for _ in range(self.a):
            out += ((x + y) % p) * power
            x //= p
            y //= p
            power *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        out = 0
        power = 1
        for _ in range(self.a):
            out += (-x % p) * power
            x //= p
            power *= p
        return out

    def mul(self, x: int, y: int) -> int:
        return self._encode(_poly_mulmod(self._decode(x), self._decode(y), self.modulus, self.p))

    def pow(self, x: int, e: int) -> int:
        out, base = 1, x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.pow(x, self.q - 2)

    def units(self) -> range:
        return range(1, self.q)

    def squares(self) -> Tuple[int, ...]:
        return tuple(sorted({self.mul(x, x) for x in self.units()}))
