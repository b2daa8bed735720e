"""Arithmetic in the perfect field GF(2^k), 1 <= k <= 16.

Field elements are plain ints in [0, 2^k): the bits encode a polynomial
over GF(2) reduced modulo a fixed irreducible of degree k.  Addition is
xor; 0 and 1 are the additive and multiplicative identities.  The field
object carries k and the modulus and supplies mul/inv/sqrt.

The modulus is the lexicographically least irreducible of degree k
(i.e. the smallest integer >= 2^k whose bit pattern is irreducible), so
results are reproducible bit for bit.  For k = 2 this is t^2 + t + 1.
"""

from __future__ import annotations

from functools import lru_cache

MAX_K = 16


def _poly_mod(a: int, m: int) -> int:
    """Reduce the GF(2)[t] polynomial a modulo m (both as bit masks)."""
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _poly_mulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == m.bit_length():
            a ^= m
    return r


def _poly_gcd(a: int, b: int) -> int:
    while b:
        if a.bit_length() < b.bit_length():
            a, b = b, a
        else:
            a, b = b, _poly_mod(a, b)
    return a


def _is_irreducible(p: int) -> bool:
    k = p.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    # x^(2^k) == x mod p, and gcd(x^(2^(k/q)) - x, p) == 1 for prime q | k
    x = 2
    t = x
    for _ in range(k):
        t = _poly_mulmod(t, t, p)
    if t != x:
        return False
    for q in _prime_factors(k):
        t = x
        for _ in range(k // q):
            t = _poly_mulmod(t, t, p)
        if _poly_gcd(t ^ x, p) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def default_modulus(k: int) -> int:
    """Smallest irreducible of degree k, as a bit mask."""
    for p in range(1 << k, 1 << (k + 1)):
        if _is_irreducible(p):
            return p
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field GF(2^k) with a fixed irreducible modulus."""

    __slots__ = ("k", "modulus", "order")

    def __init__(self, k: int, modulus: int | None = None):
        if not 1 <= k <= MAX_K:
            raise ValueError(f"field exponent k must be in [1, {MAX_K}], got {k}")
        self.k = k
        self.modulus = default_modulus(k) if modulus is None else modulus
        if self.modulus.bit_length() - 1 != k or not _is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is not irreducible of degree {k}")
        self.order = 1 << k

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        m = self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a.bit_length() == m.bit_length():
                a ^= m
        return r

    def pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in GF(2^k)")
        # a^(2^k - 2) = a^(-1)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int) -> int:
        """The Frobenius a -> a^2 (a bijection: the field is perfect)."""
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        """The unique square root, a^(2^(k-1))."""
        for _ in range(self.k - 1):
            a = self.mul(a, a)
        return a

    def iter_sqrt(self, a: int, times: int) -> int:
        """a^(1/2^times): repeated Frobenius roots."""
        for _ in range(times):
            a = self.sqrt(a)
        return a

    # -- misc ------------------------------------------------------------

    def elements(self):
        return range(self.order)

    def descriptor(self) -> dict:
        return {"k": self.k, "irreducible_bits": self.modulus}

    def __eq__(self, other):
        return isinstance(other, GF) and (self.k, self.modulus) == (other.k, other.modulus)

    def __hash__(self):
        return hash((self.k, self.modulus))

    def __repr__(self):
        return f"GF(2^{self.k}, mod={self.modulus:#b})"


GF2 = GF(1)


def field_arith(field: GF, a: int, b: int, which: str) -> int:
    """Dispatch helper mirroring the wire-level operation names."""
    if which == "add":
        return field.add(a, b)
    if which == "mul":
        return field.mul(a, b)
    if which == "inv":
        return field.inv(a)
    if which == "frob":
        return field.frob(a)
    raise ValueError(f"unknown field operation {which!r}")
