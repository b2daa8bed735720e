"""The truncated divided-power algebra O(n, m) over GF(2^k).

Monomials x^(alpha) are exponent tuples with alpha_i <= 2^(m_i) - 1,
where m = (m_1..m_n) are the variable heights.  The product rule is

    x^(alpha) * x^(beta) = prod_i C(alpha_i + beta_i, alpha_i) x^(alpha+beta)

and over characteristic 2 the binomial is odd exactly when the binary
addition alpha_i + beta_i is carry-free (Lucas), in which case the sum
is automatically in range.

"Top power" monomials x_i^(2^(m_i)) (used by the extended algebra that
adjoins them) are representable but refuse multiplication; only their
partial derivatives are ever taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

from .gfield import GF

MAX_N = 6

Monomial = tuple
Heights = tuple


class UndefinedDividedPower(ValueError):
    """Raised when an odd-coefficient term escapes the height truncation."""


def validate_heights(h: Heights) -> Heights:
    h = tuple(int(m) for m in h)
    if not 1 <= len(h) <= MAX_N:
        raise ValueError(f"need 1..{MAX_N} variables, got {len(h)}")
    if any(m < 1 for m in h):
        raise ValueError(f"heights must be >= 1, got {h}")
    return h


def mono_degree(alpha: Monomial) -> int:
    return sum(alpha)


def mono_is_top(alpha: Monomial, h: Heights) -> bool:
    return any(a == 1 << m for a, m in zip(alpha, h))


def mono_in_range(alpha: Monomial, h: Heights, allow_top: bool = False) -> bool:
    if len(alpha) != len(h) or any(a < 0 for a in alpha):
        return False
    if all(a <= (1 << m) - 1 for a, m in zip(alpha, h)):
        return True
    if not allow_top:
        return False
    # a pure top power: exactly x_i^(2^(m_i)) for a single i
    nz = [(i, a) for i, a in enumerate(alpha) if a]
    return len(nz) == 1 and nz[0][1] == 1 << h[nz[0][0]]


def mono_mul(a: Monomial, b: Monomial, h: Heights):
    """Product of basis monomials: (parity, alpha+beta) with parity in {0,1}."""
    if mono_is_top(a, h) or mono_is_top(b, h):
        raise ValueError("top-power monomials do not multiply")
    if any(x & y for x, y in zip(a, b)):
        return 0, None
    return 1, tuple(x + y for x, y in zip(a, b))


def iter_monomials(h: Heights, min_degree: int = 0) -> Iterator[Monomial]:
    """All in-range monomials with total degree >= min_degree."""
    ranges = [range(1 << m) for m in h]

    def rec(i, prefix):
        if i == len(h):
            if sum(prefix) >= min_degree:
                yield tuple(prefix)
            return
        for a in ranges[i]:
            yield from rec(i + 1, prefix + [a])

    yield from rec(0, [])


@dataclass(frozen=True)
class Poly:
    """Sparse divided-power polynomial: monomial -> nonzero coefficient."""

    field: GF
    heights: Heights
    terms: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "heights", validate_heights(self.heights))
        clean = {}
        for alpha, c in self.terms.items():
            alpha = tuple(alpha)
            if c == 0:
                continue
            if not mono_in_range(alpha, self.heights, allow_top=True):
                raise ValueError(f"monomial {alpha} out of range for heights {self.heights}")
            clean[alpha] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(field: GF, h: Heights) -> "Poly":
        return Poly(field, h, {})

    @staticmethod
    def one(field: GF, h: Heights) -> "Poly":
        return Poly(field, h, {tuple([0] * len(h)): 1})

    @staticmethod
    def monomial(field: GF, h: Heights, alpha: Monomial, coeff: int = 1) -> "Poly":
        return Poly(field, h, {tuple(alpha): coeff})

    @staticmethod
    def variable(field: GF, h: Heights, i: int) -> "Poly":
        """x_i (1-based index)."""
        alpha = [0] * len(h)
        alpha[i - 1] = 1
        return Poly(field, h, {tuple(alpha): 1})

    @staticmethod
    def top_power(field: GF, h: Heights, i: int) -> "Poly":
        """x_i^(2^(m_i)) (1-based index), the extended-algebra generator."""
        alpha = [0] * len(h)
        alpha[i - 1] = 1 << h[i - 1]
        return Poly(field, h, {tuple(alpha): 1})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def has_top(self) -> bool:
        return any(mono_is_top(a, self.heights) for a in self.terms)

    def constant_term(self) -> int:
        return self.terms.get(tuple([0] * len(self.heights)), 0)

    def is_constant(self) -> bool:
        return all(mono_degree(a) == 0 for a in self.terms)

    def _check_compat(self, other: "Poly"):
        if self.field != other.field or self.heights != other.heights:
            raise ValueError("heights/field mismatch")

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compat(other)
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            r = terms.get(alpha, 0) ^ c
            if r:
                terms[alpha] = r
            else:
                terms.pop(alpha, None)
        return Poly(self.field, self.heights, terms)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_compat(other)
        K = self.field
        terms: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                par, g = mono_mul(a, b, self.heights)
                if not par:
                    continue
                c = K.mul(ca, cb)
                r = terms.get(g, 0) ^ c
                if r:
                    terms[g] = r
                else:
                    del terms[g]
        return Poly(K, self.heights, terms)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.field, self.heights)
        K = self.field
        return Poly(K, self.heights, {a: K.mul(v, c) for a, v in self.terms.items()})

    def partial(self, i: int) -> "Poly":
        """d/dx_i (1-based): x^(alpha) -> x^(alpha - e_i), coefficient 1."""
        if not 1 <= i <= len(self.heights):
            raise ValueError(f"variable index {i} out of range")
        terms = {}
        for alpha, c in self.terms.items():
            if alpha[i - 1] == 0:
                continue
            beta = list(alpha)
            beta[i - 1] -= 1
            terms[tuple(beta)] = terms.get(tuple(beta), 0) ^ c
        return Poly(self.field, self.heights, {a: c for a, c in terms.items() if c})

    def drop_constant(self) -> "Poly":
        terms = dict(self.terms)
        terms.pop(tuple([0] * len(self.heights)), None)
        return Poly(self.field, self.heights, terms)

    # -- misc ------------------------------------------------------------

    def min_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return min(mono_degree(a) for a in self.terms)

    def max_degree(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return max(mono_degree(a) for a in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.heights == other.heights
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.heights, tuple(self.sorted_terms())))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        bits = []
        for alpha, c in self.sorted_terms():
            mono = "*".join(
                f"x{i+1}^({a})" if a > 1 else f"x{i+1}" for i, a in enumerate(alpha) if a
            ) or "1"
            bits.append(mono if c == 1 else f"{c}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"

    def to_json_dict(self) -> dict:
        return {
            "heights": list(self.heights),
            "field": self.field.descriptor(),
            "terms": [
                {"alpha": list(a), "coeff": c} for a, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Poly":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits"))
        return Poly(
            K,
            tuple(d["heights"]),
            {tuple(t["alpha"]): t["coeff"] for t in d["terms"]},
        )


def _v2_fact(n: int) -> int:
    """2-adic valuation of n! (Legendre): n - popcount(n)."""
    return n - bin(n).count("1")


def _dp_base_parity(alpha: Monomial, r: int) -> int:
    """Parity of (r*alpha)! / (r! * (alpha!)^r), multi-index factorials."""
    v = -_v2_fact(r)
    for a in alpha:
        v += _v2_fact(r * a) - r * _v2_fact(a)
    return 1 if v == 0 else 0


def divided_power(f: Poly, r: int) -> Poly:
    """f^(r) for f with zero constant term; raises UndefinedDividedPower
    when an odd-coefficient term leaves the height range."""
    if r < 0:
        raise ValueError("divided power exponent must be >= 0")
    if f.constant_term() != 0:
        raise ValueError("divided powers require zero constant term")
    if f.has_top():
        raise ValueError("top-power monomials have no divided powers here")
    K, h = f.field, f.heights
    term_list = f.sorted_terms()

    def base(alpha, c, s):
        if s == 0:
            return Poly.one(K, h)
        if _dp_base_parity(alpha, s) == 0:
            return Poly.zero(K, h)
        beta = tuple(a * s for a in alpha)
        if not mono_in_range(beta, h):
            raise UndefinedDividedPower(
                f"({alpha})^({s}) escapes heights {h}"
            )
        return Poly.monomial(K, h, beta, K.pow(c, s))

    def rec(idx, s):
        if s == 0:
            return Poly.one(K, h)
        if idx >= len(term_list):
            return Poly.zero(K, h)
        alpha, c = term_list[idx]
        if idx == len(term_list) - 1:
            return base(alpha, c, s)
        out = Poly.zero(K, h)
        for t in range(s + 1):
            u = base(alpha, c, t)
            if u.is_zero():
                continue
            v = rec(idx + 1, s - t)
            if v.is_zero():
                continue
            out = out + u * v
        return out

    return rec(0, r)


def lambda_part(f: Poly) -> Poly:
    """The homogeneous part of least total degree (lambda in the analysis)."""
    if f.is_zero():
        raise ValueError("lambda is undefined for 0")
    d = f.min_degree()
    return Poly(f.field, f.heights, {a: c for a, c in f.terms.items() if mono_degree(a) == d})


@dataclass(frozen=True)
class Derivation:
    """D = sum_i f_i d/dx_i with coefficients in O(n, m)."""

    coeffs: tuple  # n Polys

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise ValueError("empty derivation")
        h = cs[0].heights
        if len(cs) != len(h) or any(c.heights != h or c.field != cs[0].field for c in cs):
            raise ValueError("derivation coefficients must share heights/field")
        object.__setattr__(self, "coeffs", cs)

    @property
    def heights(self) -> Heights:
        return self.coeffs[0].heights

    @property
    def field(self) -> GF:
        return self.coeffs[0].field

    @staticmethod
    def basis(field: GF, h: Heights, i: int) -> "Derivation":
        """The coordinate field d/dx_i (1-based)."""
        cs = [Poly.zero(field, h) for _ in h]
        cs[i - 1] = Poly.one(field, h)
        return Derivation(tuple(cs))

    def __call__(self, f: Poly) -> Poly:
        out = Poly.zero(self.field, self.heights)
        for i, fi in enumerate(self.coeffs, start=1):
            if not fi.is_zero():
                out = out + fi * f.partial(i)
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def commutator(self, other: "Derivation") -> "Derivation":
        """[D1, D2] = sum_i (D1(g_i) + D2(f_i)) d/dx_i (signs immaterial)."""
        return Derivation(
            tuple(self(g) + other(f) for f, g in zip(self.coeffs, other.coeffs))
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        return "Derivation(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def algebra_dimension(h: Heights) -> int:
    """dim O(n, m) as a K-vector space: 2^(m_1 + ... + m_n)."""
    return 1 << sum(h)
