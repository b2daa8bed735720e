"""Symmetric differential forms of degree <= 3 in three variables.

A 1-form is sum f_i dx_i.  A symmetric 2-form is

    w = sum_i g_i (dx_i)^(2) + sum_{i<j} g_ij dx_i dx_j,

where (dx_i)^(2) is the divided square (dx_i * dx_i = 2 (dx_i)^(2) = 0
over characteristic 2).  Degree-3 forms only appear as differentials of
2-forms and are kept on the dx-monomial basis with per-variable
exponents <= 3 (divided powers of the dx variables are untruncated up
to total degree 3; that is all the theory needs).

The differential follows the divided-power conventions:
    d(g (dx_i)^(2)) = sum_k d_k(g) dx_k (dx_i)^(2), the k = i term
                      landing on (dx_i)^(3);
    d(g dx_i dx_j)  = sum_{k not in {i,j}} d_k(g) dx_1 dx_2 dx_3.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfield import GF
from .divpow import Derivation, Poly

MIXED_KEYS = ((1, 2), (1, 3), (2, 3))
BUILTIN_TAGS = ("omega1", "omega2", "omega3", "omega4")


def _check3(h):
    if len(h) != 3:
        raise ValueError("2-forms here live in exactly three variables")


@dataclass(frozen=True)
class Form1:
    """sum f_i dx_i."""

    comps: tuple  # n Polys

    def __post_init__(self):
        cs = tuple(self.comps)
        h = cs[0].heights
        if len(cs) != len(h) or any(c.heights != h or c.field != cs[0].field for c in cs):
            raise ValueError("1-form components must share heights/field")
        object.__setattr__(self, "comps", cs)

    @property
    def heights(self):
        return self.comps[0].heights

    @property
    def field(self):
        return self.comps[0].field

    @staticmethod
    def zero(field: GF, h) -> "Form1":
        return Form1(tuple(Poly.zero(field, h) for _ in h))

    @staticmethod
    def dx(field: GF, h, i: int) -> "Form1":
        cs = [Poly.zero(field, h) for _ in h]
        cs[i - 1] = Poly.one(field, h)
        return Form1(tuple(cs))

    def __add__(self, other: "Form1") -> "Form1":
        return Form1(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def scale_poly(self, f: Poly) -> "Form1":
        return Form1(tuple(f * c for c in self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __call__(self, D: Derivation) -> Poly:
        out = Poly.zero(self.field, self.heights)
        for fi, Di in zip(self.comps, D.coeffs):
            out = out + fi * Di
        return out


@dataclass(frozen=True)
class Form2:
    """Symmetric 2-form in three variables."""

    squares: tuple  # (g_1, g_2, g_3)
    mixed: tuple    # (g_12, g_13, g_23)

    def __post_init__(self):
        sq = tuple(self.squares)
        mx = tuple(self.mixed)
        h = sq[0].heights
        _check3(h)
        allp = sq + mx
        if len(sq) != 3 or len(mx) != 3 or any(
            p.heights != h or p.field != sq[0].field for p in allp
        ):
            raise ValueError("2-form coefficients must be 3+3 compatible polys")
        object.__setattr__(self, "squares", sq)
        object.__setattr__(self, "mixed", mx)

    @property
    def heights(self):
        return self.squares[0].heights

    @property
    def field(self):
        return self.squares[0].field

    @staticmethod
    def zero(field: GF, h) -> "Form2":
        z = Poly.zero(field, h)
        return Form2((z, z, z), (z, z, z))

    def mixed_coeff(self, i: int, j: int) -> Poly:
        """g_ij for i != j (symmetric)."""
        if i > j:
            i, j = j, i
        return self.mixed[MIXED_KEYS.index((i, j))]

    def square_coeff(self, i: int) -> Poly:
        return self.squares[i - 1]

    def __add__(self, other: "Form2") -> "Form2":
        return Form2(
            tuple(a + b for a, b in zip(self.squares, other.squares)),
            tuple(a + b for a, b in zip(self.mixed, other.mixed)),
        )

    def scale_poly(self, f: Poly) -> "Form2":
        return Form2(
            tuple(f * c for c in self.squares),
            tuple(f * c for c in self.mixed),
        )

    def scale(self, c: int) -> "Form2":
        return Form2(
            tuple(p.scale(c) for p in self.squares),
            tuple(p.scale(c) for p in self.mixed),
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.squares + self.mixed)

    def gram(self):
        """The symmetric 3x3 matrix of Polys (w_ij), diagonal = squares."""
        g = [[None] * 3 for _ in range(3)]
        for i in range(3):
            g[i][i] = self.squares[i]
        for (i, j), p in zip(MIXED_KEYS, self.mixed):
            g[i - 1][j - 1] = p
            g[j - 1][i - 1] = p
        return g

    def __repr__(self):
        bits = []
        for i, p in enumerate(self.squares, start=1):
            if not p.is_zero():
                bits.append(f"[{p!r}](dx{i})^(2)")
        for (i, j), p in zip(MIXED_KEYS, self.mixed):
            if not p.is_zero():
                bits.append(f"[{p!r}]dx{i}dx{j}")
        return "Form2(" + (" + ".join(bits) or "0") + ")"

    def to_json_dict(self) -> dict:
        return {
            "heights": list(self.heights),
            "field": self.field.descriptor(),
            "squares": {str(i + 1): [
                {"alpha": list(a), "coeff": c} for a, c in p.sorted_terms()
            ] for i, p in enumerate(self.squares)},
            "mixed": {f"{i},{j}": [
                {"alpha": list(a), "coeff": c} for a, c in p.sorted_terms()
            ] for (i, j), p in zip(MIXED_KEYS, self.mixed)},
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Form2":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits"))
        h = tuple(d["heights"])

        def poly(ts):
            return Poly(K, h, {tuple(t["alpha"]): t["coeff"] for t in ts})

        return Form2(
            tuple(poly(d["squares"].get(str(i), [])) for i in (1, 2, 3)),
            tuple(poly(d["mixed"].get(f"{i},{j}", [])) for i, j in MIXED_KEYS),
        )


@dataclass(frozen=True)
class Form3:
    """Degree-3 form on the dx-monomial basis (exponent triples summing to 3)."""

    field: GF
    heights: tuple
    terms: dict  # (a1,a2,a3) with sum 3 -> Poly

    def __post_init__(self):
        _check3(self.heights)
        clean = {}
        for key, p in self.terms.items():
            key = tuple(key)
            if sum(key) != 3 or any(a < 0 for a in key):
                raise ValueError(f"bad dx-exponent triple {key}")
            if not p.is_zero():
                clean[key] = p
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def zero(field: GF, h) -> "Form3":
        return Form3(field, tuple(h), {})

    def add_term(self, key, p: Poly) -> "Form3":
        terms = dict(self.terms)
        prev = terms.get(tuple(key))
        q = p if prev is None else prev + p
        if q.is_zero():
            terms.pop(tuple(key), None)
        else:
            terms[tuple(key)] = q
        return Form3(self.field, self.heights, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        bits = [f"[{p!r}]dx^{key}" for key, p in sorted(self.terms.items())]
        return "Form3(" + (" + ".join(bits) or "0") + ")"


# -- differential ---------------------------------------------------------


def differential(x):
    """d on Poly -> Form1, Form1 -> Form2, Form2 -> Form3."""
    if isinstance(x, Poly):
        return _d_poly(x)
    if isinstance(x, Form1):
        return _d_form1(x)
    if isinstance(x, Form2):
        return _d_form2(x)
    raise TypeError(f"no differential for {type(x).__name__}")


def _d_poly(f: Poly) -> Form1:
    return Form1(tuple(f.partial(i) for i in range(1, len(f.heights) + 1)))


def _d_form1(th: Form1) -> Form2:
    K, h = th.field, th.heights
    _check3(h)
    z = Poly.zero(K, h)
    mixed = []
    for i, j in MIXED_KEYS:
        mixed.append(th.comps[j - 1].partial(i) + th.comps[i - 1].partial(j))
    # dx_i dx_i = 2 (dx_i)^(2) = 0: no square components
    return Form2((z, z, z), tuple(mixed))


def _d_form2(w: Form2) -> Form3:
    K, h = w.field, w.heights
    out = Form3.zero(K, h)
    for i in range(1, 4):
        g = w.squares[i - 1]
        for k in range(1, 4):
            p = g.partial(k)
            if p.is_zero():
                continue
            key = [0, 0, 0]
            key[i - 1] += 2
            key[k - 1] += 1
            out = out.add_term(tuple(key), p)
    for (i, j), g in zip(MIXED_KEYS, w.mixed):
        k = 6 - i - j
        p = g.partial(k)
        if not p.is_zero():
            out = out.add_term((1, 1, 1), p)
    return out


def is_closed(w: Form2):
    """(verdict, residual d(w)); closed iff the residual vanishes."""
    r = _d_form2(w)
    return r.is_zero(), r


def is_nonalternating(w: Form2) -> bool:
    return any(not p.is_zero() for p in w.squares)


def is_nondegenerate(w: Form2) -> bool:
    """det of the Gram matrix is a unit of the local ring O(F)."""
    return _det3(w.gram()).constant_term() != 0


def _det3(g):
    K, h = g[0][0].field, g[0][0].heights
    out = Poly.zero(K, h)
    # char 2: permanent = determinant
    for p in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        out = out + g[0][p[0]] * g[1][p[1]] * g[2][p[2]]
    return out


def _adjugate3(g):
    def cof(r, c):
        rs = [i for i in range(3) if i != r]
        cs = [j for j in range(3) if j != c]
        return g[rs[0]][cs[0]] * g[rs[1]][cs[1]] + g[rs[0]][cs[1]] * g[rs[1]][cs[0]]

    # adj[i][j] = cofactor(j, i); signs are trivial in char 2
    return [[cof(j, i) for j in range(3)] for i in range(3)]


def _invert_unit(u: Poly) -> Poly:
    """Inverse of a unit u = c(1 + nu) of the local ring, nu nilpotent."""
    K, h = u.field, u.heights
    c = u.constant_term()
    if c == 0:
        raise ValueError("not a unit of O(F)")
    cinv = K.inv(c)
    nu = u.scale(cinv) + Poly.one(K, h)  # nilpotent part
    out = Poly.one(K, h)
    power = nu
    while not power.is_zero():
        out = out + power
        power = power * nu
    return out.scale(cinv)


def gram_inverse(w: Form2):
    """Exact inverse of the Gram matrix over O(F); requires nondegeneracy."""
    if not is_nondegenerate(w):
        raise ValueError("form is degenerate: Gram determinant is not a unit")
    g = w.gram()
    dinv = _invert_unit(_det3(g))
    adj = _adjugate3(g)
    return [[dinv * adj[i][j] for j in range(3)] for i in range(3)]


# -- evaluation and Lie derivative ---------------------------------------


def eval_form2(w: Form2, D1: Derivation, D2: Derivation) -> Poly:
    """w(D1, D2): (dx_i)^(2)(D1,D2) = dx_i(D1) dx_i(D2), mixed symmetrized."""
    if D1.heights != w.heights or D2.heights != w.heights:
        raise ValueError("heights/field mismatch")
    out = Poly.zero(w.field, w.heights)
    a, b = D1.coeffs, D2.coeffs
    for i in range(3):
        if not w.squares[i].is_zero():
            out = out + w.squares[i] * a[i] * b[i]
    for (i, j), g in zip(MIXED_KEYS, w.mixed):
        if not g.is_zero():
            out = out + g * (a[i - 1] * b[j - 1] + a[j - 1] * b[i - 1])
    return out


def lie_derivative(D: Derivation, w: Form2) -> Form2:
    """(Dw)(D1,D2) = D(w(D1,D2)) + w([D,D1],D2) + w(D1,[D,D2]),
    reconstructed from the values on the coordinate field pairs."""
    if D.heights != w.heights:
        raise ValueError("heights/field mismatch")
    K, h = w.field, w.heights
    basis = [Derivation.basis(K, h, i) for i in (1, 2, 3)]
    brackets = [D.commutator(b) for b in basis]

    def val(i, j):
        return (
            D(eval_form2(w, basis[i], basis[j]))
            + eval_form2(w, brackets[i], basis[j])
            + eval_form2(w, basis[i], brackets[j])
        )

    squares = tuple(val(i, i) for i in range(3))
    mixed = tuple(val(i - 1, j - 1) for i, j in MIXED_KEYS)
    return Form2(squares, mixed)


# -- products -------------------------------------------------------------


def square_of_1form(th: Form1) -> Form2:
    """(sum f_j dx_j)^(2) = sum f_j^2 (dx_j)^(2) + sum_{j<k} f_j f_k dx_j dx_k."""
    _check3(th.heights)
    f = th.comps
    squares = tuple(p * p for p in f)
    mixed = tuple(f[i - 1] * f[j - 1] for i, j in MIXED_KEYS)
    return Form2(squares, mixed)


def mul_form1(th: Form1, eta: Form1) -> Form2:
    """Ordinary product of two 1-forms; dx_j dx_j terms vanish (char 2)."""
    _check3(th.heights)
    K, h = th.field, th.heights
    z = Poly.zero(K, h)
    f, g = th.comps, eta.comps
    mixed = tuple(
        f[i - 1] * g[j - 1] + f[j - 1] * g[i - 1] for i, j in MIXED_KEYS
    )
    return Form2((z, z, z), mixed)


def solve_exact(target: Form2):
    """A 1-form psi with d(psi) = target, or None.

    d of a 1-form has no square components, so a target with nonzero
    squares is never exact.  The mixed components give a linear system in
    the monomial coefficients of psi, solved exactly over the field.
    """
    from .divpow import iter_monomials
    from .linalg import solve as lin_solve

    K, h = target.field, target.heights
    if any(not p.is_zero() for p in target.squares):
        return None
    monos = list(iter_monomials(h, min_degree=0))
    midx = {m: i for i, m in enumerate(monos)}
    nm = len(monos)
    ncols = 3 * nm
    nrows = 3 * nm  # one equation per mixed slot per monomial
    rows = [[0] * ncols for _ in range(nrows)]
    for slot in range(3):
        for mi, m in enumerate(monos):
            comps = [Poly.zero(K, h)] * 3
            comps = list(comps)
            comps[slot] = Poly.monomial(K, h, m)
            dpsi = _d_form1(Form1(tuple(comps)))
            col = slot * nm + mi
            for ms in range(3):
                for a, c in dpsi.mixed[ms].terms.items():
                    rows[ms * nm + midx[a]][col] = c
    rhs = [0] * nrows
    for ms in range(3):
        for a, c in target.mixed[ms].terms.items():
            rhs[ms * nm + midx[a]] = c
    x = lin_solve(K, rows, rhs)
    if x is None:
        return None
    comps = []
    for slot in range(3):
        terms = {m: x[slot * nm + mi] for mi, m in enumerate(monos)
                 if x[slot * nm + mi]}
        comps.append(Poly(K, h, terms))
    psi = Form1(tuple(comps))
    assert (_d_form1(psi) + target).is_zero()
    return psi


# -- builtin canonical forms ---------------------------------------------


def builtin_form(tag: str, field: GF, h) -> Form2:
    """The canonical Hamiltonian forms omega1..omega4."""
    h = tuple(h)
    _check3(h)
    z = Poly.zero(field, h)
    one = Poly.one(field, h)
    if tag == "omega1":
        return Form2((z, z, one), (one, z, z))
    if tag == "omega2":
        if not (h[0] < h[1] and not h[0] <= h[2] <= h[1]):
            raise ValueError(
                f"omega2 requires m1 < m2 and m3 outside [m1, m2]; got {h}"
            )
        return Form2((z, one, one), (one, z, z))
    if tag == "omega3":
        return Form2((one, one, one), (z, z, z))
    if tag == "omega4":
        if h[2] != 1:
            raise ValueError(f"omega4 requires m3 = 1; got {h}")
        xbar1x3 = Poly.monomial(field, h, ((1 << h[0]) - 1, 0, 1))
        return Form2((z, z, one), (one, xbar1x3, z))
    raise ValueError(f"unknown builtin form tag {tag!r}")
