"""Hamiltonian vector fields and the Poisson-bracket Lie algebras.

Given a closed nondegenerate non-alternating 2-form w with Gram inverse
(wbar_ij), the bracket on functions mod constants is

    {f, g} = sum_{i,j} wbar_ij d_i(f) d_j(g),

and D_f = sum_i (sum_j wbar_ij d_j f) d_i is the corresponding vector
field.  Three algebra variants are built on monomial bases:

  * P:      functions with zero constant term;
  * Ptilde: P extended by the three top powers x_i^(2^(m_i))
            (codimension-3 overalgebra; P is an ideal);
  * P1:     the derived subalgebra of P.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gfield import GF
from .divpow import (
    Derivation,
    Heights,
    Poly,
    algebra_dimension,
    iter_monomials,
    mono_degree,
    validate_heights,
)
from .linalg import Subspace
from .sforms import (
    BUILTIN_TAGS,
    Form2,
    builtin_form,
    gram_inverse,
    is_closed,
    is_nonalternating,
    is_nondegenerate,
)

VARIANTS = ("P", "Ptilde", "P1")


def poisson(f: Poly, g: Poly, wbar) -> Poly:
    """{f, g} reduced mod K (constant term dropped)."""
    if f.heights != g.heights or f.field != g.field:
        raise ValueError("heights/field mismatch")
    out = Poly.zero(f.field, f.heights)
    pf = [f.partial(i) for i in (1, 2, 3)]
    pg = [g.partial(i) for i in (1, 2, 3)]
    for i in range(3):
        for j in range(3):
            w = wbar[i][j]
            if w.is_zero() or pf[i].is_zero() or pg[j].is_zero():
                continue
            out = out + w * pf[i] * pg[j]
    return out.drop_constant()


def hamiltonian_field(f: Poly, wbar) -> Derivation:
    """D_f = sum_i (sum_j wbar_ij d_j f) d_i."""
    pf = [f.partial(j) for j in (1, 2, 3)]
    coeffs = []
    for i in range(3):
        c = Poly.zero(f.field, f.heights)
        for j in range(3):
            if not wbar[i][j].is_zero() and not pf[j].is_zero():
                c = c + wbar[i][j] * pf[j]
        coeffs.append(c)
    return Derivation(tuple(coeffs))


@dataclass(frozen=True)
class AlgebraSpec:
    """Which algebra to build: heights, form, field, variant."""

    heights: Heights
    form: str | Form2
    field: GF
    variant: str = "P"

    def __post_init__(self):
        object.__setattr__(self, "heights", validate_heights(self.heights))
        if len(self.heights) != 3:
            raise ValueError("Hamiltonian algebras here need exactly 3 variables")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if isinstance(self.form, str) and self.form not in BUILTIN_TAGS:
            raise ValueError(f"unknown builtin form {self.form!r}")

    def form2(self) -> Form2:
        if isinstance(self.form, str):
            return builtin_form(self.form, self.field, self.heights)
        w = self.form
        if w.heights != self.heights or w.field != self.field:
            raise ValueError("form heights/field do not match the spec")
        closed, _ = is_closed(w)
        if not closed:
            raise ValueError("form is not closed")
        if not is_nondegenerate(w):
            raise ValueError("form is degenerate")
        if not is_nonalternating(w):
            raise ValueError("form is alternating")
        return w

    def form_tag(self) -> str:
        return self.form if isinstance(self.form, str) else "custom"

    def to_json_dict(self) -> dict:
        d = {
            "heights": list(self.heights),
            "field": self.field.descriptor(),
            "variant": self.variant,
        }
        if isinstance(self.form, str):
            d["form"] = self.form
        else:
            d["form"] = self.form.to_json_dict()
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "AlgebraSpec":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits"))
        form = d["form"]
        if not isinstance(form, str):
            form = Form2.from_json_dict(form)
        return AlgebraSpec(tuple(d["heights"]), form, K, d.get("variant", "P"))


@dataclass(frozen=True)
class LieAlg:
    """Finite-dimensional Lie algebra over GF(2^k) given by structure
    constants on an ordered basis.

    basis labels are exponent tuples for monomial bases, or
    ("combo", ((alpha, coeff), ...)) rows for re-based subalgebras.
    degrees holds the Lie (filtration) degree of each basis element.
    """

    field: GF
    basis: tuple
    degrees: tuple
    sc: dict  # (a, b) with a < b -> tuple of (g, coeff)
    heights: Heights | None = None
    meta: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_basis(self, a: int, b: int):
        """{e_a, e_b} as a sparse (index, coeff) tuple; symmetric in char 2."""
        if a == b:
            return ()
        if a > b:
            a, b = b, a
        return self.sc.get((a, b), ())

    def bracket_vec(self, u, v):
        """Bracket of coordinate vectors."""
        K = self.field
        out = [0] * self.dim
        nz_u = [(a, c) for a, c in enumerate(u) if c]
        nz_v = [(b, c) for b, c in enumerate(v) if c]
        for a, ca in nz_u:
            for b, cb in nz_v:
                f = K.mul(ca, cb)
                for g, c in self.bracket_basis(a, b):
                    out[g] ^= K.mul(f, c)
        return out

    def ad_matrix(self, v):
        """Matrix of ad(v): column b is {v, e_b}."""
        K = self.field
        d = self.dim
        cols = []
        for b in range(d):
            col = [0] * d
            for a, ca in enumerate(v):
                if not ca:
                    continue
                for g, c in self.bracket_basis(a, b):
                    col[g] ^= K.mul(ca, c)
            cols.append(col)
        return [[cols[b][r] for b in range(d)] for r in range(d)]

    def basis_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.basis)}

    def label_str(self, i: int) -> str:
        lab = self.basis[i]
        if lab and lab[0] == "combo":
            return "+".join(
                (f"{c}*" if c != 1 else "") + _mono_str(a) for a, c in lab[1]
            )
        return _mono_str(lab)

    def to_json_dict(self) -> dict:
        d = {
            "dim": self.dim,
            "field": self.field.descriptor(),
            "basis": [list(b) if b[0] != "combo" else
                      {"combo": [[list(a), c] for a, c in b[1]]} for b in self.basis],
            "degrees": list(self.degrees),
            "sc": [
                {"a": a, "b": b, "c": [[g, c] for g, c in v]}
                for (a, b), v in sorted(self.sc.items())
            ],
        }
        if self.heights is not None:
            d["heights"] = list(self.heights)
        if self.meta:
            d["spec"] = dict(self.meta)
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "LieAlg":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits"))
        basis = []
        for b in d["basis"]:
            if isinstance(b, dict):
                basis.append(("combo", tuple((tuple(a), c) for a, c in b["combo"])))
            else:
                basis.append(tuple(b))
        sc = {
            (e["a"], e["b"]): tuple((g, c) for g, c in e["c"])
            for e in d["sc"]
        }
        return LieAlg(
            K,
            tuple(basis),
            tuple(d["degrees"]),
            sc,
            tuple(d["heights"]) if "heights" in d else None,
            d.get("spec", {}),
        )


def _mono_str(alpha) -> str:
    return "*".join(
        f"x{i+1}^({a})" if a > 1 else f"x{i+1}" for i, a in enumerate(alpha) if a
    ) or "1"


def _monomial_basis(spec: AlgebraSpec):
    h = spec.heights
    labels = [a for a in iter_monomials(h, min_degree=1)]
    if spec.variant == "Ptilde":
        for i in range(3):
            alpha = [0, 0, 0]
            alpha[i] = 1 << h[i]
            labels.append(tuple(alpha))
    labels.sort(key=lambda a: (mono_degree(a), a))
    return labels


def build_algebra(spec: AlgebraSpec) -> LieAlg:
    """Structure constants of the requested variant."""
    K, h = spec.field, spec.heights
    w = spec.form2()
    wbar = gram_inverse(w)
    if spec.variant == "P1":
        return _derived_of(build_algebra(AlgebraSpec(h, spec.form, K, "P")))
    labels = _monomial_basis(spec)
    index = {a: i for i, a in enumerate(labels)}
    sc = {}
    for a in range(len(labels)):
        fa = Poly.monomial(K, h, labels[a])
        for b in range(a + 1, len(labels)):
            fb = Poly.monomial(K, h, labels[b])
            p = poisson(fa, fb, wbar)
            if p.is_zero():
                continue
            sc[(a, b)] = tuple(sorted((index[m], c) for m, c in p.terms.items()))
    deg = tuple(mono_degree(a) - 2 for a in labels)
    expect = algebra_dimension(h) - 1 + (3 if spec.variant == "Ptilde" else 0)
    assert len(labels) == expect
    return LieAlg(K, tuple(labels), deg, sc, h, {
        "form": spec.form_tag(), "variant": spec.variant,
    })


def derived_rows(L: LieAlg):
    """Echelon basis of the span of all structure-constant images."""
    span = Subspace(L.field, L.dim)
    for v in L.sc.values():
        vec = [0] * L.dim
        for g, c in v:
            vec[g] = c
        span.insert(vec)
    return span.basis()


def subalgebra(L: LieAlg, rows) -> LieAlg:
    """Re-base a bracket-closed subspace (rows in echelon form) as a LieAlg."""
    K = L.field
    span = Subspace(K, L.dim)
    for r in rows:
        span.insert(r)
    rows = span.basis()
    pivots = span.pivots

    def express(vec):
        v = list(vec)
        coords = []
        for row, p in zip(rows, pivots):
            c = v[p]
            coords.append(c)
            if c:
                for j in range(L.dim):
                    if row[j]:
                        v[j] ^= K.mul(c, row[j])
        if any(v):
            raise ValueError("subspace is not closed under the bracket")
        return coords

    sc = {}
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            coords = express(L.bracket_vec(rows[a], rows[b]))
            entry = tuple((g, c) for g, c in enumerate(coords) if c)
            if entry:
                sc[(a, b)] = entry

    labels = []
    degrees = []
    for row in rows:
        monos = tuple(
            (L.basis[i], c) for i, c in enumerate(row) if c
        )
        if len(monos) == 1 and monos[0][1] == 1 and monos[0][0][0] != "combo":
            labels.append(monos[0][0])
        else:
            labels.append(("combo", monos))
        degrees.append(min(L.degrees[i] for i, c in enumerate(row) if c))
    return LieAlg(K, tuple(labels), tuple(degrees), sc, L.heights,
                  dict(L.meta, variant=L.meta.get("variant", "P") + "->sub"))


def _derived_of(L: LieAlg) -> LieAlg:
    sub = subalgebra(L, derived_rows(L))
    meta = dict(L.meta, variant="P1")
    return LieAlg(sub.field, sub.basis, sub.degrees, sub.sc, sub.heights, meta)
