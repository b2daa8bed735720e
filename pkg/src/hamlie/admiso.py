"""Admissible automorphisms of O(n, m): the generator family of the
three-variable classification.

Three generator kinds:

  * Linear(M): x_i -> sum_j M[i][j] x_j, M invertible, with M and its
    inverse flag-compatible (an entry (i, j) may be nonzero only when
    the image variable's height is at least the source variable's).
    Diagonal Linear generators are scalings.
  * AddSub(i, j, t, c): x_i -> x_i + c x_j^(2^t), all other variables
    fixed; valid when t + m_i <= m_j, which guarantees every divided
    power of the image stays in range.  Involutive in characteristic 2.

Words of generators act on polynomials by substitution (extended
through divided powers) and push forward to differential forms via
dx_i -> d(sigma x_i).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfield import GF
from .divpow import Derivation, Heights, Poly, divided_power, validate_heights
from .linalg import mat_inverse
from .sforms import Form1, Form2, MIXED_KEYS, mul_form1, square_of_1form


@dataclass(frozen=True)
class LinearGen:
    """x_i -> sum_j M[i][j] x_j; may permute heights (source -> target)."""

    matrix: tuple  # n x n of field ints

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        if any(len(row) != len(m) for row in m):
            raise ValueError("linear generator needs a square matrix")
        object.__setattr__(self, "matrix", m)

    def kind(self) -> str:
        return "linear"


@dataclass(frozen=True)
class AddSubGen:
    """x_i -> x_i + c * x_j^(2^t), 1-based indices, j != i."""

    i: int
    j: int
    t: int
    c: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("additive substitution needs distinct variables")
        if self.t < 0:
            raise ValueError("substitution exponent t must be >= 0")

    def kind(self) -> str:
        return "addsub"


def scale_gen(cs) -> LinearGen:
    """Diagonal scaling x_i -> c_i x_i."""
    n = len(cs)
    return LinearGen(tuple(
        tuple(cs[i] if i == j else 0 for j in range(n)) for i in range(n)
    ))


def check_admissible(gen, field: GF, source: Heights, target: Heights | None = None):
    """(verdict, reason): does gen define an admissible map
    O(source) -> O(target)?"""
    source = validate_heights(source)
    target = source if target is None else validate_heights(target)
    n = len(source)
    if isinstance(gen, AddSubGen):
        if source != target:
            return False, "additive substitutions do not change heights"
        if not (1 <= gen.i <= n and 1 <= gen.j <= n):
            return False, "variable index out of range"
        if gen.t + source[gen.i - 1] > source[gen.j - 1]:
            return False, (
                f"t + m_{gen.i} = {gen.t + source[gen.i - 1]} exceeds "
                f"m_{gen.j} = {source[gen.j - 1]}: image height too small"
            )
        return True, "ok"
    if isinstance(gen, LinearGen):
        m = gen.matrix
        if len(m) != n:
            return False, "matrix size does not match variable count"
        minv = mat_inverse(field, m)
        if minv is None:
            return False, "matrix is singular"
        for i in range(n):
            for j in range(n):
                if m[i][j] and target[j] < source[i]:
                    return False, (
                        f"entry ({i + 1},{j + 1}) breaks the flag: "
                        f"m'_{j + 1} = {target[j]} < m_{i + 1} = {source[i]}"
                    )
                if minv[i][j] and source[j] < target[i]:
                    return False, (
                        f"inverse entry ({i + 1},{j + 1}) breaks the flag"
                    )
        return True, "ok"
    return False, f"unknown generator {gen!r}"


@dataclass(frozen=True)
class Admissible:
    """A word of generators, applied left to right."""

    field: GF
    source: Heights
    word: tuple  # generators with per-step (source, target) heights
    step_heights: tuple  # len(word)+1 height tuples, source .. target

    @staticmethod
    def identity(field: GF, h: Heights) -> "Admissible":
        h = validate_heights(h)
        return Admissible(field, h, (), (h,))

    @staticmethod
    def from_generators(field: GF, source: Heights, gens, targets=None) -> "Admissible":
        """Build and validate a word.  targets optionally gives the height
        tuple after each Linear step (defaults to unchanged)."""
        source = validate_heights(source)
        heights = [source]
        word = []
        for idx, gen in enumerate(gens):
            cur = heights[-1]
            tgt = cur
            if targets is not None and targets[idx] is not None:
                tgt = validate_heights(targets[idx])
            ok, reason = check_admissible(gen, field, cur, tgt)
            if not ok:
                raise ValueError(f"inadmissible generator at position {idx}: {reason}")
            word.append(gen)
            heights.append(tgt)
        return Admissible(field, source, tuple(word), tuple(heights))

    @property
    def target(self) -> Heights:
        return self.step_heights[-1]

    # -- action on polynomials ------------------------------------------

    def _gen_images(self, gen, src: Heights, tgt: Heights):
        """Images of the variables x_1..x_n as Polys over target heights."""
        K = self.field
        n = len(src)
        if isinstance(gen, AddSubGen):
            imgs = [Poly.variable(K, tgt, i) for i in range(1, n + 1)]
            alpha = [0] * n
            alpha[gen.j - 1] = 1 << gen.t
            imgs[gen.i - 1] = imgs[gen.i - 1] + Poly.monomial(K, tgt, tuple(alpha), gen.c)
            return imgs
        imgs = []
        for i in range(n):
            p = Poly.zero(K, tgt)
            for j in range(n):
                if gen.matrix[i][j]:
                    p = p + Poly.variable(K, tgt, j + 1).scale(gen.matrix[i][j])
            imgs.append(p)
        return imgs

    def _apply_gen_poly(self, gen, src, tgt, f: Poly) -> Poly:
        K = self.field
        imgs = self._gen_images(gen, src, tgt)
        cache: dict = {}

        def img_power(i, r):
            key = (i, r)
            if key not in cache:
                cache[key] = divided_power(imgs[i], r)
            return cache[key]

        out = Poly.zero(K, tgt)
        for alpha, c in f.terms.items():
            term = Poly.one(K, tgt)
            for i, a in enumerate(alpha):
                if a:
                    term = term * img_power(i, a)
            out = out + term.scale(c)
        return out

    def apply_poly(self, f: Poly) -> Poly:
        if f.heights != self.source or f.field != self.field:
            raise ValueError("heights/field mismatch")
        if f.has_top():
            raise ValueError("automorphisms act on O(F), not on top powers")
        for gen, src, tgt in zip(self.word, self.step_heights, self.step_heights[1:]):
            f = self._apply_gen_poly(gen, src, tgt, f)
        return f

    # -- action on forms -------------------------------------------------

    def _apply_gen_form2(self, gen, src, tgt, w: Form2) -> Form2:
        K = self.field
        imgs = self._gen_images(gen, src, tgt)
        dimgs = [
            Form1(tuple(p.partial(j) for j in range(1, 4)))
            for p in imgs
        ]

        def push(p: Poly) -> Poly:
            return self._apply_gen_poly(gen, src, tgt, p)

        out = Form2.zero(K, tgt)
        for i in range(3):
            g = w.squares[i]
            if not g.is_zero():
                out = out + square_of_1form(dimgs[i]).scale_poly(push(g))
        for (i, j), g in zip(MIXED_KEYS, w.mixed):
            if not g.is_zero():
                out = out + mul_form1(dimgs[i - 1], dimgs[j - 1]).scale_poly(push(g))
        return out

    def apply_form2(self, w: Form2) -> Form2:
        if w.heights != self.source or w.field != self.field:
            raise ValueError("heights/field mismatch")
        for gen, src, tgt in zip(self.word, self.step_heights, self.step_heights[1:]):
            w = self._apply_gen_form2(gen, src, tgt, w)
        return w

    def apply_form1(self, th: Form1) -> Form1:
        if th.heights != self.source:
            raise ValueError("heights mismatch")
        for gen, src, tgt in zip(self.word, self.step_heights, self.step_heights[1:]):
            imgs = self._gen_images(gen, src, tgt)
            dimgs = [Form1(tuple(p.partial(j) for j in range(1, len(tgt) + 1))) for p in imgs]
            out = Form1.zero(self.field, tgt)
            for i, f in enumerate(th.comps):
                if not f.is_zero():
                    out = out + dimgs[i].scale_poly(self._apply_gen_poly(gen, src, tgt, f))
            th = out
        return th

    # -- group structure -------------------------------------------------

    def compose(self, inner: "Admissible") -> "Admissible":
        """self after inner: apply(compose(s1, s2), f) = apply(s1, apply(s2, f))."""
        if inner.target != self.source or inner.field != self.field:
            raise ValueError("height/field mismatch in composition")
        return Admissible(
            self.field,
            inner.source,
            inner.word + self.word,
            inner.step_heights + self.step_heights[1:],
        )

    def invert(self) -> "Admissible":
        gens = []
        heights = []
        for gen, src, tgt in zip(self.word, self.step_heights, self.step_heights[1:]):
            if isinstance(gen, AddSubGen):
                gens.append(gen)  # involutive
            else:
                gens.append(LinearGen(mat_inverse(self.field, gen.matrix)))
            heights.append(src)
        gens.reverse()
        heights.reverse()
        return Admissible.from_generators(self.field, self.target, gens, heights)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        word = []
        for gen, tgt in zip(self.word, self.step_heights[1:]):
            if isinstance(gen, AddSubGen):
                word.append({"kind": "addsub", "i": gen.i, "j": gen.j,
                             "t": gen.t, "c": gen.c})
            else:
                word.append({"kind": "linear", "m": [list(r) for r in gen.matrix],
                             "target_heights": list(tgt)})
        return {
            "field": self.field.descriptor(),
            "heights": list(self.source),
            "word": word,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "Admissible":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits")) if "field" in d else GF(1)
        gens = []
        targets = []
        for g in d["word"]:
            if g["kind"] == "addsub":
                gens.append(AddSubGen(g["i"], g["j"], g["t"], g.get("c", 1)))
                targets.append(None)
            elif g["kind"] in ("linear", "scale"):
                if g["kind"] == "scale":
                    gens.append(scale_gen(g["c"]))
                else:
                    gens.append(LinearGen(tuple(tuple(r) for r in g["m"])))
                targets.append(tuple(g["target_heights"]) if "target_heights" in g else None)
            else:
                raise ValueError(f"unknown generator kind {g['kind']!r}")
        return Admissible.from_generators(K, tuple(d["heights"]), gens, targets)


# -- named automorphisms of the classification ---------------------------


def elimination_automorphism(field: GF, h: Heights, c13: int, c23: int) -> Admissible:
    """The coefficient-killing substitution for the forms
    omega(0) + c13 xbar1 x3 dx1dx3 + c23 xbar2 x3 dx2dx3 with m3 = 1.

    For m1 <= m2 it maps x1 -> x1 + (c23~/c13~) x2^(2^(m2-m1)) with
    c~^(2^m1) = c, killing the c23 component; for m1 > m2 the roles of
    x1 and x2 swap and the c13 component dies.
    """
    h = validate_heights(h)
    if c13 == 0 or c23 == 0:
        raise ValueError("elimination needs both coefficients nonzero")
    m1, m2 = h[0], h[1]
    if m1 <= m2:
        a = field.div(field.iter_sqrt(c23, m1), field.iter_sqrt(c13, m1))
        gen = AddSubGen(1, 2, m2 - m1, a)
    else:
        a = field.div(field.iter_sqrt(c13, m2), field.iter_sqrt(c23, m2))
        gen = AddSubGen(2, 1, m1 - m2, a)
    return Admissible.from_generators(field, h, [gen])


def swap_automorphism(field: GF, h: Heights) -> Admissible:
    """x1 <-> x2, mapping O(3,(m1,m2,m3)) -> O(3,(m2,m1,m3))."""
    h = validate_heights(h)
    m = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    target = (h[1], h[0], h[2])
    return Admissible.from_generators(field, h, [LinearGen(m)], [target])


def scaling_automorphism(field: GF, h: Heights, cs) -> Admissible:
    """Diagonal scaling x_i -> c_i x_i."""
    return Admissible.from_generators(field, h, [scale_gen(tuple(cs))])


def omega4_scaling(field: GF, h: Heights, a: int) -> Admissible:
    """The scaling with c = (1, a, sqrt(a)) that maps omega4 to a*omega4."""
    if a == 0:
        raise ValueError("scale factor must be nonzero")
    return scaling_automorphism(field, h, (1, a, field.sqrt(a)))


def normalization_scaling(field: GF, h: Heights, c: int) -> Admissible:
    """The scaling x1 -> x1/c~, x2 -> c~ x2 with c~^(2^m1) = c that turns
    omega(0) + c xbar1 x3 dx1dx3 into omega4."""
    if c == 0:
        raise ValueError("coefficient must be nonzero")
    ct = field.iter_sqrt(c, h[0])
    return scaling_automorphism(field, h, (field.inv(ct), ct, 1))
