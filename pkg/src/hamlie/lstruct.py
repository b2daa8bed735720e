"""Structure analysis of finite-dimensional Lie algebras over GF(2^k).

Works on the structure-constant `LieAlg` representation: ranks of
adjoint maps, derived series, center, ideal closures, simplicity (two
independent certifiers), the minimum-ad-rank invariant R with its argmin
set, gradings/filtrations, normalizers, and isomorphism fingerprints.

GF(2) exhaustive sweeps go through the bit-packed kernels in _kernels;
everything else uses exact dense linear algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import _kernels
from .linalg import Subspace, kernel, mat_inverse, mat_mul, mat_transpose, rank
from .poisson import LieAlg, derived_rows, subalgebra

EXHAUSTIVE_DIM_LIMIT = 16
SPIN_DIM_LIMIT = 20
HOMOGENEOUS_ENUM_LIMIT = 1 << 20


def ad_rank(L: LieAlg, v) -> int:
    """dim Im(ad v)."""
    if L.field.k == 1 and L.dim <= 63:
        admats, _, d = _kernels.pack_ad_tables(L)
        rows = [0] * d
        for a, c in enumerate(v):
            if c:
                for g in range(d):
                    rows[g] ^= int(admats[a, g])
        return _kernels.rank_packed(rows, d)
    return rank(L.field, L.ad_matrix(v))


def witness_rank(L: LieAlg, v, witnesses) -> int:
    """Rank of the set of brackets {v, E_j} — a lower bound for ad_rank."""
    return rank(L.field, [L.bracket_vec(v, w) for w in witnesses])


def derived_series(L: LieAlg, max_steps: int = 20):
    """([dim L, dim L', dim L'', ...] until stable, list of bases)."""
    dims = [L.dim]
    bases = [[_unit(L.dim, i) for i in range(L.dim)]]
    current = bases[0]
    for _ in range(max_steps):
        span = Subspace(L.field, L.dim)
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                span.insert(L.bracket_vec(current[i], current[j]))
        dims.append(span.dim)
        bases.append(span.basis())
        if span.dim == dims[-2]:
            break
        current = span.basis()
    return dims, bases


def center(L: LieAlg):
    """Basis of {v | {v, w} = 0 for all w}."""
    rows = []
    for b in range(L.dim):
        for g in range(L.dim):
            row = [0] * L.dim
            nz = False
            for a in range(L.dim):
                for gg, c in L.bracket_basis(a, b):
                    if gg == g:
                        row[a] = c
                        nz = True
            if nz:
                rows.append(row)
    if not rows:
        return [_unit(L.dim, i) for i in range(L.dim)]
    return kernel(L.field, rows)


def _unit(d: int, i: int):
    v = [0] * d
    v[i] = 1
    return v


def ideal_closure(L: LieAlg, v):
    """Echelon basis of the ideal generated by v (spin under all ad e_b)."""
    if L.field.k == 1 and L.dim <= 63:
        _, brk, d = _kernels.pack_ad_tables(L)
        mask = 0
        for i, c in enumerate(v):
            if c:
                mask |= 1 << i
        _, rows = _kernels.spin_closure(brk, d, mask)
        return [[(r >> i) & 1 for i in range(d)] for r in rows]
    span = Subspace(L.field, L.dim)
    queue = [list(v)]
    span.insert(v)
    while queue and span.dim < L.dim:
        w = queue.pop()
        for b in range(L.dim):
            y = L.bracket_vec(w, _unit(L.dim, b))
            if any(y) and span.insert(y):
                queue.append(y)
    return span.basis()


def _simple_exhaustive(L: LieAlg):
    if L.field.k != 1 or L.dim > SPIN_DIM_LIMIT:
        raise ValueError(
            f"exhaustive simplicity needs GF(2) and dim <= {SPIN_DIM_LIMIT}"
        )
    if L.dim < 2 or derived_series(L)[0][1] < L.dim:
        return False
    _, brk, d = _kernels.pack_ad_tables(L)
    return _kernels.spin_sweep(brk, d) == 0


def _adjoint_action(L: LieAlg, b: int):
    return L.ad_matrix(_unit(L.dim, b))


def _random_envelope_element(L: LieAlg, rng):
    """ad(u) ad(v) + ad(w) for random u, v, w — a generic element of the
    associative envelope of ad L, usually of very small nullity."""
    K = L.field
    d = L.dim

    def rand_ad():
        v = [rng.randrange(K.order) for _ in range(d)]
        return L.ad_matrix(v)

    z = mat_mul(K, rand_ad(), rand_ad())
    w = rand_ad()
    for r in range(d):
        for s in range(d):
            z[r][s] ^= w[r][s]
    return z


def _spin_module(L: LieAlg, gens, v) -> int:
    """dim of the submodule generated by v under the matrices gens."""
    K = L.field
    span = Subspace(K, L.dim)
    span.insert(v)
    queue = [list(v)]
    while queue and span.dim < L.dim:
        w = queue.pop()
        for M in gens:
            y = [0] * L.dim
            for r in range(L.dim):
                acc = 0
                for s in range(L.dim):
                    if M[r][s] and w[s]:
                        acc ^= K.mul(M[r][s], w[s])
                y[r] = acc
            if any(y) and span.insert(y):
                queue.append(y)
    return span.dim


def _nonzero_combos(K, basis):
    """All nonzero linear combinations of the given vectors."""
    n = len(basis)
    for code in range(1, K.order ** n):
        v = [0] * len(basis[0])
        c = code
        for b in basis:
            coef = c % K.order
            c //= K.order
            if coef:
                for i, x in enumerate(b):
                    v[i] ^= K.mul(coef, x)
        if any(v):
            yield v


def _simple_norton(L: LieAlg, seed: int = 0, attempts: int = 60):
    """Norton-style irreducibility test on the adjoint module.

    L is simple iff dim >= 2 and the adjoint module is irreducible over
    the envelope of ad L.  Certificate: pick z in the envelope with small
    nonzero nullity; if every nonzero kernel vector of z spins to the
    whole module and every nonzero kernel vector of z^T spins to the
    whole dual module, the module is irreducible; any proper spin
    exhibits a proper ideal (or its annihilator).
    """
    if L.dim < 2:
        return False
    if derived_series(L)[0][1] < L.dim:
        return False
    K = L.field
    gens = [_adjoint_action(L, b) for b in range(L.dim)]
    gens_t = [mat_transpose(g) for g in gens]
    rng = random.Random(seed)
    for _ in range(attempts):
        z = _random_envelope_element(L, rng)
        ker = kernel(K, z)
        if not 1 <= len(ker) <= 3:
            continue
        for v in _nonzero_combos(K, ker):
            if _spin_module(L, gens, v) < L.dim:
                return False
        ker_t = kernel(K, mat_transpose(z))
        if len(ker_t) > 3:
            continue
        for u in _nonzero_combos(K, ker_t):
            if _spin_module(L, gens_t, u) < L.dim:
                return False
        return True
    raise RuntimeError("no envelope element of small nullity found")


def is_simple(L: LieAlg, method: str = "auto", seed: int = 0) -> bool:
    if method == "exhaustive":
        return _simple_exhaustive(L)
    if method == "norton":
        return _simple_norton(L, seed)
    if method != "auto":
        raise ValueError("method must be exhaustive, norton, or auto")
    norton = _simple_norton(L, seed)
    if L.field.k == 1 and L.dim <= SPIN_DIM_LIMIT:
        exhaustive = _simple_exhaustive(L)
        if exhaustive != norton:
            raise RuntimeError("simplicity certifiers disagree")
    return norton


@dataclass(frozen=True)
class MinRankResult:
    R: int
    argmin: tuple  # projective representatives, as coordinate tuples
    mode: str
    exact: bool


def _projective(K, v):
    lead = next(c for c in v if c)
    inv = K.inv(lead)
    return tuple(K.mul(inv, c) for c in v)


def min_ad_rank(L: LieAlg, mode: str = "exhaustive", seed: int = 0,
                samples: int = 500) -> MinRankResult:
    """min over nonzero v of dim Im(ad v), with the attaining set.

    exhaustive: every nonzero vector (GF(2), dim <= 16); homogeneous:
    nonzero elements of each graded component (sufficient for the value
    by lowest-term reduction); sampled: upper bound only.
    """
    K = L.field
    if mode == "exhaustive":
        if K.k != 1 or L.dim > EXHAUSTIVE_DIM_LIMIT:
            raise ValueError(
                f"exhaustive mode needs GF(2) and dim <= {EXHAUSTIVE_DIM_LIMIT}"
            )
        admats, _, d = _kernels.pack_ad_tables(L)
        best, codes = _kernels.min_rank_sweep(admats, d)
        arg = tuple(tuple((c >> i) & 1 for i in range(d)) for c in codes)
        return MinRankResult(best, arg, "exhaustive", True)
    if mode == "homogeneous":
        comps: dict = {}
        for i, t in enumerate(L.degrees):
            comps.setdefault(t, []).append(i)
        best = None
        arg = set()
        for idxs in comps.values():
            if K.order ** len(idxs) > HOMOGENEOUS_ENUM_LIMIT:
                raise ValueError("homogeneous component too large to enumerate")
            basis = [_unit(L.dim, i) for i in idxs]
            for v in _nonzero_combos(K, basis):
                r = ad_rank(L, v)
                if best is None or r < best:
                    best = r
                    arg = {_projective(K, v)}
                elif r == best:
                    arg.add(_projective(K, v))
        return MinRankResult(best, tuple(sorted(arg)), "homogeneous", True)
    if mode == "sampled":
        rng = random.Random(seed)
        best = None
        arg = set()
        for _ in range(samples):
            v = [rng.randrange(K.order) for _ in range(L.dim)]
            if not any(v):
                continue
            r = ad_rank(L, v)
            if best is None or r < best:
                best = r
                arg = {_projective(K, v)}
            elif r == best:
                arg.add(_projective(K, v))
        return MinRankResult(best, tuple(sorted(arg)), "sampled", False)
    raise ValueError("mode must be exhaustive, homogeneous, or sampled")


def grading_profile(L: LieAlg):
    """{Lie degree: component dimension}."""
    out: dict = {}
    for t in L.degrees:
        out[t] = out.get(t, 0) + 1
    return dict(sorted(out.items()))


def filtration(L: LieAlg):
    """{basis label: filtration index (its Lie degree)}."""
    return {L.basis[i]: L.degrees[i] for i in range(L.dim)}


def graded_algebra(L: LieAlg) -> LieAlg:
    """Associated graded algebra: brackets truncated to degree i+j."""
    sc = {}
    for (a, b), entries in L.sc.items():
        t = L.degrees[a] + L.degrees[b]
        kept = tuple((g, c) for g, c in entries if L.degrees[g] == t)
        if kept:
            sc[(a, b)] = kept
    return LieAlg(L.field, L.basis, L.degrees, sc, L.heights,
                  dict(L.meta, graded=True))


def top_line(L: LieAlg):
    """The line spanned by the top monomial x-bar; needs heights metadata."""
    if L.heights is None:
        raise ValueError("algebra has no heights metadata")
    xbar = tuple((1 << m) - 1 for m in L.heights)
    return [_unit(L.dim, L.basis.index(xbar))]


def normalizer_of_span(L: LieAlg, rows):
    """Basis of {v | {v, s} in span(rows) for every s}."""
    K = L.field
    span = Subspace(K, L.dim)
    for r in rows:
        span.insert(r)
    cons = []
    for s in span.basis():
        cols = [span.reduce(L.bracket_vec(_unit(L.dim, a), s))
                for a in range(L.dim)]
        for g in range(L.dim):
            row = [cols[a][g] for a in range(L.dim)]
            if any(row):
                cons.append(row)
    if not cons:
        return [_unit(L.dim, i) for i in range(L.dim)]
    return kernel(K, cons)


def transform_algebra(L: LieAlg, P) -> LieAlg:
    """Rewrite L in the basis whose j-th vector is column j of P."""
    K = L.field
    inv = mat_inverse(K, P)
    if inv is None:
        raise ValueError("basis change is singular")
    cols = [[P[i][j] for i in range(L.dim)] for j in range(L.dim)]
    sc = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            w = L.bracket_vec(cols[a], cols[b])
            coords = [0] * L.dim
            for g in range(L.dim):
                acc = 0
                for i in range(L.dim):
                    if inv[g][i] and w[i]:
                        acc ^= K.mul(inv[g][i], w[i])
                coords[g] = acc
            entry = tuple((g, c) for g, c in enumerate(coords) if c)
            if entry:
                sc[(a, b)] = entry
    labels = tuple(("combo", ((L.basis[0], j),)) for j in range(L.dim))
    return LieAlg(K, labels, L.degrees, sc, None, {})


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism-invariant record; distinct fingerprints certify
    non-isomorphism (the converse is not claimed)."""

    dim: int
    derived_dims: tuple
    center_dim: int
    simple: bool
    R: int | None
    graded_dims: tuple | None
    normalizer_top_dim: int | None

    def core(self):
        return (self.dim, self.derived_dims, self.center_dim, self.simple, self.R)


def fingerprint(L: LieAlg, seed: int = 0) -> Fingerprint:
    dims, _ = derived_series(L)
    if L.field.k == 1 and L.dim <= EXHAUSTIVE_DIM_LIMIT:
        R = min_ad_rank(L, "exhaustive").R
    else:
        try:
            R = min_ad_rank(L, "homogeneous").R
        except (ValueError, TypeError):
            R = None
    graded = None
    if L.meta.get("variant") in ("P", "Ptilde"):
        graded = tuple(grading_profile(L).values())
    ntop = None
    if L.heights is not None:
        try:
            ntop = len(normalizer_of_span(L, top_line(L)))
        except ValueError:
            ntop = None
    return Fingerprint(L.dim, tuple(dims), len(center(L)),
                       is_simple(L, seed=seed), R, graded, ntop)


def fingerprints_distinct(fa: Fingerprint, fb: Fingerprint) -> bool:
    """True if some shared certified field differs."""
    if fa.core() != fb.core():
        # None fields are uncertified, not evidence of difference
        for x, y in zip(fa.core(), fb.core()):
            if x is not None and y is not None and x != y:
                return True
        return False
    for x, y in ((fa.graded_dims, fb.graded_dims),
                 (fa.normalizer_top_dim, fb.normalizer_top_dim)):
        if x is not None and y is not None and x != y:
            return True
    return False
