"""Flagged symmetric bilinear forms on a 3-space over GF(2^k).

A pair is a flag (recorded by the heights of the standard basis) together
with a nondegenerate non-alternating symmetric Gram matrix B.  In
characteristic 2 the quadratic values q(v) = b(v,v) satisfy
q(u+v) = q(u) + q(v) and q(cv) = c^2 q(v), so the isotropic vectors form
a hyperplane V0 cut out by a Frobenius-semilinear functional.

canonicalize produces a flag-coordinated change of basis taking B to one
of

    B1 = [[0,1,0],[1,0,0],[0,0,1]]   (hyperbolic plane + <1>)
    B2 = [[0,1,0],[1,1,0],[0,0,1]]   (only when m1 < m2, m3 outside [m1,m2])
    B3 = I                           (orthonormal)

and pairs_equivalent decides equivalence from the tags and height data;
brute_force_equivalent is the exhaustive congruence oracle over small
fields.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfield import GF
from .linalg import Subspace, kernel, rank

B1 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
B2 = ((0, 1, 0), (1, 1, 0), (0, 0, 1))
B3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
CANONICAL = {"B1": B1, "B2": B2, "B3": B3}


@dataclass(frozen=True)
class BilinPair:
    """Heights of the flag-coordinated standard basis plus the Gram matrix."""

    field: GF
    heights: tuple
    matrix: tuple  # 3x3, rows of field ints

    def __post_init__(self):
        h = tuple(int(m) for m in self.heights)
        if len(h) != 3 or any(m < 1 for m in h):
            raise ValueError("heights must be three positive integers")
        B = tuple(tuple(int(c) for c in row) for row in self.matrix)
        if len(B) != 3 or any(len(r) != 3 for r in B):
            raise ValueError("matrix must be 3x3")
        for i in range(3):
            for j in range(3):
                if B[i][j] != B[j][i]:
                    raise ValueError("matrix must be symmetric")
                if not 0 <= B[i][j] < self.field.order:
                    raise ValueError("matrix entry outside the field")
        if rank(self.field, [list(r) for r in B]) != 3:
            raise ValueError("matrix is degenerate")
        if all(B[i][i] == 0 for i in range(3)):
            raise ValueError("matrix is alternating")
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "matrix", B)

    def quad(self, v) -> int:
        """q(v) = b(v, v)."""
        K = self.field
        out = 0
        for i in range(3):
            out ^= K.mul(K.mul(v[i], v[i]), self.matrix[i][i])
        return out

    def bval(self, u, v) -> int:
        """b(u, v)."""
        K = self.field
        out = 0
        for i in range(3):
            if not u[i]:
                continue
            for j in range(3):
                if v[j]:
                    out ^= K.mul(K.mul(u[i], self.matrix[i][j]), v[j])
        return out

    def to_json_dict(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "heights": list(self.heights),
            "matrix": [list(r) for r in self.matrix],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "BilinPair":
        K = GF(d["field"]["k"], d["field"].get("irreducible_bits"))
        return BilinPair(K, tuple(d["heights"]), tuple(map(tuple, d["matrix"])))


def isotropic_hyperplane(p: BilinPair):
    """Basis of V0 = {v | b(v,v) = 0}: kernel of v -> sum_i sqrt(B_ii) v_i."""
    K = p.field
    row = [K.sqrt(p.matrix[i][i]) for i in range(3)]
    basis = kernel(K, [row])
    if len(basis) != 2:
        raise ValueError("form is alternating: q vanishes identically")
    return basis


def _flag_kernel_basis(p: BilinPair, cons):
    """Flag-coordinated basis of the joint kernel of the constraint rows.

    Returns [(vector, height)] with heights ascending; each vector first
    appears at exactly its listed flag level.
    """
    K = p.field
    out = []
    span = Subspace(K, 3)
    for j in sorted(set(p.heights)):
        rows = [list(c) for c in cons]
        for i in range(3):
            if p.heights[i] > j:
                unit = [0, 0, 0]
                unit[i] = 1
                rows.append(unit)
        vecs = kernel(K, rows) if rows else [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for v in vecs:
            if not span.contains(v):
                span.insert(v)
                out.append((v, j))
    return out


def _perp_rows(p: BilinPair, vectors):
    """Constraint rows cutting out the orthogonal complement of span(vectors)."""
    return [[p.bval(v, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
            for v in vectors]


def _scale(K: GF, c, v):
    return [K.mul(c, x) for x in v]


def _add(u, v):
    return [a ^ b for a, b in zip(u, v)]


def _pick_nonisotropic(p: BilinPair):
    """(v, height) with q(v) = 1, chosen from the flag-orthogonal chain
    V_{s_1}, V_{s_2} cap V_{s_1}^perp, ... at minimal possible height."""
    K = p.field
    levels = sorted(set(p.heights))
    s_prev = 0
    for s in levels:
        cons = _chain_constraints(p, s, s_prev)
        for v, hv in _flag_kernel_basis(p, cons):
            q = p.quad(v)
            if q:
                return _scale(K, K.inv(K.sqrt(q)), v), hv
        s_prev = s
    raise RuntimeError("no non-isotropic vector in the orthogonal chain")


def _chain_constraints(p: BilinPair, s: int, s_prev: int):
    """Rows cutting out V_s cap V_{s_prev}^perp inside V."""
    cons = [list(p.matrix[i]) for i in range(3) if p.heights[i] <= s_prev]
    for i in range(3):
        if p.heights[i] > s:
            unit = [0, 0, 0]
            unit[i] = 1
            cons.append(unit)
    return cons


def _almost_trivial(p: BilinPair) -> bool:
    return len(set(p.heights)) == 1


def _orthonormal_pair(p: BilinPair, u, w):
    """Turn a plane basis with q not identically zero into an orthonormal one."""
    K = p.field
    if not p.quad(u):
        u, w = w, u
    u = _scale(K, K.inv(K.sqrt(p.quad(u))), u)
    w = _add(w, _scale(K, p.bval(u, w), u))
    w = _scale(K, K.inv(K.sqrt(p.quad(w))), w)
    return u, w


def canonicalize(p: BilinPair):
    """(tag, change, heights): columns of change are the new basis, with
    change^T B change equal to the canonical matrix of the tag and column
    j lying in the flag subspace of the reported height j."""
    K = p.field
    if _almost_trivial(p):
        v, hv = _pick_nonisotropic(p)
        plane = _flag_kernel_basis(p, _perp_rows(p, [v]))
        (u, hu), (w, hw) = plane
        if p.quad(u) or p.quad(w):
            u, w = _orthonormal_pair(p, u, w)
        else:
            # hyperbolic plane: v+u, v+w, v+u+w is orthonormal
            u0 = _scale(K, K.inv(p.bval(u, w)), u)
            f1, f2 = _add(v, u0), _add(v, w)
            v = _add(f1, w)
            u, w = f1, f2
        return _finish(p, "B3", [u, w, v], [hu, hw, hv])

    v, hv = _pick_nonisotropic(p)
    plane = _flag_kernel_basis(p, _perp_rows(p, [v]))
    (u, hu), (w, hw) = plane
    qu, qw = p.quad(u), p.quad(w)
    if qu or qw:
        if qu or hu == hw:
            u, w = _orthonormal_pair(p, u, w)
            return _finish(p, "B3", [u, w, v], [hu, hw, hv])
        # q(u) = 0, q(w) != 0, h(u) < h(w): the M1 plane
        w = _scale(K, K.inv(K.sqrt(qw)), w)
        u = _scale(K, K.inv(p.bval(u, w)), u)
        if hu <= hv <= hw:
            # B2 -> B1 rewrite: e1, e2 + e3, e3 + e1
            return _finish(p, "B1", [u, _add(w, v), _add(v, u)],
                           [hu, max(hw, hv), max(hv, hu)])
        return _finish(p, "B2", [u, w, v], [hu, hw, hv])
    # q = 0 on the plane basis: hyperbolic, tag B1
    u = _scale(K, K.inv(p.bval(u, w)), u)
    return _finish(p, "B1", [u, w, v], [hu, hw, hv])


def _finish(p: BilinPair, tag: str, cols, hs):
    if tag == "B3":
        order = sorted(range(3), key=lambda i: hs[i])
        cols = [cols[i] for i in order]
        hs = [hs[i] for i in order]
    change = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    target = CANONICAL[tag]
    for a in range(3):
        for b in range(3):
            if p.bval(cols[a], cols[b]) != target[a][b]:
                raise RuntimeError("canonicalization produced a wrong Gram matrix")
    if sorted(hs) != sorted(p.heights):
        raise RuntimeError("canonicalization permuted the flag badly")
    for j in range(3):
        for i in range(3):
            if cols[j][i] and p.heights[i] > hs[j]:
                raise RuntimeError("change of basis is not flag-coordinated")
    return tag, change, tuple(hs)


def n_invariants(p: BilinPair):
    """n_r = dim(V_{s_r} cap V_{s_{r-1}}^perp) - dim of its isotropic part,
    over the distinct sorted height thresholds, zero-padded to length 3."""
    K = p.field
    iso_row = [K.sqrt(p.matrix[i][i]) for i in range(3)]
    levels = sorted(set(p.heights))
    out = []
    s_prev = 0
    for s in levels:
        cons = _chain_constraints(p, s, s_prev)
        d = 3 - rank(K, cons) if cons else 3
        d0 = 3 - rank(K, cons + [iso_row]) if cons else 2
        out.append(d - d0)
        s_prev = s
    while len(out) < 3:
        out.append(0)
    return tuple(out)


def pairs_equivalent(p: BilinPair, q: BilinPair) -> bool:
    """Equivalence of flagged pairs via canonical tags and heights."""
    tag_p, _, hp = canonicalize(p)
    tag_q, _, hq = canonicalize(q)
    if tag_p != tag_q:
        return False
    if tag_p == "B1":
        return sorted(hp[:2]) == sorted(hq[:2]) and hp[2] == hq[2]
    if tag_p == "B2":
        return hp == hq
    return sorted(hp) == sorted(hq)


def brute_force_equivalent(p: BilinPair, q: BilinPair, max_order: int = 4) -> bool:
    """Exhaustive search for a flag-compatible congruence P^T B' P = B."""
    K = p.field
    if K != q.field:
        raise ValueError("pairs live over different fields")
    if K.order > max_order:
        raise ValueError(
            f"brute force supports field order <= {max_order}, got {K.order}"
        )
    if sorted(p.heights) != sorted(q.heights):
        return False
    # column j of P is the image of e_j; it must lie in V'_{m_j}
    slots = [(i, j) for j in range(3) for i in range(3)
             if q.heights[i] <= p.heights[j]]
    n = len(slots)
    for code in range(K.order ** n):
        P = [[0] * 3 for _ in range(3)]
        c = code
        for i, j in slots:
            P[i][j] = c % K.order
            c //= K.order
        cols = [[P[i][j] for i in range(3)] for j in range(3)]
        if rank(K, cols) != 3:
            continue
        ok = True
        for a in range(3):
            for b in range(a, 3):
                if q.bval(cols[a], cols[b]) != p.matrix[a][b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
