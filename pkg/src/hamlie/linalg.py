"""Dense linear algebra over GF(2^k).

Matrices are lists of rows; entries are field ints.  For k = 1 the hot
paths elsewhere use bit-packed rows (see _kernels); these routines are
the general, exact reference implementations.
"""

from __future__ import annotations

from .gfield import GF


def mat_mul(field: GF, a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            if a[i][k]:
                f = a[i][k]
                row = b[k]
                oi = out[i]
                for j in range(p):
                    if row[j]:
                        oi[j] ^= field.mul(f, row[j])
    return out


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_inverse(field: GF, m):
    """Inverse of a square matrix, or None if singular."""
    n = len(m)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col]), None)
        if piv is None:
            return None
        a[row], a[piv] = a[piv], a[row]
        inv = field.inv(a[row][col])
        a[row] = [field.mul(inv, v) for v in a[row]]
        for r in range(n):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [v ^ field.mul(f, w) for v, w in zip(a[r], a[row])]
        row += 1
    return [r[n:] for r in a]


def rref(field: GF, rows):
    """(reduced rows, pivot columns); zero rows dropped."""
    a = [list(r) for r in rows]
    ncols = len(a[0]) if a else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = field.inv(a[row][col])
        a[row] = [field.mul(inv, v) for v in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [v ^ field.mul(f, w) for v, w in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a[:row], pivots


def rank(field: GF, rows) -> int:
    return len(rref(field, rows)[0])


def solve(field: GF, a, b):
    """One solution x of A x = b, or None.  A: m x n rows, b: length m."""
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [list(a[i]) + [b[i]] for i in range(m)]
    red, pivots = rref(field, aug)
    x = [0] * n
    for row, col in zip(red, pivots):
        if col == n:
            return None  # inconsistent
        x[col] = row[n]
    return x


def kernel(field: GF, a):
    """Basis of the right null space of A (rows of length n)."""
    m = len(a)
    n = len(a[0]) if m else 0
    red, pivots = rref(field, a)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, col in zip(red, pivots):
            v[col] = row[f]  # -row[f], sign trivial in char 2
        basis.append(v)
    return basis


class Subspace:
    """Incremental row-echelon span over GF(2^k)."""

    def __init__(self, field: GF, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list = []      # echelonized, leading coeff 1
        self.pivots: list = []    # pivot column per row

    def reduce(self, vec):
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                for j in range(p, self.ncols):
                    if row[j]:
                        v[j] ^= self.field.mul(f, row[j])
        return v

    def insert(self, vec) -> bool:
        """Add vec to the span; True if the dimension grew."""
        v = self.reduce(vec)
        p = next((j for j, c in enumerate(v) if c), None)
        if p is None:
            return False
        inv = self.field.inv(v[p])
        v = [self.field.mul(inv, c) for c in v]
        self.rows.append(v)
        self.pivots.append(p)
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    def contains(self, vec) -> bool:
        return all(c == 0 for c in self.reduce(vec))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]
