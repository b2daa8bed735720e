"""Bit-packed GF(2) sweep kernels with selectable backends.

The exhaustive structure sweeps (minimum ad-rank over all nonzero
vectors, ideal spinning from every candidate generator) are the only hot
loops in the package.  Rows of GF(2) matrices are packed into uint64
words (dimension <= 63), so a whole matrix is a length-d vector of
words and row operations are single xors.

Two interchangeable implementations are provided:

  * "numba"  - @njit-compiled loops (default when numba is installed);
  * "numpy"  - the same algorithms on numpy uint64 arrays without jit.

Selection: environment variable HAMLIE_BACKEND in {auto, numba, numpy};
`use_backend` overrides programmatically.  Both backends are exact and
must agree bit for bit; `benchmarks/bench_kernels.py` compares their
throughput.
"""

from __future__ import annotations

import os

import numpy as np

_FORCED: str | None = None


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def get_backend() -> str:
    """Active backend name: "numba" or "numpy"."""
    choice = _FORCED or os.environ.get("HAMLIE_BACKEND", "auto").lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _numba_available():
            raise RuntimeError("HAMLIE_BACKEND=numba but numba is not installed")
        return "numba"
    if choice != "auto":
        raise ValueError(f"unknown backend {choice!r}")
    return "numba" if _numba_available() else "numpy"


def use_backend(name: str | None):
    """Force a backend ("numba"/"numpy") or reset to the environment choice."""
    global _FORCED
    if name is not None and name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba', 'numpy', or None")
    _FORCED = name


def pack_ad_tables(L):
    """(admats, brk, d) for a GF(2) LieAlg.

    admats[a, g]: bitmask over b of the coefficient of e_g in {e_a, e_b},
    i.e. row g of the packed matrix of ad(e_a).
    brk[a, b]: bitmask over g of {e_a, e_b}.
    """
    if L.field.k != 1:
        raise ValueError("packed kernels require GF(2)")
    d = L.dim
    if d > 63:
        raise ValueError("packed kernels support dim <= 63")
    admats = np.zeros((d, d), dtype=np.uint64)
    brk = np.zeros((d, d), dtype=np.uint64)
    for (a, b), entries in L.sc.items():
        mask = 0
        for g, c in entries:
            mask |= 1 << g
            admats[a, g] |= np.uint64(1 << b)
            admats[b, g] |= np.uint64(1 << a)
        brk[a, b] = mask
        brk[b, a] = mask
    return admats, brk, d


# ---------------------------------------------------------------- numpy

def _rank_rows_np(rows, d: int) -> int:
    rows = rows.copy()
    r = 0
    for col in range(d):
        bit = np.uint64(1 << col)
        piv = -1
        for i in range(r, d):
            if rows[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        hit = (rows & bit).astype(bool)
        hit[r] = False
        rows[hit] ^= rows[r]
        r += 1
    return r

def _min_rank_sweep_np(admats, d: int):
    rows = np.zeros(d, dtype=np.uint64)
    best = d + 1
    arg = []
    code = 0
    for i in range(1, 1 << d):
        t = (i & -i).bit_length() - 1
        rows ^= admats[t]
        code ^= 1 << t
        r = _rank_rows_np(rows, d)
        if r < best:
            best = r
            arg = [code]
        elif r == best:
            arg.append(code)
    return best, arg

def _spin_np(brk, d: int, v: int):
    piv = np.zeros(d, dtype=np.uint64)
    count = 0
    stack = [v]
    while stack:
        x = stack.pop()
        while x:
            p = (x & -x).bit_length() - 1
            if piv[p]:
                x ^= int(piv[p])
            else:
                piv[p] = np.uint64(x)
                count += 1
                w = x
                for b in range(d):
                    y = 0
                    ww = w
                    while ww:
                        a = (ww & -ww).bit_length() - 1
                        ww &= ww - 1
                        y ^= int(brk[a, b])
                    if y:
                        stack.append(y)
                break
        if count == d:
            return d, piv
    return count, piv

def _spin_sweep_np(brk, d: int) -> int:
    for v in range(1, 1 << d):
        count, _ = _spin_np(brk, d, v)
        if count < d:
            return v
    return 0


# ---------------------------------------------------------------- numba

_NUMBA_FNS = None


def _build_numba():
    global _NUMBA_FNS
    if _NUMBA_FNS is not None:
        return _NUMBA_FNS
    from numba import njit

    @njit(cache=True)
    def rank_rows(rows, d):
        rows = rows.copy()
        r = 0
        for col in range(d):
            bit = np.uint64(1) << np.uint64(col)
            piv = -1
            for i in range(r, d):
                if rows[i] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            tmp = rows[r]
            rows[r] = rows[piv]
            rows[piv] = tmp
            for i in range(d):
                if i != r and (rows[i] & bit):
                    rows[i] ^= rows[r]
            r += 1
        return r

    @njit(cache=True)
    def min_rank_sweep(admats, d):
        rows = np.zeros(d, dtype=np.uint64)
        best = d + 1
        arg = [np.uint64(0) for _ in range(0)]
        code = np.uint64(0)
        for i in range(1, 1 << d):
            t = 0
            j = i
            while j & 1 == 0:
                j >>= 1
                t += 1
            for g in range(d):
                rows[g] ^= admats[t, g]
            code ^= np.uint64(1) << np.uint64(t)
            r = rank_rows(rows, d)
            if r < best:
                best = r
                arg = [code]
            elif r == best:
                arg.append(code)
        return best, arg

    @njit(cache=True)
    def spin(brk, d, v):
        piv = np.zeros(d, dtype=np.uint64)
        stack = np.zeros(d * d + 1, dtype=np.uint64)
        stack[0] = v
        top = 1
        count = 0
        while top > 0:
            top -= 1
            x = stack[top]
            while x:
                p = 0
                xx = x
                while xx & np.uint64(1) == np.uint64(0):
                    xx >>= np.uint64(1)
                    p += 1
                if piv[p]:
                    x ^= piv[p]
                else:
                    piv[p] = x
                    count += 1
                    for b in range(d):
                        y = np.uint64(0)
                        ww = x
                        a = 0
                        while ww:
                            if ww & np.uint64(1):
                                y ^= brk[a, b]
                            ww >>= np.uint64(1)
                            a += 1
                        if y:
                            if top >= stack.shape[0]:
                                # compact the stack through the span first
                                newtop = 0
                                for s in range(top):
                                    r = stack[s]
                                    for q in range(d):
                                        if r & (np.uint64(1) << np.uint64(q)) and piv[q]:
                                            r ^= piv[q]
                                    if r:
                                        stack[newtop] = r
                                        newtop += 1
                                top = newtop
                            stack[top] = y
                            top += 1
                    break
            if count == d:
                return d, piv
        return count, piv

    @njit(cache=True)
    def spin_sweep(brk, d):
        for v in range(1, 1 << d):
            count, _ = spin(brk, d, np.uint64(v))
            if count < d:
                return v
        return 0

    _NUMBA_FNS = {
        "rank_rows": rank_rows,
        "min_rank_sweep": min_rank_sweep,
        "spin": spin,
        "spin_sweep": spin_sweep,
    }
    return _NUMBA_FNS


# ------------------------------------------------------------- dispatch

def rank_packed(rows, d: int) -> int:
    """Rank of d packed GF(2) rows."""
    rows = np.asarray(rows, dtype=np.uint64)
    if get_backend() == "numba":
        return int(_build_numba()["rank_rows"](rows, d))
    return _rank_rows_np(rows, d)


def min_rank_sweep(admats, d: int):
    """(min over nonzero v of rank ad(v), list of attaining bitmasks)."""
    admats = np.asarray(admats, dtype=np.uint64)
    if get_backend() == "numba":
        best, arg = _build_numba()["min_rank_sweep"](admats, d)
        return int(best), sorted(int(c) for c in arg)
    best, arg = _min_rank_sweep_np(admats, d)
    return best, sorted(arg)


def spin_closure(brk, d: int, v: int):
    """(dim, packed echelon rows) of the ideal generated by bitmask v."""
    brk = np.asarray(brk, dtype=np.uint64)
    if get_backend() == "numba":
        count, piv = _build_numba()["spin"](brk, d, np.uint64(v))
    else:
        count, piv = _spin_np(brk, d, v)
    return int(count), [int(x) for x in piv if x]


def spin_sweep(brk, d: int) -> int:
    """0 if every nonzero vector generates the whole algebra, else the
    first bitmask generating a proper nonzero ideal."""
    brk = np.asarray(brk, dtype=np.uint64)
    if get_backend() == "numba":
        return int(_build_numba()["spin_sweep"](brk, d))
    return _spin_sweep_np(brk, d)
