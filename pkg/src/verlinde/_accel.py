"""Hot F_p kernels: row echelon, incremental span, symmetric-power columns.

Each kernel has a numba ``@njit`` version and a pure-numpy version.  The
numba path is used when numba imports and ``VERLINDE_NUMBA`` is not set to
``0``; set ``VERLINDE_NUMBA=0`` to force the numpy path (the benchmark in
``benchmarks/`` compares the two).

All arrays hold residues in ``0..p-1`` as int64.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_NUMBA = os.environ.get("VERLINDE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

try:
    if not _WANT_NUMBA:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised with VERLINDE_NUMBA=0
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


USE_NUMBA = HAVE_NUMBA


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------- echelon


@njit(cache=True)
def _inv_mod(a, p):
    r = 1
    e = p - 2
    b = a % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _echelon_nb(m, p):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, cols):
                t = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = t
        inv = _inv_mod(m[r, c], p)
        if inv != 1:
            for k in range(c, cols):
                m[r, k] = m[r, k] * inv % p
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                f = p - f
                for k in range(c, cols):
                    m[i, k] = (m[i, k] + f * m[r, k]) % p
        r += 1
    return r


def _echelon_np(m: np.ndarray, p: int) -> int:
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv], c:] = m[[piv, r], c:]
        inv = pow(int(m[r, c]), -1, p)
        m[r, c:] = m[r, c:] * inv % p
        below = np.flatnonzero(m[r + 1:, c]) + r + 1
        if below.size:
            m[below, c:] = (m[below, c:] - np.outer(m[below, c], m[r, c:])) % p
        r += 1
    return r


def echelon_inplace(m: np.ndarray, p: int) -> int:
    """Row-reduce ``m`` in place to echelon form over F_p; return the rank.

    The first ``rank`` rows of ``m`` afterwards span the row space.
    """
    if m.size == 0:
        return 0
    if USE_NUMBA:
        return int(_echelon_nb(m, p))
    return _echelon_np(m, p)


def rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.asarray(a, dtype=np.int64) % p
    if a.shape[0] > a.shape[1]:
        a = a.T
    return echelon_inplace(np.ascontiguousarray(a), p)


def column_space(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as columns) of the column space of ``a`` over F_p."""
    m = np.ascontiguousarray((np.asarray(a, dtype=np.int64) % p).T)
    r = echelon_inplace(m, p)
    return np.ascontiguousarray(m[:r].T)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while inner_dim * (p-1)^2 < 2^53.
    inner = a.shape[1]
    if inner * (p - 1) ** 2 >= 2**53:
        raise OverflowError("matrix too large for exact float64 product")
    prod = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
    return np.mod(prod, p).astype(np.int64)


# ------------------------------------------------------ incremental span


@njit(cache=True)
def _rref_nb(m, p):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, cols):
                t = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = t
        inv = _inv_mod(m[r, c], p)
        if inv != 1:
            for k in range(c, cols):
                m[r, k] = m[r, k] * inv % p
        for i in range(rows):
            if i == r:
                continue
            f = m[i, c]
            if f != 0:
                f = p - f
                for k in range(c, cols):
                    m[i, k] = (m[i, k] + f * m[r, k]) % p
        r += 1
    return r


def _rref_np(m: np.ndarray, p: int) -> int:
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv], c:] = m[[piv, r], c:]
        m[r, c:] = m[r, c:] * pow(int(m[r, c]), -1, p) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            m[others, c:] = (m[others, c:] - np.outer(m[others, c], m[r, c:])) % p
        r += 1
    return r


def rref_inplace(m: np.ndarray, p: int) -> int:
    """Reduced row echelon form over F_p, in place; return the rank."""
    if m.size == 0:
        return 0
    if USE_NUMBA:
        return int(_rref_nb(m, p))
    return _rref_np(m, p)


class Span:
    """Growing subspace of F_p^n, stored in reduced row echelon form.

    Vectors are added in chunks; the reduction against the current basis
    and the back-substitution into it are float64 matrix products, exact
    because every inner dimension stays below 2^53 / (p-1)^2.
    """

    def __init__(self, n: int, p: int, capacity: int = 64):
        self.n = n
        self.p = p
        self._basis = np.zeros((max(capacity, 1), n), dtype=np.float64)
        self._pivots = np.zeros(0, dtype=np.int64)
        self.dim = 0

    def _grow(self, need: int) -> None:
        cap = self._basis.shape[0]
        if need <= cap:
            return
        grown = np.zeros((max(need, 2 * cap), self.n), dtype=np.float64)
        grown[: self.dim] = self._basis[: self.dim]
        self._basis = grown

    def add(self, vecs: np.ndarray) -> int:
        """Add the rows of ``vecs``; return the new dimension."""
        p = self.p
        v = np.asarray(vecs)
        if v.ndim == 1:
            v = v[None, :]
        if v.shape[0] == 0 or self.n == 0 or self.dim == self.n:
            return self.dim
        b = self._basis[: self.dim]
        if self.dim:
            v = np.mod(v - v[:, self._pivots].astype(np.float64) @ b, p)
        v = np.ascontiguousarray(v, dtype=np.int64) % p
        r = rref_inplace(v, p)
        if r == 0:
            return self.dim
        new = v[:r].astype(np.float64)
        new_piv = np.argmax(v[:r] != 0, axis=1).astype(np.int64)
        if self.dim:
            b[:] = np.mod(b - b[:, new_piv] @ new, p)
        self._grow(self.dim + r)
        self._basis[self.dim: self.dim + r] = new
        self._pivots = np.concatenate([self._pivots, new_piv])
        self.dim += r
        return self.dim


# ------------------------------------------- symmetric power columns


@njit(cache=True)
def _sym_columns_nb(words, lin_idx, lin_coef, lin_len, mul, off, p, top, sel, sel_coef, wtop, wsrc, width):
    """Coefficients of prod_k lin[word[k]] for every word (row), scattered.

    ``words`` rows are non-decreasing variable lists in lexicographic order,
    so consecutive words share prefixes and the partial products are kept on
    a stack.  The coefficient of top monomial ``j`` is added, times
    ``sel_coef[j, s]``, to output column ``sel[j, s]`` (skipped when that is
    negative or when ``wtop[j] >= wsrc[row]``).  Returns ``(len(words), width)``.
    """
    nwords, depth = words.shape
    ns = sel.shape[1]
    out = np.zeros((nwords, width), dtype=np.int64)
    # stack holds the partial products of degree < top in a flat buffer
    stack = np.zeros(off[top] + 1, dtype=np.int64)
    stack[0] = 1
    prev = np.full(depth, -1, dtype=np.int64)
    base = off[top]
    for w in range(nwords):
        start = 0
        while start < depth - 1 and words[w, start] == prev[start]:
            start += 1
        for d in range(start, depth - 1):
            k = words[w, d]
            for j in range(off[d + 1], off[d + 2]):
                stack[j] = 0
            for idx in range(off[d], off[d + 1]):
                c = stack[idx]
                if c == 0:
                    continue
                for t in range(lin_len[k]):
                    j = mul[idx, lin_idx[k, t]]
                    stack[j] = (stack[j] + c * lin_coef[k, t]) % p
            prev[d] = k
        prev[depth - 1] = -1
        k = words[w, depth - 1]
        ws = wsrc[w]
        for idx in range(off[depth - 1], off[depth]):
            c = stack[idx]
            if c == 0:
                continue
            for t in range(lin_len[k]):
                j = mul[idx, lin_idx[k, t]] - base
                if wtop[j] >= ws:
                    continue
                v = c * lin_coef[k, t]
                for s in range(ns):
                    col = sel[j, s]
                    if col >= 0:
                        out[w, col] = (out[w, col] + v * sel_coef[j, s]) % p
    return out


def _sym_columns_np(words, lin_idx, lin_coef, lin_len, mul, off, p, top, sel, sel_coef, wtop, wsrc, width):
    nwords, depth = words.shape
    out = np.zeros((nwords, width), dtype=np.int64)
    stack = np.zeros(off[top] + off[top + 1] - off[top], dtype=np.int64)
    base = off[top]
    stack[0] = 1
    prev = [-1] * depth
    for w in range(nwords):
        start = 0
        while start < depth - 1 and words[w, start] == prev[start]:
            start += 1
        for d in range(start, depth):
            k = int(words[w, d])
            lo, hi = off[d + 1], off[d + 2]
            src = stack[off[d]:off[d + 1]]
            acc = np.zeros(hi - lo, dtype=np.int64)
            for t in range(lin_len[k]):
                targets = mul[off[d]:off[d + 1], lin_idx[k, t]] - lo
                np.add.at(acc, targets, src * lin_coef[k, t])
            stack[lo:hi] = acc % p
            prev[d] = k
        prev[depth - 1] = -1
        vals = np.where(wtop < wsrc[w], stack[base:], 0)
        for s in range(sel.shape[1]):
            keep = (sel[:, s] >= 0) & (vals != 0)
            np.add.at(out[w], sel[keep, s], vals[keep] * sel_coef[keep, s])
        out[w] %= p
    return out


def sym_columns(words, lin_idx, lin_coef, lin_len, mul, off, p, top, sel=None, sel_coef=None, wtop=None, wsrc=None, width=None):
    """Images of the top-degree monomials ``words`` under a symmetric power.

    With only the first eight arguments the result is the full coefficient
    array ``(len(words), count_top)``.  ``sel``/``sel_coef`` (shape
    ``(count_top, s)``) scatter coefficients into ``width`` output columns,
    and ``wtop``/``wsrc`` keep only top monomials lighter than the source.
    """
    ntop = int(off[top + 1] - off[top])
    if sel is None:
        sel = np.arange(ntop, dtype=np.int64)[:, None]
        sel_coef = np.ones((ntop, 1), dtype=np.int64)
        width = ntop
    if wtop is None:
        wtop = np.zeros(ntop, dtype=np.int64)
        wsrc = np.ones(len(words), dtype=np.int64)
    fn = _sym_columns_nb if USE_NUMBA else _sym_columns_np
    return fn(words, lin_idx, lin_coef, lin_len, mul, off, p, top, sel, sel_coef, wtop, wsrc, int(width))
