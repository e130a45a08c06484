"""Brute-force ground truth from the modular representation theory of Z/pZ.

Representations of Z/pZ over F_p are unipotent matrices; ``M_a`` is the
single Jordan block of size ``a``.  Jordan types are read off from rank
sequences, ``#{blocks of size >= s} = rank((g-1)^(s-1)) - rank((g-1)^s)``,
and semisimplification drops the size-``p`` blocks.

Symmetric powers have two independent constructions:

``literal``
    The matrix of ``S^n(M_a)`` on the degree-``n`` monomial basis (graded
    lexicographic order), built from the upper-triangular Jordan block, and
    its rank sequence.

``graded``
    ``M_a`` realised as polynomials of degree ``< a`` on F_p under the
    translation ``f(x) -> f(x+1)``.  The scalings ``x -> cx`` normalise the
    translation group, so they grade ``S^n`` by total weight mod ``p-1``.
    The operator ``-sum_c c^{-1} g^c`` equals ``(g-1)`` times a unit and has
    degree ``-1`` for this grading; the norm ``sum_t g^t`` has degree 0.
    Ranks then split into blocks of size about ``dim/(p-1)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .errors import DegreeTooLargeError, NotUnipotentError, SizeOutOfRangeError
from .ring import VerClass, check_prime

# Dimensions up to this size use the literal construction under method="auto".
LITERAL_MAX_DIM = 400
# Weight classes at least this long are compressed before elimination.
SKETCH_MIN_DIM = 20000
SKETCH_NNZ = 4
SKETCH_SLACK = 48


@dataclass(frozen=True)
class JordanType:
    """Multiset of Jordan block sizes (eigenvalue 1) of a Z/pZ-module."""

    p: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        blocks = tuple(sorted((int(b) for b in self.blocks), reverse=True))
        for b in blocks:
            if not 1 <= b <= self.p:
                raise SizeOutOfRangeError(f"block size {b} outside 1..{self.p}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_counts(cls, p: int, counts: dict[int, int]) -> "JordanType":
        return cls(p, tuple(s for s, c in counts.items() for _ in range(c)))

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.blocks:
            out[b] = out.get(b, 0) + 1
        return out

    def __str__(self) -> str:
        return "{" + ",".join(str(b) for b in self.blocks) + "}"

    def to_json(self) -> dict:
        return {"p": self.p, "blocks": list(self.blocks)}

    @classmethod
    def from_json(cls, data) -> "JordanType":
        return cls(int(data["p"]), tuple(int(b) for b in data["blocks"]))


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Square matrix with entries reduced mod p."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"FpMatrix must be square, got shape {a.shape}")
        a = np.mod(a, self.p)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.tobytes()))


def _check_size(a: int, p: int) -> None:
    if not 1 <= a <= p:
        raise SizeOutOfRangeError(f"block size {a} outside 1..{p}")


def unipotent_block(a: int, p: int) -> FpMatrix:
    """``M_a``: identity plus ones on the superdiagonal."""
    check_prime(p)
    _check_size(a, p)
    return FpMatrix(p, np.eye(a, dtype=np.int64) + np.eye(a, k=1, dtype=np.int64))


def _nilpotent_ranks(t: np.ndarray, p: int, limit: int) -> list[int]:
    """``[rank(t^0), rank(t^1), ...]`` until the rank hits 0 or ``limit`` powers."""
    n = t.shape[0]
    ranks = [n]
    img = np.ascontiguousarray(t % p)
    for _ in range(limit):
        if img.shape[1] == 0:
            ranks.append(0)
            break
        basis = _accel.column_space(img, p)
        ranks.append(basis.shape[1])
        if basis.shape[1] == 0:
            break
        img = _accel.matmul_mod(t, basis, p)
    return ranks


def _counts_from_ranks(ranks: Sequence[int]) -> dict[int, int]:
    r = list(ranks) + [0, 0]
    counts = {}
    for s in range(1, len(ranks) + 1):
        c = (r[s - 1] - r[s]) - (r[s] - r[s + 1])
        if c:
            counts[s] = c
    return counts


def jordan_type_of_unipotent(g: FpMatrix | np.ndarray, p: int | None = None) -> JordanType:
    """Jordan type of a unipotent ``g`` with ``(g - 1)^p = 0``.

    Raises :class:`NotUnipotentError` otherwise.
    """
    if not isinstance(g, FpMatrix):
        if p is None:
            raise TypeError("p is required for a bare array")
        g = FpMatrix(p, g)
    p = g.p
    t = (g.entries - np.eye(g.n, dtype=np.int64)) % p
    ranks = _nilpotent_ranks(t, p, p)
    if ranks[-1] != 0:
        raise NotUnipotentError("(g - 1)^p != 0")
    return JordanType.from_counts(p, _counts_from_ranks(ranks))


def tensor_jordan(a: int, b: int, p: int) -> JordanType:
    """Jordan type of ``M_a (x) M_b`` from the Kronecker product of the blocks."""
    check_prime(p)
    _check_size(a, p)
    _check_size(b, p)
    g = np.kron(unipotent_block(a, p).entries, unipotent_block(b, p).entries)
    return jordan_type_of_unipotent(FpMatrix(p, g))


def semisimplify(t: JordanType) -> VerClass:
    """Drop the negligible size-``p`` blocks; block size ``i`` becomes ``L_i``."""
    mult = [0] * (t.p - 1)
    for b in t.blocks:
        if b < t.p:
            mult[b - 1] += 1
    return VerClass(t.p, tuple(mult))


# ------------------------------------------------------------ monomials


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree, graded-lex order (``x_1^d`` first)."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


@dataclass(frozen=True, eq=False)
class _MonomialTables:
    nvars: int
    top: int
    off: np.ndarray  # off[d] = global index of the first degree-d monomial
    mul: np.ndarray  # mul[idx, l] = global index of (monomial idx) * y_l
    top_monomials: tuple[tuple[int, ...], ...]
    words: np.ndarray  # one row per top-degree monomial: its variables, sorted


@functools.lru_cache(maxsize=32)
def _tables(nvars: int, top: int) -> _MonomialTables:
    levels = [monomials(nvars, d) for d in range(top + 1)]
    off = np.zeros(top + 3, dtype=np.int64)
    for d in range(top + 1):
        off[d + 1] = off[d] + len(levels[d])
    off[top + 2] = off[top + 1]
    mul = np.full((int(off[top]), max(nvars, 1)), -1, dtype=np.int64)
    for d in range(top):
        nxt = {m: int(off[d + 1]) + j for j, m in enumerate(levels[d + 1])}
        base = int(off[d])
        for j, m in enumerate(levels[d]):
            row = mul[base + j]
            for var in range(nvars):
                bumped = m[:var] + (m[var] + 1,) + m[var + 1:]
                row[var] = nxt[bumped]
    words = np.array(
        [[var for var, e in enumerate(m) for _ in range(e)] for m in levels[top]],
        dtype=np.int64,
    ).reshape(len(levels[top]), top)
    return _MonomialTables(nvars, top, off, mul, tuple(levels[top]), words)


def _linear_forms(columns: Sequence[dict[int, int]], p: int):
    nvars = len(columns)
    width = max((len(c) for c in columns), default=1) or 1
    idx = np.zeros((nvars, width), dtype=np.int64)
    coef = np.zeros((nvars, width), dtype=np.int64)
    length = np.zeros(nvars, dtype=np.int64)
    for k, col in enumerate(columns):
        items = [(l, c % p) for l, c in sorted(col.items()) if c % p]
        length[k] = len(items)
        for t, (l, c) in enumerate(items):
            idx[k, t] = l
            coef[k, t] = c
    return idx, coef, length


def _sym_power_columns(columns: Sequence[dict[int, int]], degree: int, p: int, rows=None) -> np.ndarray:
    """Rows of the result are the images of the top monomials ``rows`` (all by default)
    under ``S^degree`` of the linear map whose ``k``-th column is ``columns[k]``."""
    tabs = _tables(len(columns), degree)
    words = tabs.words if rows is None else tabs.words[rows]
    if degree == 0:
        return np.ones((len(words), 1), dtype=np.int64)
    idx, coef, length = _linear_forms(columns, p)
    return _accel.sym_columns(np.ascontiguousarray(words), idx, coef, length, tabs.mul, tabs.off, p, degree)


def sym_power_matrix(a: int, n: int, p: int) -> FpMatrix:
    """Matrix of ``S^n(M_a)`` in the graded-lex monomial basis."""
    check_prime(p)
    _check_size(a, p)
    block = [{k: 1} if k == 0 else {k: 1, k - 1: 1} for k in range(a)]
    return FpMatrix(p, _sym_power_columns(block, n, p).T)


def _check_sym_args(a: int, n: int, p: int) -> None:
    check_prime(p)
    _check_size(a, p)
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n >= p:
        raise DegreeTooLargeError(f"S^{n} with n >= p={p} is not computed by the oracle")


# ------------------------------------------------------- graded model


def _pascal_forms(a: int) -> list[dict[int, int]]:
    # translation f(x) -> f(x+1) on x^k, k < a
    return [{l: comb(k, l) for l in range(k + 1)} for k in range(a)]


class _GradedSym:
    """``S^n(M_a)`` in the translation model with its weight grading."""

    def __init__(self, a: int, n: int, p: int):
        self.a, self.n, self.p = a, n, p
        tabs = _tables(a, n)
        self.weights = np.array([sum(k * e for k, e in enumerate(m)) for m in tabs.top_monomials], dtype=np.int64)
        self.dim = len(self.weights)
        mod = p - 1
        self.cls = self.weights % mod
        self.members = [np.flatnonzero(self.cls == r) for r in range(mod)]
        self.forms = _pascal_forms(a)

    def columns(self, rows: np.ndarray) -> np.ndarray:
        return _sym_power_columns(self.forms, self.n, self.p, rows)

    def _chunks(self, rows: np.ndarray, size: int) -> Iterable[np.ndarray]:
        for s in range(0, len(rows), size):
            yield rows[s: s + size]

    def block(self, source: int, target: int, chunk: int = 256) -> np.ndarray:
        """Weight-lowering part of ``g`` from class ``source`` to class ``target``.

        Row ``j`` is the image of the ``j``-th source monomial, restricted to
        target monomials of strictly smaller weight.
        """
        src, dst = self.members[source], self.members[target]
        out = np.zeros((len(src), len(dst)), dtype=np.int64)
        w_dst = self.weights[dst]
        pos = 0
        for rows in self._chunks(src, chunk):
            cols = self.columns(rows)[:, dst]
            mask = w_dst[None, :] < self.weights[rows][:, None]
            out[pos: pos + len(rows)] = np.where(mask, cols, 0)
            pos += len(rows)
        return out

    def nilpotent_ranks(self) -> list[int]:
        """Ranks of ``X^s`` where ``X = -sum_c c^{-1} g^c`` (degree -1)."""
        p, mod = self.p, self.p - 1
        # xs[r]: matrix of X from class r to class r-1 (acting on column vectors)
        xs = [self.block(r, (r - 1) % mod).T for r in range(mod)]
        ranks = [self.dim]
        images = [None] * mod  # None means the whole class
        for _ in range(p):
            nxt = [None] * mod
            total = 0
            for r in range(mod):
                src = xs[r] if images[r] is None else _accel.matmul_mod(xs[r], images[r], p)
                basis = _accel.column_space(src, p) if src.size else np.zeros((xs[r].shape[0], 0), dtype=np.int64)
                nxt[(r - 1) % mod] = basis
                total += basis.shape[1]
            images = nxt
            ranks.append(total)
            if total == 0:
                break
        return ranks

    def class_norm_rows(self, r: int, rows: np.ndarray, sel=None, sel_coef=None, width=None) -> np.ndarray:
        """Images under the norm of the class-``r`` monomials ``rows``, restricted to class ``r``.

        Optional ``sel``/``sel_coef`` (one row per class member) compress the
        class coordinates into ``width`` columns.
        """
        tabs = _tables(self.a, self.n)
        dst = self.members[r]
        if sel is None:
            sel = np.arange(len(dst), dtype=np.int64)[:, None]
            sel_coef = np.ones_like(sel)
            width = len(dst)
        full_sel = np.full((self.dim, sel.shape[1]), -1, dtype=np.int64)
        full_coef = np.zeros((self.dim, sel.shape[1]), dtype=np.int64)
        full_sel[dst] = sel
        full_coef[dst] = sel_coef
        idx, coef, length = _linear_forms(self.forms, self.p)
        words = np.ascontiguousarray(tabs.words[rows])
        return _accel.sym_columns(
            words, idx, coef, length, tabs.mul, tabs.off, self.p, self.n,
            full_sel, full_coef, self.weights, self.weights[rows], width,
        )

    def norm_rank(self, chunk: int = 256) -> int:
        """Rank of ``sum_t g^t``, computed class by class."""
        total = 0
        for r in range(self.p - 1):
            src = self.members[r]
            if len(src) == 0:
                continue
            span = _accel.Span(len(src), self.p, capacity=max(len(src) // self.p + 8, 8))
            for rows in self._chunks(src, chunk):
                span.add(self.class_norm_rows(r, rows))
            total += span.dim
        return total

    def free_certificate(self, chunk: int = 256, sketch_min: int | None = None, seed: int = 0) -> bool | None:
        """Try to prove that the module is free.

        For a free module, the norm has rank ``d_r - dim/p`` on class ``r``
        (one per projective summand whose head lies in class ``r``), and
        the total rank of the norm never exceeds ``dim/p``.  So reaching
        these targets in every class proves freeness.  The search stops as
        soon as a class reaches its target; long classes are compressed by
        a sparse random projection, which can only lower ranks.

        Returns True (proved free), False (proved not free) or None
        (targets not reached through a projection; inconclusive).
        """
        p = self.p
        if self.dim % p:
            return False
        quota = self.dim // p
        sketch_min = SKETCH_MIN_DIM if sketch_min is None else sketch_min
        rng = np.random.default_rng(seed)
        inconclusive = False
        for r in range(p - 1):
            src = self.members[r]
            target = len(src) - quota
            if target < 0:
                return False
            if target == 0:
                continue
            # heavy monomials first: their norm images are the longest
            order = src[np.argsort(-self.weights[src], kind="stable")]
            sketched = len(src) >= sketch_min
            if sketched:
                width = target + SKETCH_SLACK
                sel = rng.integers(0, width, size=(len(src), SKETCH_NNZ), dtype=np.int64)
                sel_coef = rng.integers(1, p, size=(len(src), SKETCH_NNZ), dtype=np.int64)
            else:
                width, sel, sel_coef = len(src), None, None
            span = _accel.Span(width, p, capacity=target + chunk)
            for rows in self._chunks(order, chunk):
                span.add(self.class_norm_rows(r, rows, sel, sel_coef, width))
                if span.dim >= target:
                    break
            if span.dim < target:
                if not sketched:
                    return False
                inconclusive = True
        return None if inconclusive else True


def sym_power_jordan(a: int, n: int, p: int, method: str = "auto") -> JordanType:
    """Jordan type of ``S^n(M_a)`` for ``0 <= n <= p-1``.

    ``method`` is ``"literal"``, ``"graded"``, ``"tilting"`` or ``"auto"``
    (literal for small dimensions, graded otherwise).  The tilting method
    does no linear algebra; see :func:`sym_power_jordan_tilting`.
    """
    _check_sym_args(a, n, p)
    dim = comb(a + n - 1, n)
    if method == "auto":
        method = "literal" if dim <= LITERAL_MAX_DIM or p == 2 else "graded"
    if method == "literal":
        return jordan_type_of_unipotent(sym_power_matrix(a, n, p))
    if method == "tilting":
        return sym_power_jordan_tilting(a, n, p)
    if method != "graded":
        raise ValueError(f"unknown method {method!r}")
    ranks = _GradedSym(a, n, p).nilpotent_ranks()
    return JordanType.from_counts(p, _counts_from_ranks(ranks))


def gaussian_binomial(m: int, k: int) -> list[int]:
    """Coefficients of the q-binomial ``[m choose k]_q``, lowest degree first."""
    if not 0 <= k <= m:
        return [0]
    rows = [[1]]  # rows[j] = [r choose j]_q for the current r
    for r in range(1, m + 1):
        new = [[1]]
        for j in range(1, min(r, k) + 1):
            left = rows[j - 1]
            right = rows[j] if j < len(rows) else [0]
            c = [0] * max(len(left), len(right) + j)
            for d, v in enumerate(left):
                c[d] += v
            for d, v in enumerate(right):
                c[d + j] += v
            while len(c) > 1 and c[-1] == 0:
                c.pop()
            new.append(c)
        rows = new
    return rows[k]


def sym_power_jordan_tilting(a: int, n: int, p: int) -> JordanType:
    """Jordan type of ``S^n(M_a)`` from SL_2 tilting theory, without matrices.

    ``M_a`` is the restriction of the simple SL_2-module ``L(a-1)`` to the
    unipotent subgroup Z/pZ.  For ``n < p`` the symmetrizer is an idempotent,
    so ``S^n L(a-1)`` is a summand of a tensor power of a tilting module and
    is itself tilting.  Its weights are read off the q-binomial
    ``[a+n-1 choose n]``.  A summand ``T(m)`` with ``m <= p-2`` is simple and
    restricts to the single block ``M_{m+1}``.  Every ``T(m)`` with
    ``m >= p-1`` is a summand of ``St ⊗ T(s) ⊗ T(t)^[1]``; the Steinberg
    module restricts to one block of size p, so these restrict to free modules.
    """
    from .alcove import tilting_decomposition

    _check_sym_args(a, n, p)
    dim = comb(a + n - 1, n)
    coeffs = gaussian_binomial(a + n - 1, n)
    grades = {n * (a - 1) - 2 * s: c for s, c in enumerate(coeffs) if c}
    small: dict[int, int] = {}
    for top, mult in tilting_decomposition(grades, p).items():
        if top <= p - 2:
            small[top + 1] = small.get(top + 1, 0) + mult
    rest = dim - sum(d * m for d, m in small.items())
    assert rest % p == 0
    if rest:
        small[p] = small.get(p, 0) + rest // p
    return JordanType.from_counts(p, small)


def sym_power_is_projective(a: int, n: int, p: int) -> bool:
    """Whether ``S^n(M_a)`` is a free Z/pZ-module, i.e. semisimplifies to 0.

    Every block of size ``p`` contributes exactly one to the rank of the norm
    ``sum_t g^t`` and smaller blocks contribute nothing, so the module is free
    iff that rank equals ``dim / p``.  A projected search that falls short is
    repeated without projection before answering False.
    """
    _check_sym_args(a, n, p)
    dim = comb(a + n - 1, n)
    if dim % p:
        return False
    if p == 2:
        return semisimplify(sym_power_jordan(a, n, p)).total == 0
    graded = _GradedSym(a, n, p)
    verdict = graded.free_certificate()
    if verdict is None:
        verdict = graded.free_certificate(sketch_min=dim + 1)
    return verdict


def ext_power_matrix(a: int, n: int, p: int) -> FpMatrix:
    """Matrix of ``Λ^n(M_a)`` on the basis ``e_{i_1} ^ ... ^ e_{i_n}`` (lex order)."""
    from itertools import combinations

    check_prime(p)
    _check_size(a, p)
    if not 0 <= n <= a:
        raise SizeOutOfRangeError(f"exterior degree {n} outside 0..{a}")
    g = unipotent_block(a, p).entries
    subsets = list(combinations(range(a), n))
    index = {s: j for j, s in enumerate(subsets)}
    cols = [[(i, int(g[i, k])) for i in range(a) if g[i, k]] for k in range(a)]
    out = np.zeros((len(subsets), len(subsets)), dtype=np.int64)
    for j, s in enumerate(subsets):
        terms = {(): 1}
        for k in s:
            nxt: dict[tuple[int, ...], int] = {}
            for word, c in terms.items():
                for i, v in cols[k]:
                    if i in word:
                        continue
                    w = word + (i,)
                    nxt[w] = (nxt.get(w, 0) + c * v) % p
            terms = nxt
        for word, c in terms.items():
            if not c:
                continue
            # sign of the permutation sorting the word
            inversions = sum(1 for x in range(len(word)) for y in range(x + 1, len(word)) if word[x] > word[y])
            sign = -1 if inversions % 2 else 1
            row = index[tuple(sorted(word))]
            out[row, j] = (out[row, j] + sign * c) % p
    return FpMatrix(p, out)


def ext_power_jordan(a: int, n: int, p: int) -> JordanType:
    """Jordan type of ``Λ^n(M_a)``, ``0 <= n <= a``."""
    return jordan_type_of_unipotent(ext_power_matrix(a, n, p))
