"""Fusion in Ver_p(SL_i) by Kac-Walton folding, and restriction to Ver_p.

Weights of SL_i are partitions with at most ``i - 1`` rows; a partition with
``i`` rows is brought back by removing full columns of length ``i``.
Simple objects of Ver_p(SL_i) are the partitions inside the
``(i-1) x (p-i)`` box, which is the level ``p - i`` fundamental alcove.

Fusion: decompose the classical tensor product with the Littlewood-Richardson
rule, then move each ``nu + rho`` into the fundamental alcove of the affine
Weyl group at shifted level ``p`` (sorting, plus the affine reflection in
``v_1 - v_i = p``), with the sign of the folding element.  Weights on a wall
are dropped.

Restriction to the principal SL_2 uses the Weyl character of an alcove weight
(Freudenthal multiplicities), grades weights by ``<mu, 2 rho^vee>``, and
semisimplifies the resulting SL_2 tilting module.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Iterable, Mapping

from .errors import InvalidWeightError, RankMismatchError, RankOutOfRangeError
from .ring import VerClass, check_prime, tensor

Partition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class AlcoveWeight:
    """Simple object of Ver_p(SL_i): a partition in the ``(i-1) x (p-i)`` box.

    ``i = 1`` is allowed only for the empty weight (SL_1 is trivial).
    """

    i: int
    p: int
    parts: Partition

    def __post_init__(self):
        check_prime(self.p)
        i, p = self.i, self.p
        if not 1 <= i <= max(p - 1, 1):
            raise RankOutOfRangeError(f"rank parameter i={i} outside 1..{p - 1}")
        parts = tuple(int(x) for x in self.parts)
        if len(parts) > max(i - 1, 0):
            if any(parts[i - 1:]):
                raise InvalidWeightError(f"{parts} has more than {i - 1} rows")
            parts = parts[: i - 1]
        parts = parts + (0,) * (i - 1 - len(parts))
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)) or any(x < 0 for x in parts):
            raise InvalidWeightError(f"{parts} is not a partition")
        if parts and parts[0] > p - i:
            raise InvalidWeightError(f"{parts} leaves the alcove: first row > p - i = {p - i}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.parts) + ")"

    def to_json(self) -> dict:
        return {"i": self.i, "p": self.p, "parts": list(self.parts)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AlcoveWeight":
        return cls(int(data["i"]), int(data["p"]), tuple(int(x) for x in data["parts"]))


@dataclass(frozen=True)
class DominantWeightMultiset:
    """Dominant SL_i weights with positive multiplicities (a classical character)."""

    i: int
    p: int
    entries: tuple[tuple[Partition, int], ...]

    def as_dict(self) -> dict[Partition, int]:
        return dict(self.entries)

    def weyl_dim(self) -> int:
        return sum(m * weyl_dim(nu, self.i) for nu, m in self.entries)


def _check_rank(i: int, p: int) -> None:
    check_prime(p)
    if not 2 <= i <= p - 1:
        raise RankOutOfRangeError(f"rank parameter i={i} outside 2..{p - 1} for p={p}")


def _box_partitions(rows: int, cols: int) -> list[Partition]:
    if rows == 0:
        return [()]
    out = []
    for first in range(cols + 1):
        for rest in _box_partitions(rows - 1, first):
            out.append((first,) + rest)
    return out


@functools.lru_cache(maxsize=None)
def enumerate_simples(i: int, p: int) -> tuple[AlcoveWeight, ...]:
    """All alcove weights, ordered by size and then lexicographically."""
    _check_rank(i, p)
    parts = sorted(_box_partitions(i - 1, p - i), key=lambda lam: (sum(lam), lam))
    return tuple(AlcoveWeight(i, p, lam) for lam in parts)


def plus_simples(i: int, p: int) -> tuple[AlcoveWeight, ...]:
    """Simples of Ver_p^+(SL_i); for ``i = 1`` only the empty weight."""
    if i == 1:
        return (AlcoveWeight(1, p, ()),)
    return tuple(w for w in enumerate_simples(i, p) if is_plus_weight(w))


def is_plus_weight(lam: AlcoveWeight) -> bool:
    return lam.size % lam.i == 0


# ----------------------------------------------------- classical weights


def _gl(parts: Partition, i: int) -> Partition:
    return tuple(parts) + (0,) * (i - len(parts))


def _sl(gl_weight: Partition) -> Partition:
    last = gl_weight[-1]
    return tuple(x - last for x in gl_weight[:-1])


def weyl_dim(parts: Partition, i: int) -> int:
    """Dimension of the SL_i Weyl module with highest weight ``parts``."""
    lam = _gl(parts, i)
    num = prod(lam[a] - lam[b] + b - a for a in range(i) for b in range(a + 1, i))
    den = prod(b - a for a in range(i) for b in range(a + 1, i))
    return num // den


def _horizontal_strips(shape: list[int], count: int, max_rows: int) -> Iterable[list[int]]:
    """Ways to add ``count`` boxes to ``shape``, no two in one column."""
    rows = len(shape)
    ext = shape + [0] * (max_rows - rows)

    def rec(r: int, left: int, acc: list[int]):
        if r == max_rows:
            if left == 0:
                yield acc
            return
        cap = left if r == 0 else min(left, ext[r - 1] - ext[r])
        for x in range(cap, -1, -1):
            yield from rec(r + 1, left - x, acc + [x])

    yield from rec(0, count, [])


def littlewood_richardson(lam: Partition, mu: Partition, max_rows: int) -> dict[Partition, int]:
    """``s_lam * s_mu`` restricted to partitions with at most ``max_rows`` rows.

    Counts LR tableaux of shape ``nu / lam`` and content ``mu``: letter ``k``
    fills a horizontal strip, and the reverse reading word is a lattice word,
    i.e. for every row ``r`` the number of ``k``'s in rows ``<= r`` is at most
    the number of ``(k-1)``'s in rows ``< r``.
    """
    mu = tuple(x for x in mu if x)
    out: Counter = Counter()
    base = [x for x in lam]
    base += [0] * (max_rows - len(base))

    def rec(k: int, shape: list[int], prev_counts: list[int]):
        if k == len(mu):
            out[tuple(shape)] += 1
            return
        for strip in _horizontal_strips(shape, mu[k], max_rows):
            if k > 0:
                ok = True
                above_prev = 0
                mine = 0
                for r in range(max_rows):
                    mine += strip[r]
                    if mine > above_prev:
                        ok = False
                        break
                    above_prev += prev_counts[r]
                if not ok:
                    continue
            new_shape = [shape[r] + strip[r] for r in range(max_rows)]
            rec(k + 1, new_shape, strip)

    rec(0, base, [0] * max_rows)
    return dict(out)


def classical_tensor(lam: AlcoveWeight, mu: AlcoveWeight) -> DominantWeightMultiset:
    """Classical SL_i decomposition of ``V_lam (x) V_mu``."""
    if (lam.i, lam.p) != (mu.i, mu.p):
        raise RankMismatchError(f"weights for different (i, p): {(lam.i, lam.p)} vs {(mu.i, mu.p)}")
    i = lam.i
    if i == 1:
        return DominantWeightMultiset(1, lam.p, (((), 1),))
    prods = littlewood_richardson(_gl(lam.parts, i), _gl(mu.parts, i), i)
    acc: Counter = Counter()
    for nu, c in prods.items():
        acc[_sl(nu)] += c
    entries = tuple(sorted(acc.items(), key=lambda kv: (sum(kv[0]), kv[0])))
    return DominantWeightMultiset(i, lam.p, entries)


# ----------------------------------------------------------- folding


def fold_to_alcove(nu: Partition, i: int, p: int) -> tuple[int, Partition | None]:
    """Move ``nu + rho`` into the fundamental alcove at shifted level ``p``.

    Returns ``(sign, alcove partition)``, or ``(0, None)`` when ``nu + rho``
    lies on a wall (its stabiliser is non-trivial).
    """
    v = [x + (i - 1 - a) for a, x in enumerate(_gl(nu, i))]
    sign = 1
    while True:
        # sort decreasingly, tracking parity; equal entries mean a wall
        if len(set(v)) != len(v):
            return 0, None
        inversions = sum(1 for a in range(i) for b in range(a + 1, i) if v[a] < v[b])
        if inversions % 2:
            sign = -sign
        v.sort(reverse=True)
        gap = v[0] - v[-1]
        if gap == p:
            return 0, None
        if gap < p:
            break
        v[0], v[-1] = v[-1] + p, v[0] - p
        sign = -sign
    gl = tuple(x - (i - 1 - a) for a, x in enumerate(v))
    return sign, _sl(gl)


def kac_walton_fuse(lam: AlcoveWeight, mu: AlcoveWeight) -> dict[AlcoveWeight, int]:
    """Fusion product in Ver_p(SL_i), as ``{alcove weight: multiplicity}``."""
    classical = classical_tensor(lam, mu)
    i, p = lam.i, lam.p
    if i == 1:
        return {AlcoveWeight(1, p, ()): 1}
    acc: Counter = Counter()
    for nu, c in classical.entries:
        sign, folded = fold_to_alcove(nu, i, p)
        if sign:
            acc[folded] += sign * c
    if any(c < 0 for c in acc.values()):
        raise ArithmeticError(f"negative fusion coefficient in {lam} x {mu}: {dict(acc)}")
    weights = sorted((k for k, c in acc.items() if c), key=lambda lam_: (sum(lam_), lam_))
    return {AlcoveWeight(i, p, k): acc[k] for k in weights}


def fuse_classes(x: Mapping[AlcoveWeight, int], y: Mapping[AlcoveWeight, int]) -> dict[AlcoveWeight, int]:
    """Bilinear extension of :func:`kac_walton_fuse`."""
    acc: Counter = Counter()
    for a, m in x.items():
        for b, n in y.items():
            for c, k in kac_walton_fuse(a, b).items():
                acc[c] += m * n * k
    return {w: acc[w] for w in sorted(acc) if acc[w]}


# ------------------------------------------------- weight multiplicities


def _dominated(mu: Partition, lam: Partition) -> bool:
    a = b = 0
    for x, y in zip(mu, lam):
        a += x
        b += y
        if a > b:
            return False
    return a == b


def _partitions_of(n: int, parts: int, cap: int) -> Iterable[Partition]:
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n, cap), -1, -1):
        if first * parts < n:
            break
        for rest in _partitions_of(n - first, parts - 1, first):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def dominant_weight_multiplicities(parts: Partition, i: int) -> tuple[tuple[Partition, int], ...]:
    """Freudenthal multiplicities of the dominant weights of the GL_i module ``parts``.

    Weights are length-``i`` partitions of ``|parts|`` dominated by ``parts``.
    """
    lam = _gl(parts, i)
    rho = tuple(i - 1 - a for a in range(i))
    doms = [mu for mu in _partitions_of(sum(lam), i, lam[0] if lam else 0) if _dominated(mu, lam)]
    doms.sort(key=lambda mu: -sum(r * x for r, x in zip(rho, mu)))
    mult: dict[Partition, int] = {}

    def m(w: tuple[int, ...]) -> int:
        key = tuple(sorted(w, reverse=True))
        if not _dominated(key, lam):
            return 0
        return mult.get(key, 0)

    def norm(w):
        return sum(x * x for x in w)

    lr = norm([a + b for a, b in zip(lam, rho)])
    for mu in doms:
        if mu == lam:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for a in range(i):
            for b in range(a + 1, i):
                k = 1
                while True:
                    w = list(mu)
                    w[a] += k
                    w[b] -= k
                    mw = m(w)
                    if mw == 0:
                        break
                    total += mw * (w[a] - w[b])
                    k += 1
        denom = lr - norm([x + r for x, r in zip(mu, rho)])
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {value} at {mu}")
        mult[mu] = int(value)
    return tuple((mu, mult[mu]) for mu in doms if mult[mu])


def _orbit_grades(mu: Partition, coeffs: tuple[int, ...]) -> Counter:
    """Distribution of ``sum_a coeffs[a] * w_a`` over distinct permutations ``w`` of ``mu``."""
    counts = Counter(mu)
    values = sorted(counts)

    @functools.lru_cache(maxsize=None)
    def rec(pos: int, remaining: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
        if pos == len(coeffs):
            return ((0, 1),)
        acc: Counter = Counter()
        for j, v in enumerate(values):
            if remaining[j] == 0:
                continue
            rest = remaining[:j] + (remaining[j] - 1,) + remaining[j + 1:]
            for g, c in rec(pos + 1, rest):
                acc[g + coeffs[pos] * v] += c
        return tuple(acc.items())

    return Counter(dict(rec(0, tuple(counts[v] for v in values))))


@functools.lru_cache(maxsize=None)
def principal_grades(parts: Partition, i: int) -> tuple[tuple[int, int], ...]:
    """Multiset of ``<mu, 2 rho^vee>`` over the weights ``mu`` of ``V_parts``."""
    coeffs = tuple(i + 1 - 2 * a for a in range(1, i + 1))
    acc: Counter = Counter()
    for mu, m in dominant_weight_multiplicities(tuple(parts), i):
        for g, c in _orbit_grades(mu, coeffs).items():
            acc[g] += m * c
    return tuple(sorted(acc.items(), reverse=True))


# ------------------------------------------------------ SL_2 tilting


def peel_strings(grades: Mapping[int, int]) -> dict[int, int]:
    """Split a symmetric multiset of SL_2 weights into strings.

    Returns ``{d: multiplicity of V_d}`` with ``d`` the string's dimension.
    """
    g = Counter({k: v for k, v in grades.items() if v})
    out: dict[int, int] = {}
    while g:
        top = max(g)
        c = g[top]
        if c < 0 or top < 0:
            raise ValueError(f"not an SL_2 character: {dict(grades)}")
        for w in range(top, -top - 1, -2):
            g[w] -= c
            if g[w] == 0:
                del g[w]
            elif g[w] < 0:
                raise ValueError(f"not an SL_2 character: {dict(grades)}")
        out[top + 1] = out.get(top + 1, 0) + c
    return out


def _string(top: int) -> Counter:
    return Counter({w: 1 for w in range(top, -top - 1, -2)})


def _conv(a: Counter, b: Counter) -> Counter:
    out: Counter = Counter()
    for x, m in a.items():
        for y, n in b.items():
            out[x + y] += m * n
    return out


@functools.lru_cache(maxsize=None)
def sl2_tilting_character(top: int, p: int) -> tuple[tuple[int, int], ...]:
    """Formal character of the indecomposable SL_2 tilting module ``T(top)``.

    ``T(m) = V(m)`` for ``m <= p - 1``; above that Donkin's tensor product
    formula ``T(p-1+s+p*t) = T(p-1+s) (x) T(t)^[1]`` with ``0 <= s <= p-1``,
    where ``T(p-1+s)`` has Weyl factors ``V(p-1+s)`` and ``V(p-1-s)``.
    """
    if top <= p - 1:
        return tuple(sorted(_string(top).items()))
    s, t = (top - (p - 1)) % p, (top - (p - 1)) // p
    base = _string(p - 1 + s)
    if s:
        base = base + _string(p - 1 - s)
    twisted = Counter({p * w: c for w, c in sl2_tilting_character(t, p)})
    return tuple(sorted(_conv(base, twisted).items()))


def tilting_decomposition(grades: Mapping[int, int], p: int) -> dict[int, int]:
    """Decompose a tilting SL_2 character into ``{top weight: multiplicity of T(top)}``."""
    g = Counter({k: v for k, v in grades.items() if v})
    out: dict[int, int] = {}
    while g:
        top = max(g)
        c = g[top]
        if c < 0:
            raise ValueError("character is not a non-negative sum of tilting characters")
        for w, m in sl2_tilting_character(top, p):
            g[w] -= c * m
            if g[w] == 0:
                del g[w]
        out[top] = c
    return out


def _restrict_grades(grades: Mapping[int, int], p: int) -> VerClass:
    strings = peel_strings(grades)
    # Weyl strings -> character -> tilting summands; only T(m), m <= p-2,
    # have dimension prime to p and survive semisimplification.
    char: Counter = Counter()
    for d, c in strings.items():
        for w, m in _string(d - 1).items():
            char[w] += c * m
    mult = [0] * (p - 1)
    for top, c in tilting_decomposition(char, p).items():
        if top <= p - 2:
            mult[top] += c
    return VerClass(p, tuple(mult))


def principal_restriction(lam: AlcoveWeight | Mapping[AlcoveWeight, int]) -> VerClass:
    """Image in Ver_p under restriction to the principal SL_2.

    Accepts a single alcove weight or a ``{weight: multiplicity}`` class.
    """
    if isinstance(lam, AlcoveWeight):
        if lam.i == 1:
            return VerClass(lam.p, (1,) + (0,) * (lam.p - 2))
        return _restrict_grades(dict(principal_grades(_gl(lam.parts, lam.i), lam.i)), lam.p)
    items = list(lam.items())
    if not items:
        raise ValueError("cannot infer p from an empty class")
    p = items[0][0].p
    out = VerClass.zero(p)
    for w, m in items:
        out = out + m * principal_restriction(w)
    return out


def restriction_product(weights: Iterable[AlcoveWeight], p: int) -> VerClass:
    """``principal_restriction(S_1) (x) ... (x) principal_restriction(S_n)``."""
    out = VerClass(p, (1,) + (0,) * (p - 2))
    for w in weights:
        out = tensor(out, principal_restriction(w))
    return out


def simples_count(i: int, p: int) -> int:
    return comb(p - 1, i - 1)
