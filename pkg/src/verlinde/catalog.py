"""Classes attached to GL(X) for X in Ver_p, and the labels of its irreducibles.

``X = sum_i n_i L_i`` is given by an :class:`ObjectShape`.  Everything here
lives at the level of the Grothendieck semiring: ``gl(X) = X (x) X*``,
``sl(X)`` (one copy of the unit removed), the lower-triangular part, finite
symmetric algebras of objects with no trivial summand, generalized Verma
characters graded by the torus of ``prod_i GL_{n_i}``, and the label set
``W`` (a dominant GL_{n_i} weight with ``n_i`` plus-part alcove weights per
index ``i``).
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping, Sequence

from .alcove import AlcoveWeight, is_plus_weight, plus_simples, principal_restriction
from .errors import (
    EmptyShapeError,
    IndexOutOfRangeError,
    InvalidLabelError,
    NonzeroTrivialPartError,
    NotHomogeneousError,
    OrderMismatchError,
    ZeroDimensionError,
)
from .oracle import semisimplify, sym_power_jordan
from .ring import VerClass, cat_dim, check_prime, dual, simple, tensor, tensor_all

Weight = tuple[int, ...]


@dataclass(frozen=True)
class ObjectShape:
    """``X = sum_i n[i-1] L_i`` in Ver_p."""

    p: int
    n: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        n = tuple(int(x) for x in self.n)
        if len(n) > self.p - 1:
            if any(n[self.p - 1:]):
                raise IndexOutOfRangeError(f"shape {n} has entries beyond L_{self.p - 1}")
            n = n[: self.p - 1]
        if any(x < 0 for x in n):
            raise ValueError(f"multiplicities must be non-negative: {n}")
        object.__setattr__(self, "n", n + (0,) * (self.p - 1 - len(n)))

    @classmethod
    def homogeneous(cls, i: int, count: int, p: int) -> "ObjectShape":
        n = [0] * (p - 1)
        if not 1 <= i <= p - 1:
            raise IndexOutOfRangeError(f"simple index {i} outside 1..{p - 1}")
        n[i - 1] = count
        return cls(p, tuple(n))

    @property
    def ver_class(self) -> VerClass:
        return VerClass(self.p, self.n)

    def factors(self) -> list[tuple[int, int]]:
        return [(i + 1, m) for i, m in enumerate(self.n) if m]

    def is_zero(self) -> bool:
        return not any(self.n)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.n)


def _nonzero(shape: ObjectShape) -> None:
    if shape.is_zero():
        raise EmptyShapeError("X = 0 has no general linear group to speak of")


def gl_class(shape: ObjectShape) -> VerClass:
    _nonzero(shape)
    x = shape.ver_class
    return tensor(x, dual(x))


def sl_class(shape: ObjectShape) -> VerClass:
    """``gl(X)`` minus the scalars; needs ``cat_dim(X) != 0``."""
    _nonzero(shape)
    if cat_dim(shape.ver_class) == 0:
        raise ZeroDimensionError(f"dim X = 0 in F_{shape.p}; gl(X) does not split off the scalars")
    g = gl_class(shape)
    mult = list(g.mult)
    mult[0] -= 1
    return VerClass(shape.p, tuple(mult))


def underlying_group(shape: ObjectShape) -> list[tuple[int, int]]:
    """Pairs ``(i, n_i)``: GL(X)_0 is the product of the GL_{n_i}."""
    return shape.factors()


def nilradical_class(shape: ObjectShape, order: Sequence[int]) -> VerClass:
    """Class of the strictly lower triangular part for the listing ``order`` of simple summands."""
    if Counter(order) != Counter({i: m for i, m in shape.factors()}):
        raise OrderMismatchError(f"listing {list(order)} does not reassemble X = {shape}")
    p = shape.p
    out = VerClass.zero(p)
    for a in range(len(order)):
        for b in range(a):
            out = out + tensor(simple(order[a], p), dual(simple(order[b], p)))
    return out


# ------------------------------------------------------ symmetric algebras


@functools.lru_cache(maxsize=None)
def sym_powers_of_simple(i: int, p: int) -> tuple[VerClass, ...]:
    """``(S^0 L_i, S^1 L_i, ...)`` up to the last nonzero power, for ``i >= 2``.

    Each power is the semisimplified Jordan type of ``S^n(M_i)``.  The symmetric
    algebra is generated in degree one, so the first vanishing power ends the list.
    """
    if i == 1:
        raise NonzeroTrivialPartError("S(L_1) is a polynomial ring, not a finite class")
    out = []
    for n in range(p):
        c = semisimplify(sym_power_jordan(i, n, p))
        if not c:
            break
        out.append(c)
    else:  # pragma: no cover - excluded by the nilpotence bound
        raise ArithmeticError(f"S^n(L_{i}) nonzero for all n < {p}")
    return tuple(out)


def symmetric_algebra_graded(y: VerClass) -> tuple[VerClass, ...]:
    """``(S^0 Y, S^1 Y, ...)`` for ``Y`` with no trivial summand."""
    p = y.p
    if y.mult and y.mult[0]:
        raise NonzeroTrivialPartError(f"{y} contains L_1; its symmetric algebra is infinite")
    graded = [simple(1, p)]
    for i, m in y.items():
        powers = sym_powers_of_simple(i, p)
        for _ in range(m):
            nxt: list[VerClass] = [VerClass.zero(p)] * (len(graded) + len(powers) - 1)
            for a, ca in enumerate(graded):
                for b, cb in enumerate(powers):
                    nxt[a + b] = nxt[a + b] + tensor(ca, cb)
            graded = nxt
    return tuple(graded)


def symmetric_algebra_class(y: VerClass) -> VerClass:
    """Total class of ``S(Y) = sum_n S^n(Y)``; finite because ``Y`` has no ``L_1``."""
    out = VerClass.zero(y.p)
    for c in symmetric_algebra_graded(y):
        out = out + c
    return out


# ----------------------------------------------------------------- labels


@dataclass(frozen=True)
class LabelFactor:
    i: int
    lam: Weight
    s: tuple[AlcoveWeight, ...]

    def to_json(self) -> dict:
        return {"i": self.i, "lambda": list(self.lam), "s": [w.to_json() for w in self.s]}


@dataclass(frozen=True)
class GLIrrepLabel:
    """An element of ``W``: per index ``i`` with ``n_i > 0``, a dominant
    GL_{n_i} weight and ``n_i`` plus-part alcove weights."""

    p: int
    factors: tuple[LabelFactor, ...]

    def __post_init__(self):
        check_prime(self.p)
        seen = set()
        for f in self.factors:
            if f.i in seen:
                raise InvalidLabelError(f"index {f.i} appears twice")
            seen.add(f.i)
            if not 1 <= f.i <= self.p - 1:
                raise IndexOutOfRangeError(f"simple index {f.i} outside 1..{self.p - 1}")
            if any(f.lam[k] < f.lam[k + 1] for k in range(len(f.lam) - 1)):
                raise InvalidLabelError(f"lambda {f.lam} is not weakly decreasing")
            if len(f.s) != len(f.lam):
                raise InvalidLabelError(f"{len(f.lam)} torus entries but {len(f.s)} alcove weights")
            allowed = set(plus_simples(f.i, self.p))
            for w in f.s:
                if w not in allowed or not is_plus_weight(w):
                    raise InvalidLabelError(f"{w} is not a plus-part weight for i={f.i}, p={self.p}")

    def shape(self) -> ObjectShape:
        n = [0] * (self.p - 1)
        for f in self.factors:
            n[f.i - 1] = len(f.lam)
        return ObjectShape(self.p, tuple(n))

    def __str__(self) -> str:
        parts = []
        for f in self.factors:
            lam = ",".join(str(x) for x in f.lam)
            s = " ".join(str(w) for w in f.s)
            parts.append(f"i={f.i}: lambda=({lam}) S=[{s}]")
        return "; ".join(parts)

    def to_json(self) -> dict:
        return {"p": self.p, "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data: Mapping) -> "GLIrrepLabel":
        p = int(data["p"])
        factors = tuple(
            LabelFactor(
                int(f["i"]),
                tuple(int(x) for x in f["lambda"]),
                tuple(AlcoveWeight.from_json(w) for w in f["s"]),
            )
            for f in data["factors"]
        )
        return cls(p, factors)


def alcove_alphabet(i: int, p: int) -> tuple[AlcoveWeight, ...]:
    """Plus-part simples of Ver_p(SL_i); a single empty weight for ``i = 1``."""
    return plus_simples(i, p)


def dominant_weights(n: int, bound: int) -> Iterator[Weight]:
    """Weakly decreasing integer ``n``-tuples with entries in ``[-bound, bound]``, lex ascending."""

    def rec_desc(k: int, upper: int) -> Iterator[Weight]:
        if k == 0:
            yield ()
            return
        for first in range(-bound, upper + 1):
            for rest in rec_desc(k - 1, first):
                yield (first,) + rest

    yield from rec_desc(n, bound)


def _factor_labels(i: int, n: int, p: int, bound: int) -> Iterator[LabelFactor]:
    alphabet = alcove_alphabet(i, p)
    for lam in dominant_weights(n, bound):
        for s in itertools.product(alphabet, repeat=n):
            yield LabelFactor(i, lam, s)


def iter_labels(shape: ObjectShape, bound: int) -> Iterator[GLIrrepLabel]:
    """Lazy :func:`enumerate_labels`."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    p = shape.p
    per_factor = [list(_factor_labels(i, n, p, bound)) for i, n in shape.factors()]
    for combo in itertools.product(*per_factor):
        yield GLIrrepLabel(p, tuple(combo))


def enumerate_labels(shape: ObjectShape, bound: int) -> list[GLIrrepLabel]:
    """Labels with torus entries in ``[-bound, bound]``.

    Factors are ordered by ``i``; within a factor, lambdas are lex ascending and
    then the alcove lists follow the simples order.  The product over factors
    is taken with the last factor varying fastest.
    """
    return list(iter_labels(shape, bound))


def count_factor_labels(i: int, n: int, p: int, bound: int) -> int:
    # weakly decreasing n-tuples from 2*bound+1 values, times the alcove choices
    return comb(n + 2 * bound, n) * len(alcove_alphabet(i, p)) ** n


def count_labels(shape: ObjectShape, bound: int) -> int:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    out = 1
    for i, n in shape.factors():
        out *= count_factor_labels(i, n, shape.p, bound)
    return out


# ------------------------------------------------------------ Verma modules


@dataclass(frozen=True)
class GradedVerClass:
    """Classes indexed by torus weights; no zero classes are stored.

    ``entries`` are sorted with weights in descending lexicographic order.
    """

    p: int
    entries: tuple[tuple[Weight, VerClass], ...]

    @classmethod
    def from_mapping(cls, p: int, data: Mapping[Weight, VerClass]) -> "GradedVerClass":
        items = sorted(((tuple(w), c) for w, c in data.items() if c), key=lambda kv: kv[0], reverse=True)
        return cls(p, tuple(items))

    def as_dict(self) -> dict[Weight, VerClass]:
        return dict(self.entries)

    def __getitem__(self, weight: Sequence[int]) -> VerClass:
        return self.as_dict().get(tuple(weight), VerClass.zero(self.p))

    def total(self) -> VerClass:
        out = VerClass.zero(self.p)
        for _, c in self.entries:
            out = out + c
        return out

    def to_json(self) -> list:
        return [{"weight": list(w), "class": c.to_json()} for w, c in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], p: int | None = None) -> "GradedVerClass":
        items = {tuple(int(x) for x in e["weight"]): VerClass.from_json(e["class"]) for e in data}
        if p is None:
            if not items:
                raise ValueError("p is needed to read an empty graded class")
            p = next(iter(items.values())).p
        return cls.from_mapping(p, items)


def _convolve(x: Mapping[Weight, VerClass], y: Mapping[Weight, VerClass], p: int) -> dict[Weight, VerClass]:
    out: dict[Weight, VerClass] = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            w = tuple(a + b for a, b in zip(w1, w2))
            c = tensor(c1, c2)
            out[w] = out[w] + c if w in out else c
    return out


def _root(n: int, a: int, b: int, k: int) -> Weight:
    # k (e_a - e_b)
    w = [0] * n
    w[a] += k
    w[b] -= k
    return tuple(w)


def verma_character(shape: ObjectShape, label: GLIrrepLabel, degree_bound: int) -> GradedVerClass:
    """Graded character of the generalized Verma module for ``X = n L_i``.

    The product of three factors: the finite symmetric algebra on the
    non-trivial part of the lower triangle (block ``a > b`` in degree ``k``
    sits at torus weight ``k (e_a - e_b)``), the polynomial character on its
    trivial part truncated at total degree ``degree_bound``, and the
    highest-weight piece ``(x)_j principal_restriction(S_j)`` at ``lambda``.
    """
    _nonzero(shape)
    factors = shape.factors()
    if len(factors) != 1:
        raise NotHomogeneousError(f"X = {shape} is not of the form n L_i")
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    (i, n), p = factors[0], shape.p
    if label.p != p or len(label.factors) != 1 or label.factors[0].i != i or len(label.factors[0].lam) != n:
        raise InvalidLabelError(f"label {label} does not belong to X = {shape}")
    lam = label.factors[0].lam
    zero = (0,) * n
    unit = simple(1, p)

    block = fuse_nontrivial(i, p)
    powers = symmetric_algebra_graded(block) if block else (unit,)
    finite: dict[Weight, VerClass] = {zero: unit}
    for a in range(n):
        for b in range(a):
            finite = _convolve(finite, {_root(n, a, b, k): c for k, c in enumerate(powers)}, p)
    # polynomial factor: monomials in the C(n, 2) trivial coordinates, total degree <= bound
    roots = [(a, b) for a in range(n) for b in range(a)]
    counts: Counter = Counter()
    for degree in range(degree_bound + 1):
        for combo in itertools.combinations_with_replacement(roots, degree):
            w = [0] * n
            for a, b in combo:
                w[a] += 1
                w[b] -= 1
            counts[tuple(w)] += 1
    poly = {w: c * unit for w, c in counts.items()}
    top = {tuple(lam): tensor_all((principal_restriction(w) for w in label.factors[0].s), p)}
    return GradedVerClass.from_mapping(p, _convolve(_convolve(finite, poly, p), top, p))


def fuse_nontrivial(i: int, p: int) -> VerClass:
    """``L_i (x) L_i*`` without its unit summand: one lower block of ``gl(n L_i)`` minus the scalars."""
    g = tensor(simple(i, p), dual(simple(i, p)))
    mult = list(g.mult)
    mult[0] -= 1
    return VerClass(p, tuple(mult))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam``: ``lam - mu`` is a non-negative sum of ``e_a - e_{a+1}``."""
    if sum(mu) != sum(lam):
        return False
    acc = 0
    for x, y in zip(lam, mu):
        acc += x - y
        if acc < 0:
            return False
    return True
