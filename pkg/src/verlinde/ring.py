"""Grothendieck semiring of the Verlinde category Ver_p.

A class is a vector of non-negative multiplicities over the simples
``L_1, ..., L_{p-1}``.  Fusion of simples follows the truncated
Clebsch-Gordan rule

    L_i (x) L_j = sum_{k=1}^{min(i, j, p-i, p-j)} L_{|i-j| + 2k - 1}

and every other operation is its bilinear or additive extension.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import IndexOutOfRangeError, NotPrimeError, PrimeMismatchError


def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime, otherwise raise :class:`NotPrimeError`.

    Trial division is plenty for the primes this package is used with.
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise NotPrimeError(f"p must be an integer, got {p!r}")
    if p < 2:
        raise NotPrimeError(f"p must be prime, got {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise NotPrimeError(f"p must be prime, got {p} = {d} * {p // d}")
        d += 1
    return p


@dataclass(frozen=True)
class VerClass:
    """Element of the Grothendieck semiring of Ver_p.

    ``mult[j]`` is the multiplicity of ``L_{j+1}``.
    """

    p: int
    mult: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        mult = tuple(int(m) for m in self.mult)
        if len(mult) != self.p - 1:
            raise ValueError(f"class over Ver_{self.p} needs {self.p - 1} multiplicities, got {len(mult)}")
        if any(m < 0 for m in mult):
            raise ValueError(f"multiplicities must be non-negative: {mult}")
        object.__setattr__(self, "mult", mult)

    @classmethod
    def zero(cls, p: int) -> "VerClass":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_dict(cls, p: int, terms: Mapping[int, int]) -> "VerClass":
        """Build from ``{i: multiplicity of L_i}``."""
        mult = [0] * (p - 1)
        for i, m in terms.items():
            _check_index(i, p)
            mult[i - 1] += m
        return cls(p, tuple(mult))

    def __getitem__(self, i: int) -> int:
        """Multiplicity of ``L_i`` (1-based, like the simples)."""
        _check_index(i, self.p)
        return self.mult[i - 1]

    def items(self) -> Iterable[tuple[int, int]]:
        """Pairs ``(i, multiplicity)`` for the simples present."""
        return ((j + 1, m) for j, m in enumerate(self.mult) if m)

    def __bool__(self) -> bool:
        return any(self.mult)

    def __add__(self, other: "VerClass") -> "VerClass":
        if not isinstance(other, VerClass):
            return NotImplemented
        _same_prime(self, other)
        return VerClass(self.p, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __mul__(self, k: int) -> "VerClass":
        if isinstance(k, VerClass):
            return tensor(self, k)
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("classes form a semiring; negative scalars are not allowed")
        return VerClass(self.p, tuple(k * m for m in self.mult))

    __rmul__ = __mul__

    @property
    def total(self) -> int:
        """Number of simple constituents counted with multiplicity."""
        return sum(self.mult)

    def __str__(self) -> str:
        terms = [f"{m}L{i}" if m > 1 else f"L{i}" for i, m in self.items()]
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"p": self.p, "mult": list(self.mult)}

    @classmethod
    def from_json(cls, data: Mapping) -> "VerClass":
        return cls(int(data["p"]), tuple(int(m) for m in data["mult"]))


def _check_index(i: int, p: int) -> None:
    if not 1 <= i <= p - 1:
        raise IndexOutOfRangeError(f"simple index {i} outside 1..{p - 1} for p={p}")


def _same_prime(x: VerClass, y: VerClass) -> None:
    if x.p != y.p:
        raise PrimeMismatchError(f"classes over different primes: {x.p} vs {y.p}")


def simple(i: int, p: int) -> VerClass:
    """The class of ``L_i``."""
    check_prime(p)
    _check_index(i, p)
    mult = [0] * (p - 1)
    mult[i - 1] = 1
    return VerClass(p, tuple(mult))


def _fusion_indices(i: int, j: int, p: int) -> list[int]:
    top = min(i, j, p - i, p - j)
    return [abs(j - i) + 2 * k - 1 for k in range(1, top + 1)]


_TABLES: dict[int, tuple[tuple[VerClass, ...], ...]] = {}
_TABLES_LOCK = threading.Lock()


def fusion_table(p: int) -> tuple[tuple[VerClass, ...], ...]:
    """``table[i-1][j-1] == L_i (x) L_j``; built once per prime."""
    table = _TABLES.get(p)
    if table is not None:
        return table
    check_prime(p)
    with _TABLES_LOCK:
        table = _TABLES.get(p)
        if table is None:
            rows = []
            for i in range(1, p):
                row = []
                for j in range(1, p):
                    mult = [0] * (p - 1)
                    for k in _fusion_indices(i, j, p):
                        mult[k - 1] += 1
                    row.append(VerClass(p, tuple(mult)))
                rows.append(tuple(row))
            table = tuple(rows)
            _TABLES[p] = table
    return table


def fuse_simples(i: int, j: int, p: int) -> VerClass:
    """Decompose ``L_i (x) L_j``; every multiplicity is 0 or 1."""
    check_prime(p)
    _check_index(i, p)
    _check_index(j, p)
    return fusion_table(p)[i - 1][j - 1]


def tensor(x: VerClass, y: VerClass) -> VerClass:
    """Bilinear extension of :func:`fuse_simples`."""
    _same_prime(x, y)
    p = x.p
    table = fusion_table(p)
    out = [0] * (p - 1)
    for i, a in x.items():
        row = table[i - 1]
        for j, b in y.items():
            for k, c in row[j - 1].items():
                out[k - 1] += a * b * c
    return VerClass(p, tuple(out))


def tensor_all(classes: Iterable[VerClass], p: int) -> VerClass:
    """Tensor product of a sequence of classes; the unit if it is empty."""
    out = simple(1, p) if p > 1 else VerClass.zero(p)
    for c in classes:
        out = tensor(out, c)
    return out


def dual(x: VerClass) -> VerClass:
    # Every L_i is self-dual: a unipotent Jordan block is conjugate to its
    # inverse transpose.
    return x


def cat_dim(x: VerClass) -> int:
    """Categorical dimension as a residue mod p (``dim L_i = i``)."""
    return sum(i * m for i, m in x.items()) % x.p


def is_plus(x: VerClass) -> bool:
    """Membership in Ver_p^+, the span of the odd-index simples."""
    return all(i % 2 == 1 for i, _ in x.items())


def hom_dim(x: VerClass, y: VerClass) -> int:
    _same_prime(x, y)
    return sum(a * b for a, b in zip(x.mult, y.mult))
