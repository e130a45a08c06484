"""Exhaustive property sweeps, shared by ``verlinde verify`` and the acceptance tests.

Each check returns a :class:`CheckResult`.  Sweeps cover the odd primes up
to ``VERLINDE_MAX_P`` (default 13).  Symmetric powers whose dimension exceeds
``VERLINDE_ORACLE_MAX_DIM`` (default 100000) are decided by the SL_2 tilting
computation alone; below it the matrix oracle decides and the tilting answer
must agree.
"""

from __future__ import annotations

import json
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import alcove, catalog, oracle, ring
from .alcove import AlcoveWeight
from .ring import VerClass

ALL_PRIMES = (3, 5, 7, 11, 13)
# Full Jordan types are computed up to this dimension; above it the
# freeness certificate decides whether the semisimplification vanishes.
FULL_JORDAN_MAX_DIM = 3000


def max_p() -> int:
    return int(os.environ.get("VERLINDE_MAX_P", "13"))


def oracle_max_dim() -> int:
    return int(os.environ.get("VERLINDE_ORACLE_MAX_DIM", "100000"))


def primes(limit: int | None = None) -> tuple[int, ...]:
    cap = max_p() if limit is None else min(limit, max_p())
    return tuple(p for p in ALL_PRIMES if p <= cap)


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    unverified: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.failures:
            extra += f"; {len(self.failures)} failures, first: {self.failures[0]}"
        if self.unverified:
            extra += f"; NOT VERIFIED ({len(self.unverified)}): {', '.join(self.unverified)}"
        return f"{status} {self.name} ({self.cases} cases{extra})"


def _result(name: str, cases: int, failures: list[str], unverified: list[str] | None = None) -> CheckResult:
    unverified = unverified or []
    return CheckResult(name, not failures and not unverified, cases, failures, unverified)


# --------------------------------------------------------------- oracle


def oracle_fusion(ps=None) -> CheckResult:
    """semisimplify(tensor_jordan(i, j, p)) == fuse_simples(i, j, p)."""
    fails, n = [], 0
    for p in ps or primes():
        for i in range(1, p):
            for j in range(1, p):
                n += 1
                t = oracle.tensor_jordan(i, j, p)
                if t.dim != i * j or oracle.semisimplify(t) != ring.fuse_simples(i, j, p):
                    fails.append(f"p={p} i={i} j={j}: {t}")
    return _result("oracle equivalence of fusion", n, fails)


def sym_vanishes(i: int, n: int, p: int, max_dim: int | None = None) -> tuple[bool, str]:
    """Whether ``semisimplify(S^n(M_i)) == 0``, and which computation decided it.

    Matrix computations are used up to ``max_dim``; the full Jordan type is
    also compared against the tilting computation, and a disagreement raises.
    Above the cap only the tilting computation runs.
    """
    dim = comb(i + n - 1, n)
    tilt = oracle.sym_power_jordan(i, n, p, method="tilting")
    if dim <= FULL_JORDAN_MAX_DIM:
        t = oracle.sym_power_jordan(i, n, p)
        if t != tilt:
            raise AssertionError(f"S^{n}(M_{i}) at p={p}: matrix {t} vs tilting {tilt}")
        return not oracle.semisimplify(t), "jordan"
    if dim <= (oracle_max_dim() if max_dim is None else max_dim):
        free = oracle.sym_power_is_projective(i, n, p)
        if free != (not oracle.semisimplify(tilt)):
            raise AssertionError(f"S^{n}(M_{i}) at p={p}: norm certificate {free} vs tilting {tilt}")
        return free, "certificate"
    return not oracle.semisimplify(tilt), "tilting"


def nilpotence(ps=None, max_dim: int | None = None, progress: Callable[[str], None] | None = None) -> CheckResult:
    """S^N(L_i) = 0 for p-i < N <= p-1 and S^{p-i}(L_i) != 0."""
    fails, n = [], 0
    how: Counter = Counter()
    for p in ps or primes():
        for i in range(2, p):
            n += 1
            if not oracle.semisimplify(oracle.sym_power_jordan(i, p - i, p)):
                fails.append(f"p={p} i={i}: S^{p - i} vanishes (bound not sharp)")
            for big in range(p - i + 1, p):
                n += 1
                try:
                    verdict, route = sym_vanishes(i, big, p, max_dim)
                except AssertionError as exc:
                    fails.append(str(exc))
                    continue
                how[route] += 1
                if not verdict:
                    fails.append(f"p={p} i={i} N={big}: S^N does not vanish")
                if progress:
                    progress(f"p={p} i={i} N={big}: {verdict} ({route})")
    routes = ", ".join(f"{k} {how[k]}" for k in ("jordan", "certificate", "tilting") if how[k])
    return _result(f"nilpotence lemma and sharpness [{routes}]", n, fails)


def oracle_dimensions(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        for a in range(1, p + 1):
            for k in range(0, a + 1):
                n += 1
                t = oracle.ext_power_jordan(a, k, p)
                if t.dim != comb(a, k):
                    fails.append(f"ext p={p} a={a} k={k}")
                if ring.cat_dim(oracle.semisimplify(t)) != t.dim % p:
                    fails.append(f"ext dim mod p, p={p} a={a} k={k}")
            n += 1
            if oracle.ext_power_jordan(a, a, p).blocks != (1,):
                fails.append(f"top exterior power p={p} a={a}")
    return _result("exterior powers and dimension conservation", n, fails)


# ----------------------------------------------------------------- ring


def ring_axioms(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        s = [ring.simple(i, p) for i in range(1, p)]
        for x in s:
            n += 1
            if ring.tensor(s[0], x) != x:
                fails.append(f"unit p={p} {x}")
            for y in s:
                n += 1
                xy = ring.tensor(x, y)
                if xy != ring.tensor(y, x):
                    fails.append(f"commutativity p={p} {x},{y}")
                if ring.cat_dim(xy) != ring.cat_dim(x) * ring.cat_dim(y) % p:
                    fails.append(f"dimension p={p} {x},{y}")
                if max(xy.mult) > 1:
                    fails.append(f"0/1 constants p={p} {x},{y}")
                for z in s:
                    n += 1
                    if ring.tensor(xy, z) != ring.tensor(x, ring.tensor(y, z)):
                        fails.append(f"associativity p={p} {x},{y},{z}")
    return _result("ring axioms and dimension homomorphism", n, fails)


def subcategories(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        n += 2
        if ring.fuse_simples(p - 1, p - 1, p) != ring.simple(1, p):
            fails.append(f"L_(p-1)^2 != L_1 at p={p}")
        if ring.fuse_simples(1, p - 1, p) != ring.simple(p - 1, p):
            fails.append(f"L_1 L_(p-1) != L_(p-1) at p={p}")
        for i in range(1, p, 2):
            for j in range(1, p, 2):
                n += 1
                if not ring.is_plus(ring.fuse_simples(i, j, p)):
                    fails.append(f"odd closure p={p} {i},{j}")
        for i in range(1, p):
            for j in range(1, p):
                n += 1
                if ring.hom_dim(ring.simple(1, p), ring.fuse_simples(i, j, p)) != int(i == j):
                    fails.append(f"self-duality p={p} {i},{j}")
    return _result("plus part and sVec subcategories", n, fails)


# --------------------------------------------------------------- alcove


def sl2_equivalence(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        if p < 3:
            continue
        for a in range(p - 1):
            for b in range(p - 1):
                n += 1
                fused = alcove.kac_walton_fuse(AlcoveWeight(2, p, (a,)), AlcoveWeight(2, p, (b,)))
                as_ver = VerClass.from_dict(p, {w.parts[0] + 1: m for w, m in fused.items()})
                if as_ver != ring.fuse_simples(a + 1, b + 1, p):
                    fails.append(f"p={p} ({a})x({b}) -> {as_ver}")
    return _result("Ver_p(SL_2) agrees with Ver_p", n, fails)


def alcove_counts(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        for i in range(2, p):
            n += 1
            simples = alcove.enumerate_simples(i, p)
            if len(simples) != comb(p - 1, i - 1) or len(set(simples)) != len(simples):
                fails.append(f"p={p} i={i}: {len(simples)}")
    return _result("alcove counts", n, fails)


def fusion_semiring(ps=None, pairs=((2, 3), (2, 5), (3, 5), (2, 7), (3, 7), (4, 7))) -> CheckResult:
    fails, n = [], 0
    for i, p in pairs:
        if p not in (ps or primes()):
            continue
        simples = alcove.enumerate_simples(i, p)
        unit = simples[0]
        for x in simples:
            n += 1
            if alcove.kac_walton_fuse(unit, x) != {x: 1}:
                fails.append(f"unit {x}")
            for y in simples:
                n += 1
                xy = alcove.kac_walton_fuse(x, y)
                if xy != alcove.kac_walton_fuse(y, x):
                    fails.append(f"commutativity i={i} p={p} {x},{y}")
                if alcove.is_plus_weight(x) and alcove.is_plus_weight(y) and not all(
                    alcove.is_plus_weight(w) for w in xy
                ):
                    fails.append(f"plus closure i={i} p={p} {x},{y}")
                for z in simples:
                    n += 1
                    left = alcove.fuse_classes(xy, {z: 1})
                    right = alcove.fuse_classes({x: 1}, alcove.kac_walton_fuse(y, z))
                    if left != right:
                        fails.append(f"associativity i={i} p={p} {x},{y},{z}")
    return _result("Ver_p(SL_i) fusion semiring", n, fails)


def restriction_functor(ps=None, pairs=((3, 5), (3, 7), (4, 7))) -> CheckResult:
    fails, n = [], 0
    for i, p in pairs:
        if p not in (ps or primes()):
            continue
        simples = alcove.enumerate_simples(i, p)
        images = {x: alcove.principal_restriction(x) for x in simples}
        n += 1
        if images[AlcoveWeight(i, p, (1,))] != ring.simple(i, p):
            fails.append(f"tautological i={i} p={p}: {images[AlcoveWeight(i, p, (1,))]}")
        for x in simples:
            n += 1
            if ring.cat_dim(images[x]) != alcove.weyl_dim(x.parts, i) % p:
                fails.append(f"dimension i={i} p={p} {x}")
            if alcove.is_plus_weight(x) and not ring.is_plus(images[x]):
                fails.append(f"plus to plus i={i} p={p} {x}")
            for y in simples:
                n += 1
                lhs = alcove.principal_restriction(alcove.kac_walton_fuse(x, y))
                if lhs != ring.tensor(images[x], images[y]):
                    fails.append(f"homomorphism i={i} p={p} {x},{y}")
    return _result("principal restriction is a dimension-preserving semiring map", n, fails)


# -------------------------------------------------------------- catalog


def random_shapes(count: int = 20, seed: int = 2024) -> list[tuple[catalog.ObjectShape, int]]:
    """Deterministic sample of shapes with at most 3 summands, and bounds <= 2."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = (5, 7)[len(out) % 2]
        n = [0] * (p - 1)
        for _ in range(rng.randint(1, 3)):
            n[rng.randrange(p - 1)] += 1
        out.append((catalog.ObjectShape(p, tuple(n)), rng.randint(0, 2)))
    return out


def classification(ps=None, shapes=None) -> CheckResult:
    fails, n = [], 0
    for shape, b in shapes or random_shapes():
        n += 1
        total = catalog.count_labels(shape, b)
        per = 1
        for i, m in shape.factors():
            per *= catalog.count_labels(catalog.ObjectShape.homogeneous(i, m, shape.p), b)
        labels = catalog.enumerate_labels(shape, b)
        keys = {json.dumps(label.to_json(), sort_keys=True) for label in labels}
        if total != per or total != len(labels):
            fails.append(f"count {shape} b={b}: {total} vs {per} vs {len(labels)}")
        if len(keys) != len(labels):
            fails.append(f"duplicates {shape} b={b}")
        for label in labels:
            for f in label.factors:
                if f.i in (1, shape.p - 1) and any(w.parts and any(w.parts) for w in f.s):
                    fails.append(f"degenerate index carries alcove data: {label}")
                    break
    for p in ps or primes():
        for b in range(3):
            n += 1
            if catalog.count_labels(catalog.ObjectShape(p, (1,)), b) != 2 * b + 1:
                fails.append(f"GL_1 count p={p} b={b}")
    return _result("classification bijection", n, fails)


def verma_highest_weight(ps=None, count: int = 10, seed: int = 7, degree_bound: int = 3) -> CheckResult:
    fails, n = [], 0
    shape = catalog.ObjectShape(5, (0, 2))
    rng = random.Random(seed)
    labels = rng.sample(catalog.enumerate_labels(shape, 2), count)
    for label in labels:
        n += 1
        lam = label.factors[0].lam
        char = catalog.verma_character(shape, label, degree_bound)
        top = ring.tensor_all((alcove.principal_restriction(w) for w in label.factors[0].s), 5)
        if char[lam] != top:
            fails.append(f"{label}: grade at lambda is {char[lam]}, expected {top}")
        for w, _ in char.entries:
            if tuple(w) != tuple(lam) and not catalog.dominance_leq(w, lam):
                fails.append(f"{label}: grade {w} not below lambda")
    return _result("Verma highest weight", n, fails)


def scalars_split(ps=None) -> CheckResult:
    fails, n = [], 0
    for p in ps or primes():
        for i in range(1, p):
            n += 1
            shape = catalog.ObjectShape.homogeneous(i, 1, p)
            sl = catalog.sl_class(shape)
            if catalog.gl_class(shape) != ring.simple(1, p) + sl:
                fails.append(f"gl != 1 + sl for L_{i}, p={p}")
            if (i in (1, p - 1)) != (not sl):
                fails.append(f"sl(L_{i}) zero pattern, p={p}")
    return _result("scalars split off gl(L_i)", n, fails)


SUITES: dict[str, list[Callable[[], CheckResult]]] = {
    "oracle": [oracle_fusion, nilpotence, oracle_dimensions],
    "ring": [ring_axioms, subcategories],
    "alcove": [sl2_equivalence, alcove_counts, fusion_semiring, restriction_functor],
    "catalog": [scalars_split, classification, verma_highest_weight],
}
SUITES["all"] = [check for name in ("ring", "oracle", "alcove", "catalog") for check in SUITES[name]]


def run_suite(name: str, p_limit: int | None = None) -> list[CheckResult]:
    """Run a suite over the odd primes up to ``min(p_limit, VERLINDE_MAX_P)``."""
    ps = primes(p_limit)
    return [check(ps) for check in SUITES[name]]
