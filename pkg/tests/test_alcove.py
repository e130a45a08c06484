import cmath
import itertools
from collections import Counter
from math import comb, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verlinde import alcove
from verlinde.alcove import (
    AlcoveWeight,
    classical_tensor,
    enumerate_simples,
    is_plus_weight,
    kac_walton_fuse,
    principal_restriction,
)
from verlinde.errors import InvalidWeightError, RankMismatchError, RankOutOfRangeError
from verlinde.ring import VerClass, cat_dim, fuse_simples, is_plus, simple, tensor


def W(i, p, *parts):
    return AlcoveWeight(i, p, parts)


# ---------------------------------------------- independent oracles


def ssyt_character(shape, n):
    """Weights of semistandard tableaux of ``shape`` with entries 1..n (the GL_n character)."""
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    out = Counter()

    def fill(k, tab):
        if k == len(cells):
            w = [0] * n
            for v in tab.values():
                w[v - 1] += 1
            out[tuple(w)] += 1
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, tab[(r, c - 1)])
        if r > 0:
            lo = max(lo, tab[(r - 1, c)] + 1)
        for v in range(lo, n + 1):
            tab[(r, c)] = v
            fill(k + 1, tab)
        tab.pop((r, c), None)

    fill(0, {})
    return out


def decompose(char, n):
    """Peel highest weights off a GL_n character using SSYT characters."""
    char = Counter(char)
    out = Counter()
    while char:
        top = max((w for w in char if list(w) == sorted(w, reverse=True)), default=None)
        c = char[top]
        out[top] += c
        for w, m in ssyt_character(top, n).items():
            char[w] -= c * m
            if char[w] == 0:
                del char[w]
    return out


def to_sl(gl):
    return tuple(x - gl[-1] for x in gl[:-1])


def qdim(parts, i, p):
    """Quantum dimension at q = exp(pi i / p) via the q-Weyl formula."""
    lam = list(parts) + [0] * (i - len(parts))
    q = cmath.exp(1j * cmath.pi / p)

    def qint(m):
        return (q**m - q**-m) / (q - q**-1)

    num = prod(qint(lam[a] - lam[b] + b - a) for a in range(i) for b in range(a + 1, i))
    den = prod(qint(b - a) for a in range(i) for b in range(a + 1, i))
    return (num / den).real


# --------------------------------------------------------- weights


def test_weight_validation_and_json():
    w = W(3, 7, 2)
    assert w.parts == (2, 0)
    assert AlcoveWeight.from_json(w.to_json()) == w
    assert w.to_json() == {"i": 3, "p": 7, "parts": [2, 0]}
    with pytest.raises(InvalidWeightError):
        W(3, 5, 3, 0)
    with pytest.raises(InvalidWeightError):
        W(3, 7, 1, 2)
    with pytest.raises(InvalidWeightError):
        W(3, 7, 1, 1, 1)
    with pytest.raises(RankOutOfRangeError):
        W(5, 5)
    assert W(1, 5).parts == ()


def test_enumerate_simples_examples():
    assert [w.parts for w in enumerate_simples(2, 5)] == [(0,), (1,), (2,), (3,)]
    assert [w.parts for w in enumerate_simples(3, 5)] == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
    for p in (5, 7, 11):
        assert [w.parts for w in enumerate_simples(p - 1, p)] == [
            tuple([1] * m + [0] * (p - 2 - m)) for m in range(p - 1)
        ]
    with pytest.raises(RankOutOfRangeError):
        enumerate_simples(1, 5)
    with pytest.raises(RankOutOfRangeError):
        enumerate_simples(5, 5)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_counts(p):
    for i in range(2, p):
        assert len(enumerate_simples(i, p)) == comb(p - 1, i - 1)


def test_is_plus_weight():
    assert is_plus_weight(W(3, 5, 2, 1))
    assert not is_plus_weight(W(3, 5, 1, 0))
    assert is_plus_weight(W(4, 7))


# -------------------------------------------------- classical tensor


def test_classical_examples():
    assert classical_tensor(W(3, 5, 1), W(3, 5, 1)).as_dict() == {(2, 0): 1, (1, 1): 1}
    assert classical_tensor(W(3, 7), W(3, 7, 2, 1)).as_dict() == {(2, 1): 1}
    assert classical_tensor(W(2, 5, 1), W(2, 5, 1)).as_dict() == {(0,): 1, (2,): 1}
    with pytest.raises(RankMismatchError):
        classical_tensor(W(2, 5), W(3, 5))


@pytest.mark.parametrize("i,p", [(2, 7), (3, 7), (4, 7), (3, 11)])
def test_littlewood_richardson_against_tableaux(i, p):
    simples = enumerate_simples(i, p)
    for x, y in itertools.islice(itertools.product(simples, simples), 120):
        cx = ssyt_character(list(x.parts) + [0], i)
        cy = ssyt_character(list(y.parts) + [0], i)
        prod_char = Counter()
        for a, m in cx.items():
            for b, n in cy.items():
                prod_char[tuple(u + v for u, v in zip(a, b))] += m * n
        expected = Counter()
        for nu, c in decompose(prod_char, i).items():
            expected[to_sl(nu)] += c
        got = classical_tensor(x, y)
        assert got.as_dict() == dict(expected)
        assert got.weyl_dim() == alcove.weyl_dim(x.parts, i) * alcove.weyl_dim(y.parts, i)


@pytest.mark.parametrize("shape,i", [((2, 1), 3), ((3, 1), 3), ((2, 2, 1), 4), ((3, 1, 1), 4), ((2, 1), 5), ((4, 2), 3)])
def test_freudenthal_against_kostka(shape, i):
    expected = {w: m for w, m in ssyt_character(shape, i).items() if list(w) == sorted(w, reverse=True)}
    got = dict(alcove.dominant_weight_multiplicities(tuple(shape), i))
    assert got == expected


# ------------------------------------------------------------ folding


def test_kac_walton_examples():
    assert kac_walton_fuse(W(2, 5, 1), W(2, 5, 1)) == {W(2, 5, 0): 1, W(2, 5, 2): 1}
    assert kac_walton_fuse(W(2, 5, 3), W(2, 5, 3)) == {W(2, 5, 0): 1}
    for mu in enumerate_simples(3, 5):
        assert kac_walton_fuse(W(3, 5), mu) == {mu: 1}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_sl2_matches_ver_p(p):
    for a in range(p - 1):
        for b in range(p - 1):
            got = kac_walton_fuse(W(2, p, a), W(2, p, b))
            assert VerClass.from_dict(p, {w.parts[0] + 1: m for w, m in got.items()}) == fuse_simples(a + 1, b + 1, p)


@pytest.mark.parametrize("i,p", [(3, 5), (3, 7), (4, 7), (3, 11), (5, 11)])
def test_fusion_respects_quantum_dimensions(i, p):
    simples = enumerate_simples(i, p)
    for x, y in itertools.islice(itertools.product(simples, simples), 300):
        lhs = qdim(x.parts, i, p) * qdim(y.parts, i, p)
        rhs = sum(m * qdim(w.parts, i, p) for w, m in kac_walton_fuse(x, y).items())
        assert abs(lhs - rhs) < 1e-8


def test_wall_weights_contribute_nothing():
    # nu + rho on the affine wall v_1 - v_i = p
    assert alcove.fold_to_alcove((2, 0), 2, 3) == (0, None)
    assert alcove.fold_to_alcove((1, 1), 3, 5) == (1, (1, 1))
    assert alcove.fold_to_alcove((4,), 2, 5) == (0, None)
    # (6, 0) reflects to (5, 1): one reflection, weight (3)
    assert alcove.fold_to_alcove((5,), 2, 5) == (-1, (3,))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 5), (3, 7), (4, 7), (5, 7)]).flatmap(
    lambda ip: st.tuples(*[st.sampled_from(enumerate_simples(*ip))] * 3)))
def test_fusion_semiring_random(xyz):
    x, y, z = xyz
    xy = kac_walton_fuse(x, y)
    assert xy == kac_walton_fuse(y, x)
    assert all(m > 0 for m in xy.values())
    assert alcove.fuse_classes(xy, {z: 1}) == alcove.fuse_classes({x: 1}, kac_walton_fuse(y, z))
    if is_plus_weight(x) and is_plus_weight(y):
        assert all(is_plus_weight(w) for w in xy)


# -------------------------------------------------------- restriction


def test_restriction_examples():
    assert principal_restriction(W(3, 5, 1)) == simple(3, 5)
    assert principal_restriction(W(3, 5)) == simple(1, 5)
    assert principal_restriction(W(3, 5, 2, 1)) == simple(3, 5)
    grades = Counter(dict(alcove.principal_grades((2, 1, 0), 3)))
    assert grades == Counter({4: 1, 2: 2, 0: 2, -2: 2, -4: 1})
    assert alcove.peel_strings(grades) == {5: 1, 3: 1}


def test_sl2_tilting_characters():
    # T(p-1+s) = V(p-1+s) + V(p-1-s) for 0 < s <= p-1
    p = 5
    for s in range(1, p):
        char = Counter(dict(alcove.sl2_tilting_character(p - 1 + s, p)))
        assert alcove.peel_strings(char) == {p + s: 1, p - s: 1}
    assert alcove.peel_strings(dict(alcove.sl2_tilting_character(p - 1, p))) == {p: 1}
    for top in range(30):
        dim = sum(m for _, m in alcove.sl2_tilting_character(top, p))
        assert (dim % p == 0) == (top >= p - 1)


@pytest.mark.parametrize("i", [2, 3, 4, 5])
def test_tautological_goes_to_l_i(i):
    for p in (7, 11):
        if i < p:
            assert principal_restriction(W(i, p, 1)) == simple(i, p)


@pytest.mark.parametrize("i,p", [(3, 5), (3, 7), (4, 7), (5, 7), (4, 11)])
def test_restriction_dimension_and_plus(i, p):
    for x in enumerate_simples(i, p):
        r = principal_restriction(x)
        assert cat_dim(r) == alcove.weyl_dim(x.parts, i) % p
        if is_plus_weight(x):
            assert is_plus(r)


def test_restriction_is_multiplicative_sample():
    i, p = 5, 11
    simples = enumerate_simples(i, p)
    for x, y in list(itertools.product(simples[:8], simples[:8])):
        lhs = principal_restriction(kac_walton_fuse(x, y))
        assert lhs == tensor(principal_restriction(x), principal_restriction(y))
