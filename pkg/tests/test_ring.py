import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verlinde import ring
from verlinde.errors import IndexOutOfRangeError, NotPrimeError, PrimeMismatchError
from verlinde.ring import VerClass, cat_dim, dual, fuse_simples, hom_dim, is_plus, simple, tensor

PRIMES = (3, 5, 7, 11, 13)


def cls(p, **terms):
    return VerClass.from_dict(p, {int(k[1:]): v for k, v in terms.items()})


def test_simple_basis_vectors():
    assert simple(1, 5).mult == (1, 0, 0, 0)
    assert simple(4, 5).mult == (0, 0, 0, 1)
    with pytest.raises(IndexOutOfRangeError):
        simple(5, 5)
    with pytest.raises(IndexOutOfRangeError):
        simple(0, 5)


def test_check_prime():
    assert ring.check_prime(13) == 13
    for bad in (1, 4, 9, 15, 0, -3):
        with pytest.raises(NotPrimeError):
            ring.check_prime(bad)
    with pytest.raises(NotPrimeError):
        ring.check_prime(True)


def test_fuse_examples():
    assert fuse_simples(2, 2, 5) == cls(5, L1=1, L3=1)
    assert fuse_simples(4, 4, 5) == simple(1, 5)
    assert fuse_simples(4, 4, 7) == cls(7, L1=1, L3=1, L5=1)
    for p in PRIMES:
        for j in range(1, p):
            assert fuse_simples(1, j, p) == simple(j, p)


def fusion_by_clebsch_gordan(i, j, p):
    """Independent reading of the truncated rule: classical Clebsch-Gordan
    V_i (x) V_j = V_{|i-j|+1} + ... + V_{i+j-1}, then drop V_k with k >= p
    together with their mirror V_{2p-k}."""
    kept = list(range(abs(i - j) + 1, i + j, 2))
    out = [0] * (p - 1)
    for k in kept:
        if k < p:
            out[k - 1] += 1
    for k in kept:
        if k > p:
            out[2 * p - k - 1] -= 1
    return VerClass(p, tuple(out))


@pytest.mark.parametrize("p", PRIMES)
def test_fusion_matches_truncated_clebsch_gordan(p):
    for i in range(1, p):
        for j in range(1, p):
            assert fuse_simples(i, j, p) == fusion_by_clebsch_gordan(i, j, p)


def test_tensor_examples():
    y = cls(5, L2=1, L3=2)
    assert tensor(simple(1, 5), y) == y
    assert tensor(cls(5, L2=2), simple(2, 5)) == cls(5, L1=2, L3=2)
    assert tensor(VerClass.zero(5), y) == VerClass.zero(5)
    with pytest.raises(PrimeMismatchError):
        tensor(simple(1, 5), simple(1, 7))


def test_dual_and_dimensions():
    assert dual(simple(3, 5)) == simple(3, 5)
    x = cls(5, L1=2, L4=1)
    assert dual(x) == x
    assert cat_dim(simple(4, 5)) == 4
    assert cat_dim(simple(1, 5)) == 1
    assert cat_dim(tensor(simple(2, 5), simple(3, 5))) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_unit_in_x_tensor_dual(p):
    for i in range(1, p):
        x = simple(i, p)
        assert tensor(x, dual(x))[1] >= 1


def test_is_plus():
    assert is_plus(simple(3, 5))
    assert not is_plus(simple(2, 5))
    assert is_plus(cls(7, L1=1, L5=1))
    assert is_plus(VerClass.zero(7))


def test_hom_dim():
    assert hom_dim(cls(5, L3=2), cls(5, L3=3)) == 6
    for p in (5, 7):
        for i in range(1, p):
            for j in range(1, p):
                assert hom_dim(simple(i, p), simple(j, p)) == int(i == j)
                assert hom_dim(simple(1, p), fuse_simples(i, j, p)) == int(i == j)


def test_class_basics():
    x = VerClass(5, (2, 0, 1, 0))
    assert str(x) == "2L1 + L3"
    assert str(VerClass.zero(5)) == "0"
    assert x[3] == 1
    assert x.total == 3
    assert list(x.items()) == [(1, 2), (3, 1)]
    assert 2 * x == x + x == x * 2
    assert x * simple(2, 5) == tensor(x, simple(2, 5))
    assert VerClass.from_json(x.to_json()) == x
    with pytest.raises(ValueError):
        VerClass(5, (1, 2))
    with pytest.raises(ValueError):
        VerClass(5, (1, -1, 0, 0))
    with pytest.raises(ValueError):
        x * -1


def test_p_equal_two_is_degenerate():
    assert fuse_simples(1, 1, 2) == simple(1, 2)
    assert cat_dim(simple(1, 2)) == 1


def test_fusion_table_concurrent_first_use():
    ring._TABLES.pop(11, None)
    seen = []

    def worker():
        seen.append(ring.fusion_table(11))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(t is seen[0] for t in seen)


def classes(p):
    return st.lists(st.integers(0, 3), min_size=p - 1, max_size=p - 1).map(lambda m: VerClass(p, tuple(m)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(classes(p), classes(p), classes(p))))
def test_semiring_laws_on_random_classes(xyz):
    x, y, z = xyz
    p = x.p
    assert tensor(x, y) == tensor(y, x)
    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))
    assert tensor(x, y + z) == tensor(x, y) + tensor(x, z)
    assert cat_dim(tensor(x, y)) == cat_dim(x) * cat_dim(y) % p
    assert cat_dim(x + y) == (cat_dim(x) + cat_dim(y)) % p
    assert tensor(x, y).total >= 0
