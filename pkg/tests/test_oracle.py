import os
import subprocess
import sys
from math import comb

import numpy as np
import pytest

from verlinde import _accel, oracle
from verlinde.errors import DegreeTooLargeError, NotUnipotentError, SizeOutOfRangeError
from verlinde.oracle import (
    FpMatrix,
    JordanType,
    ext_power_jordan,
    jordan_type_of_unipotent,
    semisimplify,
    sym_power_is_projective,
    sym_power_jordan,
    tensor_jordan,
)
from verlinde.ring import VerClass, cat_dim, fuse_simples, simple


def jt(p, *blocks):
    return JordanType(p, blocks)


def test_identity_and_single_block():
    assert jordan_type_of_unipotent(FpMatrix(5, np.eye(3, dtype=int))) == jt(5, 1, 1, 1)
    assert jordan_type_of_unipotent(oracle.unipotent_block(4, 5)) == jt(5, 4)


def test_kronecker_of_two_blocks_by_hand():
    j2 = np.array([[1, 1], [0, 1]])
    g = np.kron(j2, j2) % 3
    # (g - 1) has rank 2 and (g - 1)^2 has rank 1 over F_3, (g - 1)^3 = 0
    n = (g - np.eye(4, dtype=int)) % 3
    assert _accel.rank_mod_p(n, 3) == 2
    assert _accel.rank_mod_p(n @ n % 3, 3) == 1
    assert jordan_type_of_unipotent(FpMatrix(3, g)) == jt(3, 3, 1)


def test_not_unipotent():
    with pytest.raises(NotUnipotentError):
        jordan_type_of_unipotent(FpMatrix(5, [[2, 0], [0, 1]]))


def test_rank_sequence_invariant_under_conjugation():
    rng = np.random.default_rng(11)
    p = 7
    for a, b in [(3, 4), (2, 6), (5, 5)]:
        g = np.kron(oracle.unipotent_block(a, p).entries, oracle.unipotent_block(b, p).entries) % p
        n = g.shape[0]
        while True:
            c = rng.integers(0, p, size=(n, n))
            if _accel.rank_mod_p(c, p) == n:
                break
        # c^{-1} over F_p by row reduction of [c | I]
        aug = np.concatenate([c, np.eye(n, dtype=np.int64)], axis=1) % p
        _accel.rref_inplace(aug, p)
        cinv = aug[:, n:]
        conj = _accel.matmul_mod(_accel.matmul_mod(c, g, p), cinv, p)
        assert jordan_type_of_unipotent(FpMatrix(p, conj)) == tensor_jordan(a, b, p)


def test_tensor_examples():
    assert tensor_jordan(1, 4, 5) == jt(5, 4)
    assert tensor_jordan(2, 2, 3) == jt(3, 3, 1)
    assert tensor_jordan(2, 3, 5) == jt(5, 4, 2)
    assert semisimplify(tensor_jordan(2, 3, 5)) == fuse_simples(2, 3, 5)
    with pytest.raises(SizeOutOfRangeError):
        tensor_jordan(6, 1, 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_tensor_dimensions(p):
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            t = tensor_jordan(a, b, p)
            assert t.dim == a * b
            assert cat_dim(semisimplify(t)) == (a * b) % p


def test_sym_examples():
    assert sym_power_jordan(3, 0, 5) == jt(5, 1)
    assert sym_power_jordan(2, 2, 3) == jt(3, 3)
    for n in range(7):
        assert sym_power_jordan(2, n, 7) == jt(7, n + 1)
    with pytest.raises(DegreeTooLargeError):
        sym_power_jordan(2, 5, 5)


def test_sym_two_on_x2_xy_y2_by_hand():
    # g: x -> x, y -> x + y; on (x^2, xy, y^2) columns are images
    m = oracle.sym_power_matrix(2, 2, 3).entries
    expected = np.array([[1, 1, 1], [0, 1, 2], [0, 0, 1]])
    assert (m == expected).all()


def test_ext_examples():
    assert ext_power_jordan(4, 0, 5) == jt(5, 1)
    assert ext_power_jordan(4, 4, 5) == jt(5, 1)
    assert ext_power_jordan(3, 2, 5) == jt(5, 3)
    with pytest.raises(SizeOutOfRangeError):
        ext_power_jordan(3, 4, 5)


def test_semisimplify_examples():
    assert semisimplify(jt(3, 3, 1)) == simple(1, 3)
    assert semisimplify(jt(3, 3)) == VerClass.zero(3)
    assert semisimplify(jt(5, 4, 2)) == VerClass(5, (0, 1, 0, 1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_literal_and_graded_routes_agree(p):
    for a in range(1, p + 1):
        for n in range(p):
            lit = sym_power_jordan(a, n, p, method="literal")
            assert lit.dim == comb(a + n - 1, n)
            assert sym_power_jordan(a, n, p, method="graded") == lit


@pytest.mark.parametrize("p", [5, 7, 11])
def test_freeness_certificate_against_jordan_type(p):
    for a in range(2, p + 1):
        for n in range(p):
            if comb(a + n - 1, n) > 2500:
                continue
            free = not semisimplify(sym_power_jordan(a, n, p))
            assert oracle.sym_power_is_projective(a, n, p) == free
            # with every class projected the certificate can only say True or "unknown"
            verdict = oracle._GradedSym(a, n, p).free_certificate(sketch_min=1, seed=5)
            assert verdict in (free, None)
            if not free:
                assert verdict is not True


def test_jordan_type_json_and_validation():
    t = jt(5, 2, 4, 1)
    assert t.blocks == (4, 2, 1)
    assert str(t) == "{4,2,1}"
    assert JordanType.from_json(t.to_json()) == t
    assert t.to_json() == {"p": 5, "blocks": [4, 2, 1]}
    with pytest.raises(SizeOutOfRangeError):
        jt(5, 6)


def test_fp_matrix_reduces_entries():
    m = FpMatrix(5, [[6, -1], [0, 11]])
    assert m.entries.tolist() == [[1, 4], [0, 1]]
    with pytest.raises(ValueError):
        FpMatrix(5, [[1, 2, 3]])


def test_span_matches_rank():
    rng = np.random.default_rng(3)
    for p in (3, 13):
        a = rng.integers(0, p, size=(40, 25)) @ rng.integers(0, p, size=(25, 60)) % p
        span = _accel.Span(60, p, capacity=4)
        for k in range(0, 40, 7):
            span.add(a[k:k + 7])
        assert span.dim == _accel.rank_mod_p(a, p) == 25


def test_numpy_fallback_agrees():
    code = (
        "from verlinde import _accel, oracle;"
        "assert _accel.backend() == 'numpy';"
        "print(oracle.sym_power_jordan(4, 3, 5, method='graded'), oracle.sym_power_jordan(3, 3, 5, method='literal'),"
        " oracle.tensor_jordan(3, 4, 7), oracle.sym_power_is_projective(5, 3, 7))"
    )
    env = dict(os.environ, VERLINDE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    expected = (
        f"{sym_power_jordan(4, 3, 5)} {sym_power_jordan(3, 3, 5)} {tensor_jordan(3, 4, 7)} "
        f"{oracle.sym_power_is_projective(5, 3, 7)}"
    )
    assert out.stdout.strip() == expected


def test_gaussian_binomial():
    from verlinde.oracle import gaussian_binomial

    assert gaussian_binomial(4, 2) == [1, 1, 2, 1, 1]
    assert gaussian_binomial(5, 0) == [1]
    for m in range(9):
        for k in range(m + 1):
            c = gaussian_binomial(m, k)
            assert sum(c) == comb(m, k) and c == c[::-1]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_tilting_route_matches_matrices(p):
    for a in range(1, p + 1):
        for n in range(p):
            if comb(a + n - 1, n) <= 1500:
                assert sym_power_jordan(a, n, p, method="tilting") == sym_power_jordan(a, n, p)


def test_tilting_route_matches_certificate_beyond_full_jordan():
    for a, n, p in [(6, 9, 11), (8, 7, 11), (9, 6, 13)]:
        free = not semisimplify(sym_power_jordan(a, n, p, method="tilting"))
        assert free == sym_power_is_projective(a, n, p)
