import logging
from fractions import Fraction

import numpy as np
import pytest

from exact import (
    ConsensusFailure, EchelonForm, Fp, FpMatrix, UnluckyPrime,
    consensus_rank, matmul_mod, rank, rank_and_kernel, rational_rank, rational_solve,
    reconstruct_vector, to_fp,
)
from exact.scalars import crt_pair, rational_reconstruct


# ===== 标量 =====

def test_to_fp():
    assert to_fp(Fraction(1, 2), 7) == 4
    assert to_fp(-1, 7) == 6
    assert to_fp(Fp(3, 7), 7) == 3
    with pytest.raises(UnluckyPrime):
        to_fp(Fraction(1, 7), 7)
    with pytest.raises(ValueError):
        to_fp(Fp(3, 7), 11)


def test_fp_arithmetic():
    a, b = Fp(3, 7), Fp(5, 7)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert Fp(1, 7) / Fp(2, 7) == 4
    assert 1 - a == 5
    assert 2 / Fp(4, 7) == 4
    assert Fp(2, 7) ** 3 == 1
    assert -Fp(1, 7) == 6
    assert not Fp(7, 7)
    assert a * Fraction(1, 3) == 1
    with pytest.raises(ZeroDivisionError):
        a / Fp(0, 7)
    with pytest.raises(ValueError):
        a + Fp(1, 11)


def test_crt_pair():
    assert crt_pair(2, 3, 3, 5) == (8, 15)


def test_rational_reconstruct():
    m = 2147483647
    assert rational_reconstruct(to_fp(Fraction(-3, 5), m), m) == Fraction(-3, 5)
    assert rational_reconstruct(0, m) == 0


def test_reconstruct_vector():
    primes = [2147483647, 2147483629]
    values = [Fraction(-4), Fraction(9, 2), Fraction(123456, 7891)]
    residues = [[to_fp(v, p) for v in values] for p in primes]
    assert reconstruct_vector(residues, primes) == values


# ===== 矩阵 =====

def test_fp_matrix_reduces_entries():
    m = FpMatrix(7, [[8, -1], [14, 3]])
    assert m.entries.tolist() == [[1, 6], [0, 3]]
    assert m == FpMatrix.from_rows([[1, Fraction(-1)], [0, 3]], 7)
    with pytest.raises(ValueError):
        FpMatrix(7, [1, 2, 3])


def test_identity_rank():
    m = FpMatrix(1009, np.eye(5, dtype=np.int64))
    result = rank_and_kernel(m)
    assert result.rank == 5
    assert result.kernel.shape == (0, 5)


def test_all_ones_kernel():
    result = rank_and_kernel(FpMatrix(7, np.ones((3, 3), dtype=np.int64)))
    assert result.rank == 1
    assert result.kernel.tolist() == [[1, 0, 6], [0, 1, 6]]


def test_rank_of_transpose():
    rng = np.random.default_rng(0)
    p = 2147483647
    left = rng.integers(0, p, size=(12, 4))
    right = rng.integers(0, p, size=(4, 9))
    product = FpMatrix(p, matmul_mod(left, right, p))
    assert rank(product) == 4
    assert rank(product.transpose()) == 4


def test_kernel_annihilates():
    rng = np.random.default_rng(1)
    p = 2147483629
    m = FpMatrix(p, rng.integers(0, p, size=(5, 8)))
    result = rank_and_kernel(m)
    assert result.rank + result.kernel.shape[0] == m.cols
    assert not matmul_mod(m.entries, result.kernel.T, p).any()


def test_matmul_mod_exact():
    rng = np.random.default_rng(2)
    p = 2147483647
    a = rng.integers(0, p, size=(6, 5000))
    b = rng.integers(0, p, size=(5000, 3))
    expected = (a.astype(object) @ b.astype(object)) % p
    assert matmul_mod(a, b, p).tolist() == expected.tolist()


def test_blocked_echelon_matches_unblocked():
    rng = np.random.default_rng(3)
    p = 1009
    rows = np.hstack([np.eye(4, dtype=np.int64), rng.integers(0, p, size=(4, 6))])
    rows = rows[[2, 0, 3, 1]]
    rows = np.vstack([rows, (rows[0] + rows[1]) % p, rows[2], np.zeros(10, dtype=np.int64)])
    blocked = EchelonForm(10, p, block_rows=2)
    whole = EchelonForm(10, p)
    blocked.add_rows(rows)
    whole.add_rows(rows)
    assert blocked.pivots == whole.pivots
    assert np.array_equal(blocked.basis, whole.basis)
    assert blocked.rank == 4
    assert blocked.contains(rows[5])
    assert blocked.add_rows(rows[:2]) == 0


# ===== 多素数一致 =====

def test_consensus_rank_agrees():
    rank_value = consensus_rank(lambda p: FpMatrix(p, [[2, 4], [1, 2]]), [1000003, 1000033])
    assert rank_value == 1


def test_consensus_recovers_from_bad_prime(caplog):
    with caplog.at_level(logging.WARNING):
        rank_value = consensus_rank(lambda p: FpMatrix(p, [[1000003, 0], [0, 1]]), [1000003, 1000033])
    assert rank_value == 2
    assert '不一致' in caplog.text


def test_consensus_failure():
    def builder(p):
        return FpMatrix(p, [[1, 0], [0, 0]] if p % 4 == 3 else [[1, 0], [0, 1]])

    with pytest.raises(ConsensusFailure) as info:
        consensus_rank(builder, [1000003, 1000033])
    assert set(info.value.ranks.values()) == {1, 2}


def test_consensus_needs_two_primes():
    with pytest.raises(ValueError):
        consensus_rank(lambda p: FpMatrix(p, [[1]]), [1000003, 1000003])


# ===== 有理数 =====

def test_rational_solve():
    assert rational_solve([[1, 2], [3, 4]], [5, 6]) == [Fraction(-4), Fraction(9, 2)]
    assert rational_solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        rational_solve([[1, 1]], [1])


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[Fraction(1, 2), 0], [0, 3]]) == 2
