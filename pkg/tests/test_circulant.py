from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from gindex import circulant as cc
from gindex.action import morita_example, new_action
from gindex.cyclo import csc2_half, embed_numeric
from gindex.errors import InvalidInput, UnsupportedParameter
from gindex.indexcore import build_system, index_system


def brute_group(m):
    reps = cc.class_reps(m)
    rep = lambda x: min(x % m, m - x % m)
    orders = {}
    for x in reps:
        k, y = 1, x
        while y != 1:
            y, k = rep(y * x), k + 1
        orders[x] = k
    return reps, orders


def test_unit_group_examples():
    g = cc.unit_group(7)
    assert (g.order, g.factors) == (3, (3,))
    assert cc.unit_group(16).factors == (4,)
    g = cc.unit_group(15)
    assert g.order == 4
    # brute force: an element of order 4 exists, so the quotient is cyclic
    assert max(brute_group(15)[1].values()) == 4 and g.factors == (4,)
    assert cc.unit_group(24).factors == (2, 2)
    with pytest.raises(UnsupportedParameter):
        cc.unit_group(2)


@pytest.mark.parametrize("m", range(3, 41))
def test_unit_group_matches_brute_force(m):
    g = cc.unit_group(m)
    reps, orders = brute_group(m)
    assert math.prod(g.factors or (1,)) == len(reps) == g.order
    assert sorted(g.elements) == reps
    rep = lambda x: min(x % m, m - x % m)
    for i, x in enumerate(g.elements):
        for j, y in enumerate(g.elements):
            assert g.table[i][j] == rep(x * y)
    # invariant factors: each divides the previous, and the exponent is the largest order
    assert all(a % b == 0 for a, b in zip(g.factors, g.factors[1:]))
    assert max(orders.values()) == (g.factors[0] if g.factors else 1)


def test_csc_matrix_examples():
    c = cc.csc_matrix(5)
    assert c.entries == ((csc2_half(1, 5), csc2_half(2, 5)), (csc2_half(2, 5), csc2_half(4, 5)))
    assert csc2_half(4, 5) == csc2_half(1, 5)
    row = cc.csc_matrix(7).numeric()[0]
    want = [1 / math.sin(math.pi * l / 7) ** 2 for l in (1, 2, 3)]
    assert np.allclose(row, want, atol=1e-12)
    assert cc.csc_matrix(4).entries == ((2,),)


def test_certify_examples():
    assert cc.certify_basis(5).det_nonzero
    cert = cc.certify_basis(7)
    assert cert.det_nonzero
    assert np.sign(cert.numeric_det) == np.sign(embed_numeric(cert.determinant).real)
    assert cc.certify_basis(16).det_nonzero
    assert set(cert.to_json()) == {"m", "det_nonzero", "method", "permutation"}


@pytest.mark.parametrize("m", [15, 21, 24, 27, 32])
def test_certify_composites(m):
    assert cc.certify_basis(m).det_nonzero


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_prime_group_matrix_is_circulant(p):
    assert cc.is_circulant(cc.group_matrix(p))


def test_iterated_block_structure():
    # for (2, 2) the group matrix is block circulant with circulant 2x2 blocks
    mat = cc.group_matrix(24)
    blocks = [[[mat[2 * I + a][2 * J + b] for b in range(2)] for a in range(2)] for I in range(2) for J in range(2)]
    assert all(cc.is_circulant(b) for b in blocks)
    assert blocks[0] == blocks[3] and blocks[1] == blocks[2]


def test_circulant_eigen_examples():
    assert cc.circulant_eigen_check([1, 0, 0], 1e-12)
    assert sorted(abs(x) for x in cc.circulant_eigenvalues([2.5, 2.5, 2.5])) == pytest.approx([0, 0, 7.5])
    assert cc.circulant_eigen_check([2.5, 2.5, 2.5], 1e-10)
    row = [embed_numeric(x).real for x in cc.group_matrix(7)[0]]
    assert cc.circulant_eigen_check(row, 1e-8)
    with pytest.raises(InvalidInput):
        cc.circulant_eigen_check([1.0], 0)


def test_eigen_check_detects_wrong_matrix():
    # formula eigenvalues of a non-circulant perturbation must not match
    good = [1.0, 2.0, 0.5, -1.0]
    assert cc.circulant_eigen_check(good)
    assert cc._same_multiset([1, 2], [1, 2.1], 1e-8) is False


def test_block_circulant_sizes():
    rng = np.random.default_rng(0)
    for d, n in itertools.product(range(1, 9), repeat=2):
        assert cc.block_circulant_eigen_check(rng.normal(size=(d, n)).tolist(), 1e-8)


@pytest.mark.parametrize("m", range(3, 25))
def test_group_character_eigenvalues(m):
    assert cc.group_eigen_check(m)


def test_rank_examples():
    assert cc.rank_K(build_system(new_action(2, 3, {1: 2}))) == 2
    assert cc.rank_K(build_system(morita_example(7, 2))) == 2
    a = new_action(15, 1, {1: 1, 2: 1, 4: 1, 8: 1})
    assert cc.rank_K(build_system(a), method="direct") == 5 == cc.rank_K(build_system(a))
    with pytest.raises(InvalidInput):
        cc.rank_K(build_system(a), method="guess")


def test_rank_auto_agrees_with_direct():
    for m in range(3, 14):
        merged = [j for j in range(1, m // 2 + 1) if math.gcd(j, m) == 1]
        for size in range(len(merged) + 1):
            for S in itertools.combinations(merged, size):
                sys = index_system(m, S)
                assert cc.rank_K(sys) == cc.rank_K(sys, method="direct") == size + 1


def test_rank_contradiction_hook():
    sys = index_system(7, (1, 2))
    broken = type(sys)(sys.m, sys.J, tuple((r[0], r[1], r[1]) for r in sys.K), sys.eta_index)
    with pytest.raises(cc.RankContradiction):
        cc.rank_K(broken, method="direct")
