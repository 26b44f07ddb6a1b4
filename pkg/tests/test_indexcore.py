from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from gindex import indexcore as ic
from gindex.action import ActionData, morita_example, new_action
from gindex.cyclo import CycloNum, csc2_half, embed_numeric, make
from gindex.errors import InconsistentFixedData, Pole, UnsupportedParameter
from gindex.reptheory import character_h1, complex_multiplicities
from gindex.verify import random_action


def deg0(a):
    return ic.solve_deg0(a, complex_multiplicities(character_h1(a)))


def solve(a):
    return ic.solve_deg1(ic.build_system(a))


def test_coth_jet_examples():
    j = ic.coth_jet(1, 1, 2)
    assert j.c0 == 0 and j.c1[1] == Fraction(1, 2)
    j = ic.coth_jet(1, 2, 4)
    assert j.c0 == 0 and j.c1[1] == Fraction(1, 2)
    j = ic.coth_jet(1, 1, 4)
    assert j.c0 == -make(4, 1) and j.c1[1] == 1
    with pytest.raises(Pole):
        ic.coth_jet(2, 3, 6)


def test_jet_algebra():
    a, b = ic.coth_jet(1, 1, 5), ic.coth_jet(2, 1, 5)
    s = a + b
    assert s.c0 == a.c0 + b.c0 and set(s.c1) == {1, 2}
    p = a * b
    assert p.c0 == a.c0 * b.c0
    assert p.c1[1] == a.c1[1] * b.c0 and p.c1[2] == b.c1[2] * a.c0
    assert a.scale(3).c1[1] == a.c1[1] * 3


def test_rhs_jet_examples():
    j = ic.rhs_jet(new_action(2, 3, {1: 2}), 1)
    assert j.c0 == 0 and j.c1 == {1: Fraction(1, 2)}
    z = make(5, 1)
    j = ic.rhs_jet(morita_example(5, 1), 1)
    assert j.c0 == (z + 1) / (z - 1) * 5
    assert j.c1 == {1: csc2_half(1, 5) / 2}
    assert abs(embed_numeric(j.c0) - 5 * (-1j / math.tan(math.pi / 5))) < 1e-9
    j = ic.rhs_jet(new_action(3, 2, {}), 2)
    assert j.c0 == 0 and j.c1 == {}


def test_solve_deg0_examples():
    assert deg0(new_action(2, 3, {1: 2})).entries == ()
    for h in range(0, 5):
        pairs = {(a, b) for _, a, b in deg0(morita_example(7, h)).entries}
        assert pairs == {(h, h + 5), (h + 1, h + 4), (h + 2, h + 3)}
    sig = deg0(morita_example(5, 1))
    assert [(a, b) for _, a, b in sig.entries] == [(1, 4), (2, 3)]


def test_solve_deg0_rejects_bad_monodromy():
    a = new_action(5, 1, {1: 1, 2: 1})
    with pytest.raises(InconsistentFixedData):
        deg0(a)


def test_mcmullen_examples():
    for h in range(0, 4):
        a = morita_example(7, h)
        for s, a_s, _ in deg0(a).entries:
            assert ic.mcmullen_count(a, s) == a_s
    assert ic.mcmullen_count(morita_example(5, 1), 1) == deg0(morita_example(5, 1)).a(1)
    assert ic.mcmullen_count(morita_example(3, 2), 1) == 2
    with pytest.raises(UnsupportedParameter):
        ic.mcmullen_count(new_action(5, 1, {2: 5}), 1)


def test_build_system_examples():
    sys = ic.build_system(new_action(2, 3, {1: 2}))
    assert sys.J == ((1, 1), (1, -1))
    assert sys.K == ((Fraction(1, 4), 0), (0, Fraction(1, 4)))
    # row 0 counts each conjugate pair twice
    sys = ic.build_system(new_action(3, 2, {}))
    assert sys.J == ((1, 2), (1, -1)) and sys.K == ((Fraction(1, 4),), (0,))
    sys = ic.build_system(new_action(4, 6, {1: 1, 3: 1}))
    assert len(sys.J) == 3 and all(len(r) == 3 for r in sys.J)
    assert sys.eta_index == (1,)
    assert sys.J[0] == (1, 2, 1)
    assert sys.J[1] == (1, 0, -1) and sys.J[2] == (1, -2, 1)


def test_system_entries_are_real():
    for m in range(2, 20):
        for row in ic.j_matrix(m):
            assert all(x.is_real() for x in row)


def test_solve_deg1_examples():
    e1, em1 = solve(new_action(2, 3, {1: 2})).classes
    assert (e1.sigma_coeff, e1.eta_coeffs) == (Fraction(1, 8), {1: Fraction(1, 8)})
    assert (em1.sigma_coeff, em1.eta_coeffs) == (Fraction(1, 8), {1: Fraction(-1, 8)})
    e1, em1 = solve(new_action(2, 3, {})).classes
    assert e1.sigma_coeff == em1.sigma_coeff == Fraction(1, 8)
    a = morita_example(7, 2)
    s = solve(a)
    assert len(s.classes) == 4 and s.rational
    assert all(not v for row in ic.deg1_residuals(a, s) for v in row.values())


def test_solved_json_shape():
    rows = solve(new_action(2, 3, {1: 2})).to_json()
    assert rows[0]["sigma"] == "1/8" and rows[0]["eta"] == {"1": "1/8"} and rows[0]["q"] == "zeta^0"
    assert str(solve(new_action(2, 3, {1: 2})).classes[1]) == "1/8 σ - 1/8 η_1"


def test_j_invertible_small():
    for m in range(2, 25):
        assert not ic.j_determinant(m).is_zero()


def test_index_system_matches_jets():
    rng = random.Random(11)
    for _ in range(150):
        a = random_action(rng, 24)
        assert ic.build_system(a) == ic.index_system(a.m, ic.eta_index(a))


def test_sweep_invariants():
    rng = random.Random(5)
    for _ in range(200):
        a = random_action(rng, 20)
        n = complex_multiplicities(character_h1(a))
        sig = ic.solve_deg0(a, n)
        for s, x, y in sig.entries:
            assert x >= 0 and y >= 0 and x + y == n.n[s]
        assert not any(ic.deg0_residuals(a, sig))
        solved = solve(a)
        assert solved.rational
        row = ic.sigma_row(solved)
        assert row.sigma_coeff == Fraction(1, 4) and not any(row.eta_coeffs.values())


def test_conjugation_symmetry():
    rng = random.Random(8)
    for _ in range(100):
        a = random_action(rng, 20)
        b = new_action(a.m, a.h, {a.m - j: c for j, c in a.fixed})
        assert deg0(b).D == tuple(-d for d in deg0(a).D)
        assert solve(a) == solve(b)


def test_merge_eta_rejects_unequal():
    m = 5
    with pytest.raises(AssertionError):
        ic.merge_eta(m, {1: CycloNum.one(m), 4: CycloNum.zero(m) + 2})
