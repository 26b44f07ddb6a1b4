from __future__ import annotations

import random
from fractions import Fraction

from gindex.action import ak7_example, morita_example, new_action
from gindex.arithgroup import factor_list, h2_basis, image_basis, stable_range
from gindex.circulant import rank_K
from gindex.indexcore import build_system, solve_deg0, solve_deg1
from gindex.reptheory import character_h1, complex_multiplicities
from gindex.verify import random_action


def factors(a):
    n = complex_multiplicities(character_h1(a))
    return factor_list(a, n, solve_deg0(a, n))


def test_factor_list_examples():
    for h in range(0, 4):
        f = factors(morita_example(7, h))
        assert f.labels() == [f"Sp_{2 * h}", f"SU({h},{h + 5})", f"SU({h + 1},{h + 4})", f"SU({h + 2},{h + 3})"]
    f = factors(new_action(2, 3, {1: 2}))
    assert f.labels() == ["Sp_6", "Sp_6"] and (f.h, f.h_prime) == (3, 3)
    for h in range(2, 5):
        f = factors(ak7_example(h).base_action)
        assert {(a, b) for _, a, b in f.su_factors} == {(h, h + 5), (h + 1, h + 4), (h + 2, h + 3)}
    assert factors(morita_example(5, 1)).field_labels == ("Q(zeta_5 + zeta_5^-1)",)


def test_dimension_bookkeeping():
    rng = random.Random(2)
    for _ in range(150):
        a = random_action(rng, 20)
        f = factors(a)
        total = 2 * f.h + 2 * (f.h_prime or 0) + 2 * sum(x + y for _, x, y in f.su_factors)
        assert total == 2 * a.g


def test_h2_basis_examples():
    syms = [e["symbol"] for e in h2_basis(factors(new_action(2, 3, {1: 2})))]
    assert syms == ["x_{zeta^0}", "x_{zeta^1}"]
    assert len(h2_basis(factors(morita_example(7, 2)))) == 4
    assert len(h2_basis(factors(morita_example(5, 2)))) == 3
    for m in range(3, 15):
        assert len(h2_basis(factors(morita_example(m, 1)))) == m // 2 + 1


def test_stable_range_examples():
    a = morita_example(7, 6)
    sr = stable_range(a, factors(a))
    assert (sr.f_rank_lower, sr.borel_bound, sr.degree2_valid) == (5, 2, True)
    a = morita_example(7, 3)
    sr = stable_range(a, factors(a))
    assert (sr.borel_bound, sr.degree2_valid) == (0, False)
    assert "caveat" in sr.to_json()
    assert all("caveat" in e for e in h2_basis(factors(a), sr.degree2_valid))


def test_stable_range_monotone_in_h():
    rng = random.Random(4)
    for _ in range(100):
        a = random_action(rng, 16, max_h=9)
        b = new_action(a.m, a.h + 1, a.fixed_counts)
        if stable_range(a, factors(a)).degree2_valid:
            assert stable_range(b, factors(b)).degree2_valid


def test_image_basis_examples():
    sys = build_system(new_action(2, 3, {1: 2}))
    img = image_basis(solve_deg1(sys))
    assert img.basis == ("sigma", "eta_1")
    assert img.matrix == ((Fraction(1, 8), Fraction(1, 8)), (Fraction(1, 8), Fraction(-1, 8)))
    assert img.to_json()["matrix"] == [["1/8", "1/8"], ["1/8", "-1/8"]]
    assert image_basis(solve_deg1(build_system(new_action(3, 2, {})))).basis == ("sigma",)
    sys = build_system(morita_example(7, 1))
    img = image_basis(solve_deg1(sys))
    assert img.basis == ("sigma", "eta_1") and len(img.matrix) == 4 and img.columns == rank_K(sys)
