from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gindex.cyclo import (
    CycloNum,
    arith,
    conj,
    csc2_half,
    cyclotomic_poly,
    embed_numeric,
    icot_half,
    make,
)
from gindex.errors import ConductorMismatch, InvalidConductor, Pole


def test_make_examples():
    assert make(4, 2) == -1
    assert make(2, 1) == -1
    assert make(5, 5) == 1


def test_arith_examples():
    assert arith(make(3, 1), make(3, 2), "add") == -1
    one, i = CycloNum.one(4), make(4, 1)
    assert arith(one + i, one - i, "mul") == 2
    inv = arith(one, one + i, "div")
    assert inv == (one - i) / 2
    assert inv * (one + i) == 1


def test_conj_examples():
    assert conj(make(5, 1)) == make(5, 4)
    assert conj(CycloNum.from_rational(7, Fraction(3, 7))) == Fraction(3, 7)
    x = make(6, 1) + make(6, 5)
    assert conj(x) == x


def test_trig_examples():
    assert icot_half(1, 2) == 0
    assert icot_half(1, 4) == -make(4, 1)
    assert abs(embed_numeric(icot_half(1, 3)) - (-1j / math.tan(math.pi / 3))) < 1e-12
    assert csc2_half(2, 4) == 1
    assert csc2_half(1, 4) == 2
    assert csc2_half(1, 6) == 4


def test_embed_examples():
    assert abs(embed_numeric(make(4, 1)) - 1j) < 1e-12
    assert abs(embed_numeric(csc2_half(1, 4)) - 2) < 1e-12
    z = make(7, 1)
    assert abs(embed_numeric(z + conj(z)) - 2 * math.cos(2 * math.pi / 7)) < 1e-12


def test_canonical_form_is_mod_cyclotomic_polynomial():
    assert cyclotomic_poly(6) == (1, -1, 1)
    # 1 + z + ... + z^(p-1) = 0 in Q(zeta_p)
    assert sum((make(7, k) for k in range(1, 7)), CycloNum.one(7)).is_zero()
    assert len(make(12, 0).coeffs) == 4


def test_errors():
    with pytest.raises(InvalidConductor):
        CycloNum(0, [1])
    with pytest.raises(ConductorMismatch):
        make(3, 1) + make(5, 1)
    with pytest.raises(Pole):
        icot_half(7, 7)
    with pytest.raises(Pole):
        csc2_half(0, 5)
    with pytest.raises(ZeroDivisionError):
        make(5, 1) / CycloNum.zero(5)


@pytest.mark.parametrize("m", range(2, 25))
def test_trig_identities(m):
    for k in range(1, m):
        c = icot_half(k, m)
        # (-i cot)^2 = -cot^2, so csc^2 = 1 + cot^2 = 1 - c^2
        assert 1 - c * c == csc2_half(k, m)
        assert icot_half(m - k, m) == -c
        assert csc2_half(m - k, m) == csc2_half(k, m)
        assert csc2_half(k, m).is_real()


def test_json_round_trip():
    x = make(9, 2) / 3 + Fraction(1, 5)
    assert CycloNum.from_json(x.to_json()) == x


def cyclo_numbers(m):
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
    return st.lists(coeff, min_size=1, max_size=m).map(lambda c: CycloNum(m, c))


@st.composite
def pairs(draw):
    m = draw(st.integers(2, 30))
    return draw(cyclo_numbers(m)), draw(cyclo_numbers(m))


@settings(max_examples=80, deadline=None)
@given(pairs())
def test_embedding_is_multiplicative(ab):
    a, b = ab
    assert cmath.isclose(embed_numeric(a * b), embed_numeric(a) * embed_numeric(b), abs_tol=1e-9, rel_tol=1e-9)
    assert cmath.isclose(embed_numeric(a + b), embed_numeric(a) + embed_numeric(b), abs_tol=1e-9)


@settings(max_examples=80, deadline=None)
@given(pairs())
def test_conj_involution_and_division(ab):
    a, b = ab
    assert conj(conj(a)) == a
    assert (a * b).conj() == a.conj() * b.conj()
    if b:
        assert (a / b) * b == a
        assert b * b.inverse() == 1
