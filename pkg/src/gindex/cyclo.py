"""Exact arithmetic in the cyclotomic field Q(zeta_m).

Elements are stored on the power basis 1, z, ..., z^(phi(m)-1) after
reduction modulo the m-th cyclotomic polynomial, as an integer numerator
vector over one positive common denominator.  The representation is
canonical, so equality is a tuple compare.

Trigonometric constants enter only through :func:`icot_half` and
:func:`csc2_half`, both of which are field elements; ``cot`` itself is not
representable without ``i`` and is deliberately absent.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import ConductorMismatch, InvalidConductor, InvalidInput, Pole

Rat = Fraction
Scalar = Union[int, Fraction]

# Kronecker packing only pays off above this length.
_SCHOOLBOOK_MAX = 6


def _check_conductor(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise InvalidConductor(f"conductor must be a positive integer, got {m!r}")


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic; both low -> high
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for k, d in enumerate(den):
                num[i + k] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    _check_conductor(m)
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p = _poly_exact_div(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse form of x^k mod Phi_m for k = 0..m-1."""
    phi_poly = cyclotomic_poly(m)
    n = len(phi_poly) - 1
    rows = []
    v = [0] * n
    v[0] = 1
    for _ in range(m):
        rows.append(tuple((i, c) for i, c in enumerate(v) if c))
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            for i in range(n):
                v[i] -= top * phi_poly[i]
    return tuple(rows)


def _reduce_cyclic(w: list[int], m: int, n: int) -> list[int]:
    """Reduce a length-m vector (an element of Q[x]/(x^m-1)) modulo Phi_m."""
    out = w[:n]
    table = _power_table(m)
    for k in range(n, m):
        c = w[k]
        if c:
            for i, r in table[k]:
                out[i] += c * r
    return out


def _pack(a: list[int], k: int) -> int:
    x = 0
    for c in reversed(a):
        x = (x << k) + c
    return x


def _unpack(x: int, k: int, count: int) -> list[int]:
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    full = 1 << k
    out = []
    for _ in range(count):
        d = x & mask
        if d >= half:
            d -= full
        out.append(d)
        x = (x - d) >> k
    return out


def _polymul(a: list[int], b: list[int]) -> list[int]:
    la, lb = len(a), len(b)
    if la <= _SCHOOLBOOK_MAX or lb <= _SCHOOLBOOK_MAX:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(a, key=abs)
    mb = max(b, key=abs)
    if not ma or not mb:
        return [0] * (la + lb - 1)
    bound = abs(ma) * abs(mb) * min(la, lb)
    k = bound.bit_length() + 2
    return _unpack(_pack(a, k) * _pack(b, k), k, la + lb - 1)


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational scalar: {x!r}")


class CycloNum:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "_num", "_den", "_hash")

    def __init__(self, m: int, coeffs: Iterable[Scalar]) -> None:
        _check_conductor(m)
        fr = [_as_fraction(c) for c in coeffs]
        n = euler_phi(m)
        if len(fr) > n:
            # accept longer vectors as elements of Q[x]/(x^m - 1)
            den = math.lcm(*(f.denominator for f in fr))
            w = [0] * m
            for i, f in enumerate(fr):
                w[i % m] += f.numerator * (den // f.denominator)
            self._set(m, _reduce_cyclic(w, m, n), den)
            return
        fr += [Fraction(0)] * (n - len(fr))
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        self._set(m, [f.numerator * (den // f.denominator) for f in fr], den)

    def _set(self, m: int, num: list[int], den: int) -> None:
        g = math.gcd(*num, den)
        if den < 0:
            g = -g
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.m = m
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, m: int, num: list[int], den: int) -> CycloNum:
        obj = cls.__new__(cls)
        obj._set(m, num, den)
        return obj

    @classmethod
    def from_rational(cls, m: int, q: Scalar) -> CycloNum:
        q = _as_fraction(q)
        _check_conductor(m)
        num = [0] * euler_phi(m)
        num[0] = q.numerator
        return cls._raw(m, num, q.denominator)

    @classmethod
    def zero(cls, m: int) -> CycloNum:
        return cls.from_rational(m, 0)

    @classmethod
    def one(cls, m: int) -> CycloNum:
        return cls.from_rational(m, 1)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        return self == self.conj()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloNum):
            return self.m == other.m and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.m, self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        return f"CycloNum({self.m}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: object) -> CycloNum | None:
        if isinstance(other, CycloNum):
            if other.m != self.m:
                raise ConductorMismatch(f"conductors differ: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(self.m, other)
        return None

    def __add__(self, other: object) -> CycloNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return CycloNum._raw(self.m, [x + y for x, y in zip(self._num, o._num)], self._den)
        da, db = self._den, o._den
        return CycloNum._raw(
            self.m, [x * db + y * da for x, y in zip(self._num, o._num)], da * db
        )

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum._raw(self.m, [-x for x in self._num], self._den)

    def __sub__(self, other: object) -> CycloNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CycloNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum._raw(
                self.m, [x * q.numerator for x in self._num], self._den * q.denominator
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m, n = self.m, len(self._num)
        prod = _polymul(list(self._num), list(o._num))
        if len(prod) > n:
            w = [0] * m
            for i, c in enumerate(prod):
                w[i % m] += c
            prod = _reduce_cyclic(w, m, n) if m > n else w[:n]
        return CycloNum._raw(m, prod, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        """Multiplicative inverse through the product of Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_m)")
        if self.is_rational():
            return CycloNum.from_rational(self.m, 1 / self.to_rational())
        cof = CycloNum.one(self.m)
        for t in unit_residues(self.m):
            if t != 1:
                cof = cof * self.galois(t)
        norm = self * cof
        if not norm.is_rational():
            raise ArithmeticError("norm is not rational")
        return cof * (1 / norm.to_rational())

    def __truediv__(self, other: object) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_m)")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> CycloNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> CycloNum:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, t: int) -> CycloNum:
        """Apply the automorphism z -> z^t (t coprime to m)."""
        m, n = self.m, len(self._num)
        if math.gcd(t, m) != 1:
            raise InvalidInput(f"{t} is not a unit mod {m}")
        w = [0] * m
        for k, c in enumerate(self._num):
            if c:
                w[(k * t) % m] += c
        return CycloNum._raw(m, _reduce_cyclic(w, m, n), self._den)

    def conj(self) -> CycloNum:
        return self.galois(-1)

    def monomial_shift(self, k: int) -> CycloNum:
        """Multiply by z^k without a full product."""
        m, n = self.m, len(self._num)
        w = [0] * m
        for i, c in enumerate(self._num):
            if c:
                w[(i + k) % m] += c
        return CycloNum._raw(m, _reduce_cyclic(w, m, n), self._den)

    def embed(self) -> complex:
        return embed_numeric(self)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> CycloNum:
        return cls(int(obj["m"]), [parse_rat(c) for c in obj["coeffs"]])


@lru_cache(maxsize=None)
def unit_residues(m: int) -> tuple[int, ...]:
    return tuple(t for t in range(1, m + 1) if math.gcd(t, m) == 1 and t <= max(m - 1, 1))


def rat_str(q: Scalar) -> str:
    """Canonical "p/q" string (integers print without a denominator)."""
    return str(Fraction(q))


def parse_rat(s: str | int) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(s.strip())
    except (ValueError, AttributeError) as exc:
        raise InvalidInput(f"not a rational string: {s!r}") from exc


# -- module-level operations ----------------------------------------------


@lru_cache(maxsize=4096)
def make(m: int, k: int) -> CycloNum:
    """zeta_m^k in canonical form."""
    _check_conductor(m)
    n = euler_phi(m)
    w = [0] * m
    w[k % m] = 1
    return CycloNum._raw(m, _reduce_cyclic(w, m, n), 1)


def arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidInput(f"unknown operation {op!r}")


def conj(a: CycloNum) -> CycloNum:
    return a.conj()


def _pole_check(k: int, m: int) -> None:
    _check_conductor(m)
    if k % m == 0:
        raise Pole(f"trigonometric pole at k={k}, m={m}")


@lru_cache(maxsize=None)
def icot_half(k: int, m: int) -> CycloNum:
    """-i*cot(pi*k/m) as the field element (z^k + 1)/(z^k - 1)."""
    _pole_check(k, m)
    z = make(m, k)
    return (z + 1) / (z - 1)


@lru_cache(maxsize=None)
def csc2_half(k: int, m: int) -> CycloNum:
    """csc^2(pi*k/m) as the field element -4 z^k/(z^k - 1)^2."""
    _pole_check(k, m)
    z = make(m, k)
    d = z - 1
    return (z * -4) / (d * d)


def embed_numeric(a: CycloNum) -> complex:
    """Evaluate at zeta = exp(2 pi i/m). Test and cross-check use only."""
    m = a.m
    total = 0j
    for k, c in enumerate(a.coeffs):
        if c:
            total += float(c) * cmath.exp(2j * math.pi * k / m)
    return total
