"""Chevalley-Weil: H_1(S) as a representation of the deck group Z/m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .action import ActionData
from .cyclo import CycloNum, make
from .errors import InconsistentCharacter


@dataclass(frozen=True)
class CharacterVec:
    m: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class IsotypicDecomp:
    """``n[s]`` is the multiplicity of tau -> zeta^s in H_1(S; C);
    ``rational_dims[k]`` the multiplicity of Q(zeta_k) in H_1(S; Q)."""

    m: int
    n: tuple[int, ...]
    rational_dims: dict[int, int]

    def to_json(self) -> dict:
        return {
            "n": list(self.n),
            "rational_isotypic": {str(k): v for k, v in sorted(self.rational_dims.items())},
        }


def character_h1(a: ActionData) -> CharacterVec:
    # every nontrivial power of the generator fixes exactly Z (Lefschetz)
    rest = 2 - a.num_fixed
    return CharacterVec(a.m, (2 * a.g,) + (rest,) * (a.m - 1))


def complex_multiplicities(c: CharacterVec) -> IsotypicDecomp:
    m = c.m
    n = []
    for s in range(m):
        total = CycloNum.zero(m)
        for r, v in enumerate(c.values):
            if v:
                total = total + make(m, -r * s) * v
        val = total / m
        if not val.is_rational():
            raise InconsistentCharacter(f"multiplicity of zeta^{s} is not rational: {val}")
        q = val.to_rational()
        if q.denominator != 1 or q < 0:
            raise InconsistentCharacter(f"multiplicity of zeta^{s} is {q}")
        n.append(int(q))
    rational_dims = {}
    for k in range(1, m + 1):
        if m % k == 0:
            # zeta^(m/k) has multiplicative order k
            rational_dims[k] = n[(m // k) % m]
    return IsotypicDecomp(m, tuple(n), rational_dims)


def closed_form_multiplicity(a: ActionData, s: int) -> int:
    """n[s] for s != 0 without any Fourier analysis: (2g - 2 + |Z|)/m."""
    if s % a.m == 0:
        return 2 * a.h
    q = Fraction(2 * a.g - 2 + a.num_fixed, a.m)
    if q.denominator != 1:
        raise InconsistentCharacter(f"(2g-2+|Z|)/m = {q} is not an integer")
    return int(q)
