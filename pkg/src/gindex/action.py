"""Input model for a Z/m action on a closed oriented surface whose point
stabilizers are trivial or all of G, plus the named constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InconsistentData, InvalidInput, InvalidRotationClass, UnsupportedParameter


@dataclass(frozen=True)
class ActionData:
    """Order ``m``, quotient genus ``h`` and fixed-point counts per rotation class.

    ``fixed`` holds sorted ``(j, |Z_j|)`` pairs with positive counts; use
    :func:`new_action` to build validated instances.
    """

    m: int
    h: int
    fixed: tuple[tuple[int, int], ...] = ()
    g: int = field(default=0, compare=False)

    @property
    def fixed_counts(self) -> dict[int, int]:
        return dict(self.fixed)

    @property
    def num_fixed(self) -> int:
        return sum(c for _, c in self.fixed)

    def count(self, j: int) -> int:
        return self.fixed_counts.get(j % self.m, 0)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "quotient_genus": self.h,
            "fixed_points": {str(j): c for j, c in self.fixed},
        }


def riemann_hurwitz_2g(m: int, h: int, num_fixed: int) -> int:
    """2g from 2 - 2g = m(2 - 2h) - |Z|(m - 1), all branch points totally ramified."""
    return 2 - m * (2 - 2 * h) + num_fixed * (m - 1)


def new_action(m: int, h: int, fixed_counts: Mapping[int, int] | None = None) -> ActionData:
    if not isinstance(m, int) or m < 2:
        raise InvalidInput(f"group order must be an integer >= 2, got {m!r}")
    if not isinstance(h, int) or h < 0:
        raise InvalidInput(f"quotient genus must be a non-negative integer, got {h!r}")
    pairs = []
    for j, c in (fixed_counts or {}).items():
        j, c = int(j), int(c)
        if not 1 <= j <= m - 1:
            raise InvalidRotationClass(f"rotation class {j} outside 1..{m - 1}")
        if math.gcd(j, m) != 1:
            raise InvalidRotationClass(
                f"rotation class {j} is not coprime to {m}; such a point has a proper stabilizer"
            )
        if c < 0:
            raise InvalidInput(f"negative fixed-point count for class {j}")
        if c:
            pairs.append((j, c))
    pairs.sort()
    two_g = riemann_hurwitz_2g(m, h, sum(c for _, c in pairs))
    if two_g % 2 or two_g < 0:
        raise InconsistentData(
            f"Riemann-Hurwitz gives 2g = {two_g} for m={m}, h={h}, |Z|={sum(c for _, c in pairs)}"
        )
    return ActionData(m, h, tuple(pairs), two_g // 2)


def validate_monodromy(a: ActionData) -> list[str]:
    """Warn unless sum_j inv(j)*|Z_j| = 0 mod m (local monodromy exponents)."""
    total = sum(pow(j, -1, a.m) * c for j, c in a.fixed)
    if total % a.m:
        return [
            f"sum of inverse rotation exponents is {total % a.m} mod {a.m}; "
            "no cyclic branched cover realizes this data"
        ]
    return []


def monodromy_ok(a: ActionData) -> bool:
    return not validate_monodromy(a)


def morita_example(m: int, h: int) -> ActionData:
    """m fixed points, each disk rotated by 2 pi/m."""
    if m < 3 or h < 0:
        raise UnsupportedParameter(f"Morita construction needs m >= 3 and h >= 0, got m={m}, h={h}")
    return new_action(m, h, {1: m})


@dataclass(frozen=True)
class AKData:
    base_action: ActionData
    base_genus: int
    fiber_genus: int
    j0: int = 1


def ak7_example(h: int, j0: int = 1) -> AKData:
    """Z/7 Atiyah-Kodaira construction over a genus-h surface."""
    if h < 2:
        raise UnsupportedParameter(f"the m=7 construction is set up for h >= 2, got {h}")
    base = new_action(7, h, {j0: 7})
    base_genus = 7 ** (2 * h) * (h - 1) + 1
    fiber_genus = 7 * h + 15
    if base.g != fiber_genus:
        raise InconsistentData(f"fiber genus {base.g} disagrees with 7h+15 = {fiber_genus}")
    return AKData(base, base_genus, fiber_genus, j0)


def ak2_standard() -> tuple[tuple[ActionData, int], tuple[ActionData, int]]:
    """The two fiberings S_6 -> M -> S_129 and S_321 -> M -> S_3.

    The second fibering's quotient genus 104 is its invariant eigenbundle
    rank; Riemann-Hurwitz for g = 321 then forces 228 fixed points.
    """
    return (new_action(2, 3, {1: 2}), 129), (new_action(2, 104, {1: 228}), 3)


def action_from_json(obj: Mapping) -> ActionData:
    """Parse either an explicit action or a named example."""
    if not isinstance(obj, Mapping):
        raise InvalidInput("action description must be a JSON object")
    if "example" in obj:
        name = obj["example"]
        if name == "morita":
            return morita_example(int(obj["m"]), int(obj["h"]))
        if name == "ak7":
            return ak7_example(int(obj["h"]), int(obj.get("j0", 1))).base_action
        if name == "ak2":
            which = int(obj.get("fibering", 1))
            if which not in (1, 2):
                raise InvalidInput("ak2 fibering must be 1 or 2")
            return ak2_standard()[which - 1][0]
        raise InvalidInput(f"unknown example {name!r}")
    try:
        m = int(obj["m"])
        h = int(obj["quotient_genus"])
        fixed = {int(k): int(v) for k, v in dict(obj.get("fixed_points", {})).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed action description: {exc}") from exc
    return new_action(m, h, fixed)
