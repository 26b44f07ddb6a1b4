"""Applications: the branched double cover signature formula, Toledo
invariants for the order-7 Atiyah-Kodaira family, characteristic-number
comparisons across fiberings, and eigenbundle ranks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .action import ActionData, action_from_json, ak7_example, new_action
from .cyclo import parse_rat, rat_str
from .errors import ConventionMismatch, IncompleteInput, InconsistentInputs, InternalError, InvalidInput
from .indexcore import CohomExpr, build_system, solve_deg0, solve_deg1
from .reptheory import character_h1, complex_multiplicities


def solve(a: ActionData):
    return solve_deg1(build_system(a))


def signature(a: ActionData):
    return solve_deg0(a, complex_multiplicities(character_h1(a)))


# -- m = 2 ----------------------------------------------------------------


@dataclass(frozen=True)
class HirzebruchCheck:
    h: int
    four_c1: CohomExpr
    holds: bool


def hirzebruch_class_formula(hs=range(3, 9)) -> dict:
    """4 c_1(E_1) = (sigma + eta)/2 for the double cover with two branch points.

    Reading 4 c_1(E_1) as sigma(M/G) and eta as M_0.M_0 this is
    sigma(M) = 2 sigma(M/G) - M_0.M_0.
    """
    target = CohomExpr(Fraction(1, 2), {1: Fraction(1, 2)})
    checks = []
    for h in hs:
        c = solve(new_action(2, h, {1: 2})).classes[0]
        four = CohomExpr(c.sigma_coeff * 4, {j: v * 4 for j, v in c.eta_coeffs.items()})
        checks.append(HirzebruchCheck(h, four, four == target))
    free = []
    for h in hs:
        c = solve(new_action(2, h, {})).classes[0]
        free.append(c.sigma_coeff * 4 == Fraction(1, 2) and not c.eta_coeffs)
    holds = all(c.holds for c in checks) and all(free)
    return {
        "holds": holds,
        "per_h": {str(c.h): str(c.four_c1) for c in checks},
        "class_formula": "4 c_1(E_1) = 1/2 σ + 1/2 η_1",
        "rearranged": "σ(M) = 2 σ(M/G) - σ(M_0·M_0)",
        "free_case": "σ(M) = 2 σ(M/G)" if all(free) else "FAILED",
    }


# -- Toledo invariants for m = 7 -------------------------------------------

TOLEDO_TARGETS = (Fraction(3, 112), Fraction(5, 112), Fraction(6, 112))


@dataclass(frozen=True)
class ToledoReport:
    h: int
    j0: int
    entries: tuple[tuple[int, str, Fraction], ...]
    fitted_lambda: Fraction
    consistency: bool
    invariant_coeff: Fraction
    sigma_row: Fraction
    hirzebruch_lambda: Fraction
    tried: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "j0": self.j0,
            "eta_over_sigma": rat_str(self.fitted_lambda),
            "consistency": self.consistency,
            "factors": [
                {"s": s, "factor": lab, "sigma_coeff": rat_str(c)} for s, lab, c in self.entries
            ],
            "invariant_sigma_coeff": rat_str(self.invariant_coeff),
            "sigma_row": rat_str(self.sigma_row),
            "hirzebruch_eta_over_sigma": rat_str(self.hirzebruch_lambda),
            "tried_j0": list(self.tried),
        }


def _toledo_attempt(h: int, j0: int):
    a = ak7_example(h, j0).base_action
    solved = solve(a)
    sig = signature(a)
    (eta,) = solved.eta_index
    pair_to_s = {frozenset((x, y)): s for s, x, y in sig.entries}
    rows = []
    for i in range(3):
        label = f"SU({h + i},{h + 5 - i})"
        s = pair_to_s.get(frozenset((h + i, h + 5 - i)))
        if s is None:
            return None, solved
        c = solved.classes[s]
        rows.append((s, label, c.sigma_coeff, c.eta_coeffs[eta]))
    _, _, a1, b1 = rows[0]
    if b1 == 0:
        return None, solved
    lam = (TOLEDO_TARGETS[0] - a1) / b1
    values = [x + y * lam for _, _, x, y in rows]
    ok = values == list(TOLEDO_TARGETS)
    c0 = solved.classes[0]
    inv = c0.sigma_coeff + c0.eta_coeffs[eta] * lam
    row = inv + 2 * sum(values)
    return (lam, ok, [(s, lab, v) for (s, lab, _, _), v in zip(rows, values)], inv, row), solved


def toledo_ak7(h: int = 2, j0: int | None = None) -> ToledoReport:
    """Fit eta = lambda sigma on the first unitary factor, verify the other two.

    Tries ``j0`` first (default 1) and then the remaining classes mod 7.
    """
    first = 1 if j0 is None else j0
    order = [first] + [j for j in range(1, 7) if j != first]
    tried = []
    tables = {}
    for j in order:
        tried.append(j)
        result, solved = _toledo_attempt(h, j)
        tables[j] = solved.to_json()
        if result and result[1]:
            lam, ok, entries, inv, row = result
            # Hirzebruch: for Z/p covers sigma(M) = -(p^2 - 1)/3 * eta
            return ToledoReport(h, j, tuple(entries), lam, ok, inv, row, Fraction(-3, 7**2 - 1), tuple(tried))
    raise ConventionMismatch("no rotation class reproduces 3/112, 5/112, 6/112", tables)


# -- cobordism comparison ---------------------------------------------------


@dataclass(frozen=True)
class BundleNumerics:
    action: ActionData
    base_genus: int
    sigma: Fraction
    eta_values: Mapping[int, Fraction] = field(default_factory=dict)
    note: str = ""

    @classmethod
    def from_json(cls, obj: Mapping) -> BundleNumerics:
        try:
            return cls(
                action_from_json(obj["action"]),
                int(obj["base_genus"]),
                parse_rat(obj["sigma"]),
                {int(k): parse_rat(v) for k, v in dict(obj.get("eta", {})).items()},
                str(obj.get("note", "")),
            )
        except KeyError as exc:
            raise InvalidInput(f"bundle numerics missing field {exc}") from exc

    def to_json(self) -> dict:
        out = {
            "action": self.action.to_json(),
            "base_genus": self.base_genus,
            "sigma": rat_str(self.sigma),
            "eta": {str(j): rat_str(v) for j, v in sorted(self.eta_values.items())},
        }
        if self.note:
            out["note"] = self.note
        return out


def load_numerics(name: str) -> BundleNumerics:
    try:
        text = resources.files("gindex").joinpath("data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise InvalidInput(f"no bundled numerics named {name!r}") from exc
    return BundleNumerics.from_json(json.loads(text))


def ak2_numerics() -> tuple[BundleNumerics, BundleNumerics]:
    return load_numerics("ak2_fibering1"), load_numerics("ak2_fibering2")


def chern_numbers(f: BundleNumerics) -> list[Fraction]:
    solved = solve(f.action)
    missing = [j for j in solved.eta_index if j not in f.eta_values]
    if missing:
        raise IncompleteInput(f"no value supplied for eta_{missing[0]}")
    out = []
    for c in solved.classes:
        v = c.evaluate(f.sigma, f.eta_values)
        if not isinstance(v, Fraction):
            raise InternalError("irrational Chern number")
        out.append(v)
    return out


def cobordism_compare(f1: BundleNumerics, f2: BundleNumerics) -> dict:
    if f1.action.m != f2.action.m:
        raise InconsistentInputs("fiberings carry actions of different orders")
    v1, v2 = chern_numbers(f1), chern_numbers(f2)
    rows = [
        {"s": s, "q": f"zeta^{s}", "first": rat_str(x), "second": rat_str(y), "equal": x == y}
        for s, (x, y) in enumerate(zip(v1, v2))
    ]
    return {"m": f1.action.m, "rows": rows, "all_equal": all(r["equal"] for r in rows)}


# -- ranks ------------------------------------------------------------------


def eigenrank_report(a: ActionData) -> list[dict]:
    """Complex rank of E_{zeta^s} for every s mod m."""
    m = a.m
    n = complex_multiplicities(character_h1(a))
    ranks = {0: a.h}
    if m % 2 == 0:
        ranks[m // 2] = n.n[m // 2] // 2
    for s, x, y in signature(a).entries:
        ranks[s] = x
        ranks[m - s] = y
    return [{"s": s, "q": f"zeta^{s}", "rank": ranks[s]} for s in range(m)]
