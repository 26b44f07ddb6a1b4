"""Bookkeeping for the arithmetic group Sp^G: real factors, the degree-2
symbols x_q, the Borel stable range and the degree-2 image of the classifying map."""

from __future__ import annotations

from dataclasses import dataclass

from .action import ActionData
from .errors import InconsistentInputs
from .indexcore import EigenSignature, SolvedClasses, coeff_json
from .reptheory import IsotypicDecomp


@dataclass(frozen=True)
class FactorList:
    m: int
    sp_factors: tuple[tuple[str, int], ...]
    su_factors: tuple[tuple[int, int, int], ...]
    field_labels: tuple[str, ...]

    @property
    def h(self) -> int:
        return self.sp_factors[0][1]

    @property
    def h_prime(self) -> int | None:
        return self.sp_factors[1][1] if len(self.sp_factors) > 1 else None

    def labels(self) -> list[str]:
        out = [f"Sp_{2 * h}" for _, h in self.sp_factors]
        out += [f"SU({a},{b})" for _, a, b in self.su_factors]
        return out

    def __str__(self) -> str:
        return " ".join(self.labels())

    def to_json(self) -> dict:
        return {
            "sp": [{"label": lab, "h": h} for lab, h in self.sp_factors],
            "su": [{"s": s, "a": a, "b": b} for s, a, b in self.su_factors],
            "fields": list(self.field_labels),
            "labels": self.labels(),
            "product": str(self),
        }


def factor_list(a: ActionData, n: IsotypicDecomp, sig: EigenSignature) -> FactorList:
    m = a.m
    if n.m != m or sig.m != m:
        raise InconsistentInputs("action, decomposition and signature disagree on m")
    if n.n[0] % 2:
        raise InconsistentInputs(f"invariant part has odd dimension {n.n[0]}")
    h = n.n[0] // 2
    if h != a.h:
        raise InconsistentInputs(f"invariant part gives h = {h}, action says {a.h}")
    sp = [("Sp(2h)", h)]
    if m % 2 == 0:
        if n.n[m // 2] % 2:
            raise InconsistentInputs(f"(-1)-part has odd dimension {n.n[m // 2]}")
        sp.append(("Sp(2h')", n.n[m // 2] // 2))
    su = []
    for s, a_s, b_s in sig.entries:
        if a_s + b_s != n.n[s]:
            raise InconsistentInputs(f"a + b != n at s={s}")
        su.append((s, a_s, b_s))
    if len(su) != (m - 1) // 2:
        raise InconsistentInputs(f"expected {(m - 1) // 2} unitary factors, got {len(su)}")
    total = 2 * sum(h for _, h in sp) + 2 * sum(x + y for _, x, y in su)
    if total != 2 * a.g:
        raise InconsistentInputs(f"factor dimensions sum to {total}, not 2g = {2 * a.g}")
    fields = tuple(f"Q(zeta_{k} + zeta_{k}^-1)" for k in range(3, m + 1) if m % k == 0)
    return FactorList(m, tuple(sp), tuple(su), fields)


def h2_basis(f: FactorList, valid: bool = True) -> list[dict]:
    """Symbols x_{zeta^s}, s = 0..m/2, with the factor each one comes from."""
    m = f.m
    out = []
    for s in range(m // 2 + 1):
        if s == 0:
            source = "Sp_{2h}"
        elif 2 * s == m:
            source = "Sp_{2h'}"
        else:
            _, a, b = next(x for x in f.su_factors if x[0] == s)
            source = f"SU({a},{b})"
        entry = {"symbol": f"x_{{zeta^{s}}}", "s": s, "source": source}
        if not valid:
            entry["caveat"] = "outside the stable range"
        out.append(entry)
    return out


@dataclass(frozen=True)
class StableRangeReport:
    f_rank_lower: int
    borel_bound: int
    degree2_valid: bool
    hypotheses: dict[str, bool]

    def to_json(self) -> dict:
        out = {
            "f_rank_lower": self.f_rank_lower,
            "borel_bound": self.borel_bound,
            "degree2_valid": self.degree2_valid,
            "hypotheses": dict(sorted(self.hypotheses.items())),
        }
        if not self.degree2_valid:
            out["caveat"] = "degree-2 identification not guaranteed for these parameters"
        return out


def stable_range(a: ActionData, f: FactorList) -> StableRangeReport:
    f_rank = a.h - 1
    borel = (f_rank - 1) // 2 if f_rank >= 1 else 0
    hyp = {"h>=3": f.h >= 3}
    if f.h_prime is not None:
        hyp["h'>=3"] = f.h_prime >= 3
    hyp["a,b>=1"] = all(x >= 1 and y >= 1 for _, x, y in f.su_factors)
    return StableRangeReport(f_rank, borel, borel >= 2 and all(hyp.values()), hyp)


@dataclass(frozen=True)
class ImageBasis:
    basis: tuple[str, ...]
    matrix: tuple[tuple, ...]
    identification: tuple[str, ...]

    @property
    def columns(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "matrix": [[coeff_json(x) for x in row] for row in self.matrix],
            "identification": list(self.identification),
        }


def image_basis(solved: SolvedClasses) -> ImageBasis:
    basis = ("sigma",) + tuple(f"eta_{j}" for j in solved.eta_index)
    ident = tuple(f"x_{{zeta^{s}}} -> c_1(E_{{zeta^{s}}})" for s in range(len(solved.classes)))
    return ImageBasis(basis, tuple(tuple(r) for r in solved.matrix()), ident)
