"""Degree <= 1 expansion of the G-index formula and the resulting linear systems.

For each nontrivial power r of the generator, the fixed-point side of the
index formula is a sum of coth((eps_j + i r theta_j)/2).  Expanding to first
order in the Euler classes gives

    constant term:  sum_j |Z_j| * (-i cot(r theta_j / 2))
    linear term:    sum_j csc^2(r theta_j / 2) / 2 * eps_j

The constant terms determine the signatures (a_s, b_s) of the Hodge
eigenbundles through an inverse discrete Fourier transform; the linear
terms, together with the families index (c_1(E) = sigma/4), give a square
system J c = K (sigma, eta_1, ..., eta_n)^T for c_s = c_1(E_{zeta^s}),
s = 0..floor(m/2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from . import linalg
from .action import ActionData
from .cyclo import CycloNum, csc2_half, icot_half, make, rat_str
from .errors import InconsistentFixedData, InternalError, InvalidInput, Pole, UnsupportedParameter
from .reptheory import IsotypicDecomp

Coeff = Union[Fraction, CycloNum]


# -- jets -----------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Jet1:
    """c0 + sum_j c1[j] * eps_j, truncated after the linear terms."""

    m: int
    c0: CycloNum
    c1: Mapping[int, CycloNum] = field(default_factory=dict)

    def __add__(self, other: Jet1) -> Jet1:
        c1 = dict(self.c1)
        for j, v in other.c1.items():
            c1[j] = c1[j] + v if j in c1 else v
        return Jet1(self.m, self.c0 + other.c0, _prune(c1))

    def scale(self, k) -> Jet1:
        return Jet1(self.m, self.c0 * k, _prune({j: v * k for j, v in self.c1.items()}))

    def __mul__(self, other: Jet1) -> Jet1:
        # eps_i * eps_j has degree 4 and is dropped
        c1 = {j: v * other.c0 for j, v in self.c1.items()}
        for j, v in other.c1.items():
            t = v * self.c0
            c1[j] = c1[j] + t if j in c1 else t
        return Jet1(self.m, self.c0 * other.c0, _prune(c1))

    @classmethod
    def zero(cls, m: int) -> Jet1:
        return cls(m, CycloNum.zero(m), {})


def _prune(c1: dict[int, CycloNum]) -> dict[int, CycloNum]:
    return {j: v for j, v in sorted(c1.items()) if v}


def coth_jet(j: int, r: int, m: int) -> Jet1:
    """coth((eps_j + i r theta_j)/2) to first order, theta_j = 2 pi j/m."""
    k = (j * r) % m
    if k == 0:
        raise Pole(f"j*r = {j * r} is 0 mod {m}")
    return Jet1(m, icot_half(k, m), {j: csc2_half(k, m) * Fraction(1, 2)})


def rhs_jet(a: ActionData, r: int) -> Jet1:
    """Fixed-point side of the index formula for the power r, to first order.

    Every point of Z_j contributes the same constant, so the constant term is
    multiplied by |Z_j|; the linear term is a single eps_j = sum of the e_z.
    """
    m = a.m
    if not 1 <= r <= m - 1:
        raise InvalidInput(f"power r must lie in 1..{m - 1}, got {r}")
    total = Jet1.zero(m)
    for j, count in a.fixed:
        jet = coth_jet(j, r, m)
        total = total + Jet1(m, jet.c0 * count, jet.c1)
    return total


def eta_index(a: ActionData) -> tuple[int, ...]:
    """Merged classes eta_j = eps_j + eps_{m-j}, 1 <= j <= m/2, that are present."""
    return tuple(
        j for j in range(1, a.m // 2 + 1) if a.count(j) or a.count(a.m - j)
    )


def merge_eta(m: int, c1: Mapping[int, CycloNum]) -> dict[int, CycloNum]:
    """Rewrite a linear form in the eps_j as one in the eta_j.

    csc^2 is even, so eps_j and eps_{m-j} must carry equal coefficients.
    """
    out: dict[int, CycloNum] = {}
    for j, v in c1.items():
        key = min(j, m - j)
        if key in out and out[key] != v:
            raise InternalError(f"eps_{j} and eps_{m - j} carry different coefficients")
        out[key] = v
    return dict(sorted(out.items()))


# -- degree 0 -------------------------------------------------------------


@dataclass(frozen=True)
class EigenSignature:
    """(s, a_s, b_s) for 1 <= s < m/2, with D_s = a_s - b_s for every s mod m."""

    m: int
    entries: tuple[tuple[int, int, int], ...]
    D: tuple[int, ...]

    def a(self, s: int) -> int:
        return dict((e[0], e[1]) for e in self.entries)[s]

    def b(self, s: int) -> int:
        return dict((e[0], e[2]) for e in self.entries)[s]

    def to_json(self) -> list:
        return [{"s": s, "a": a, "b": b} for s, a, b in self.entries]


def rhs0(a: ActionData, r: int) -> CycloNum:
    return rhs_jet(a, r).c0


def solve_deg0(a: ActionData, n: IsotypicDecomp) -> EigenSignature:
    m = a.m
    if n.m != m or len(n.n) != m:
        raise InvalidInput("isotypic decomposition does not match the action")
    rhs = [rhs0(a, r) for r in range(1, m)]
    D: list[int] = []
    for s in range(m):
        total = CycloNum.zero(m)
        for r, val in enumerate(rhs, start=1):
            if val:
                total = total + val.monomial_shift(-s * r)
        d = total / m
        if not d.is_rational() or d.to_rational().denominator != 1:
            raise InconsistentFixedData(f"a_s - b_s for s={s} is not an integer: {d}")
        D.append(int(d.to_rational()))
    if D[0] != 0 or (m % 2 == 0 and D[m // 2] != 0):
        raise InconsistentFixedData("real eigenvalues acquired a nonzero signature defect")
    for s in range(1, m):
        if D[m - s] != -D[s]:
            raise InconsistentFixedData(f"D_{m - s} != -D_{s}")
    entries = []
    for s in range(1, (m + 1) // 2):
        ns, ds = n.n[s], D[s]
        if (ns + ds) % 2:
            raise InconsistentFixedData(f"n_{s} + D_{s} = {ns + ds} is odd")
        a_s, b_s = (ns + ds) // 2, (ns - ds) // 2
        if a_s < 0 or b_s < 0:
            raise InconsistentFixedData(f"negative signature ({a_s}, {b_s}) at s={s}")
        entries.append((s, a_s, b_s))
    return EigenSignature(m, tuple(entries), tuple(D))


def deg0_residuals(a: ActionData, sig: EigenSignature) -> list[CycloNum]:
    """sum_s D_s zeta^{sr} - RHS_0(r) for r = 1..m-1 (all zero when solved)."""
    m = a.m
    out = []
    for r in range(1, m):
        lhs = CycloNum.zero(m)
        for s, d in enumerate(sig.D):
            if d:
                lhs = lhs + make(m, s * r) * d
        out.append(lhs - rhs0(a, r))
    return out


def mcmullen_count(a: ActionData, s: int) -> int:
    """h plus the number of m-th roots of unity strictly above the chord 1 -> zeta^s.

    Geometric cross-check for Morita-type data; the floating cross products
    are bounded well away from zero because no third root lies on the chord.
    """
    m = a.m
    if a.fixed != ((1, m),):
        raise UnsupportedParameter("the root-counting rule applies to Morita data {1: m} only")
    if not 1 <= s < m / 2:
        raise InvalidInput(f"s must satisfy 1 <= s < m/2, got {s}")
    q = cmath.exp(2j * math.pi * s / m)
    dx, dy = q.real - 1, q.imag
    count = 0
    for k in range(m):
        if k in (0, s):
            continue
        z = cmath.exp(2j * math.pi * k / m)
        cross = dx * z.imag - dy * (z.real - 1)
        if cross < 0:
            count += 1
    return a.h + count


# -- degree 1 -------------------------------------------------------------


def column_kind(m: int, s: int) -> str:
    if s == 0:
        return "trivial"
    if 2 * s == m:
        return "sign"
    return "pair"


def j_entry(m: int, r: int, s: int) -> CycloNum:
    """Character of the real representation V_s at tau^r."""
    kind = column_kind(m, s)
    if kind == "trivial":
        return CycloNum.one(m)
    if kind == "sign":
        return CycloNum.from_rational(m, (-1) ** r)
    return make(m, s * r) + make(m, -s * r)


def row0_weights(m: int) -> list[int]:
    return [1 if column_kind(m, s) != "pair" else 2 for s in range(m // 2 + 1)]


@dataclass(frozen=True)
class IndexSystem:
    m: int
    J: tuple[tuple[CycloNum, ...], ...]
    K: tuple[tuple[CycloNum, ...], ...]
    eta_index: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.m // 2

    def to_json(self) -> dict:
        return {
            "J": [[x.to_json() for x in row] for row in self.J],
            "K": [[x.to_json() for x in row] for row in self.K],
            "eta_index": list(self.eta_index),
        }


@lru_cache(maxsize=None)
def j_matrix(m: int) -> tuple[tuple[CycloNum, ...], ...]:
    d = m // 2
    return tuple(tuple(j_entry(m, r, s) for s in range(d + 1)) for r in range(d + 1))


@lru_cache(maxsize=None)
def j_inverse(m: int) -> tuple[tuple[CycloNum, ...], ...]:
    n = m // 2 + 1
    eye = [[CycloNum.one(m) if i == k else CycloNum.zero(m) for k in range(n)] for i in range(n)]
    try:
        return _row_key(linalg.solve(j_matrix(m), eye))
    except linalg.SingularMatrix as exc:
        raise InternalError(f"J is singular for m={m}: {exc}") from exc


@lru_cache(maxsize=None)
def _quarter_csc2(m: int, k: int) -> CycloNum:
    return csc2_half(k, m) * Fraction(1, 4)


def _sigma_row(m: int, n: int) -> tuple[CycloNum, ...]:
    return (CycloNum.from_rational(m, Fraction(1, 4)),) + (CycloNum.zero(m),) * n


def build_system(a: ActionData) -> IndexSystem:
    """Rows r = 0..floor(m/2) of the degree-1 index equations.

    Row 0 comes from the families index: sum over all q of c_1(E_q) is
    sigma/4, and c_1(E_q) = c_1(E_qbar), so pairs count twice.  Row r >= 1
    is the linear part of the equivariant formula, halved because the
    left side collects c_1(E_q) + c_1(E_qbar).
    """
    m = a.m
    eta = eta_index(a)
    zero = CycloNum.zero(m)
    K = [_sigma_row(m, len(eta))]
    for r in range(1, m // 2 + 1):
        c1 = merge_eta(m, rhs_jet(a, r).c1)
        K.append((zero,) + tuple(c1.get(j, zero) * Fraction(1, 2) for j in eta))
    return IndexSystem(m, j_matrix(m), tuple(K), eta)


def index_system(m: int, eta: tuple[int, ...]) -> IndexSystem:
    """The same system assembled straight from csc^2 values; K depends only on the eta set."""
    rows = [_sigma_row(m, len(eta))]
    for r in range(1, m // 2 + 1):
        rows.append((CycloNum.zero(m),) + tuple(_quarter_csc2(m, r * j % m) for j in eta))
    return IndexSystem(m, j_matrix(m), tuple(rows), tuple(eta))


def _demote(x: CycloNum) -> Coeff:
    return x.to_rational() if x.is_rational() else x


@dataclass(frozen=True)
class CohomExpr:
    """sigma_coeff * sigma + sum_j eta_coeffs[j] * eta_j."""

    sigma_coeff: Coeff
    eta_coeffs: Mapping[int, Coeff]

    @property
    def rational(self) -> bool:
        return isinstance(self.sigma_coeff, Fraction) and all(
            isinstance(v, Fraction) for v in self.eta_coeffs.values()
        )

    def evaluate(self, sigma: Fraction, eta: Mapping[int, Fraction]) -> Coeff:
        total = self.sigma_coeff * sigma
        for j, c in self.eta_coeffs.items():
            total = total + c * eta[j]
        return total

    def __str__(self) -> str:
        parts = [f"{_fmt(self.sigma_coeff)} σ"]
        parts += [f"{_fmt(c)} η_{j}" for j, c in self.eta_coeffs.items()]
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "sigma": coeff_json(self.sigma_coeff),
            "eta": {str(j): coeff_json(c) for j, c in self.eta_coeffs.items()},
        }


def _fmt(c: Coeff) -> str:
    return rat_str(c) if isinstance(c, Fraction) else f"({c})"


def coeff_json(c: Coeff):
    return rat_str(c) if isinstance(c, Fraction) else c.to_json()


@dataclass(frozen=True)
class SolvedClasses:
    """c_1(E_{zeta^s}) for s = 0..floor(m/2).

    The solved symbol c_1(E_q) is the class x_q of H^2(Sp^G) pulled back,
    and c_1(E_qbar) = x_q as well, so one entry per conjugate pair suffices.
    """

    m: int
    eta_index: tuple[int, ...]
    classes: tuple[CohomExpr, ...]

    @property
    def rational(self) -> bool:
        return all(c.rational for c in self.classes)

    def matrix(self) -> list[list[Coeff]]:
        """The exact change of basis J^{-1} K."""
        return [[c.sigma_coeff] + [c.eta_coeffs[j] for j in self.eta_index] for c in self.classes]

    def to_json(self) -> list:
        out = []
        for s, c in enumerate(self.classes):
            row = {"s": s, "q": f"zeta^{s}", "chern_label": f"x_{{zeta^{s}}}"}
            row.update(c.to_json())
            if not c.rational:
                row["irrational"] = True
            out.append(row)
        return out


def _row_key(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def solve_deg1(sys: IndexSystem) -> SolvedClasses:
    m, eta = sys.m, sys.eta_index
    if sys.J == j_matrix(m):
        X = linalg.matmul(j_inverse(m), sys.K)
    else:
        try:
            X = linalg.solve(sys.J, sys.K)
        except linalg.SingularMatrix as exc:
            raise InternalError(f"J is singular for m={m}: {exc}") from exc
    if linalg.matmul(sys.J, X) != [list(r) for r in sys.K]:
        raise InternalError("J X != K after the solve")
    # rows r > d are copies of rows m - r; check them instead of assuming
    for r in range(m // 2 + 1, m):
        for col in range(len(eta) + 1):
            lhs = CycloNum.zero(m)
            for s in range(m // 2 + 1):
                lhs = lhs + j_entry(m, r, s) * X[s][col]
            rhs = _quarter_csc2(m, r * eta[col - 1] % m) if col else CycloNum.zero(m)
            if lhs != rhs:
                raise InternalError(f"redundant row r={r} violated for column {col}")
    classes = tuple(
        CohomExpr(_demote(row[0]), {j: _demote(v) for j, v in zip(eta, row[1:])}) for row in X
    )
    return SolvedClasses(m, eta, classes)


def _lift(m: int, c: Coeff) -> CycloNum:
    return c if isinstance(c, CycloNum) else CycloNum.from_rational(m, c)


def deg1_residuals(a: ActionData, solved: SolvedClasses) -> list[dict]:
    """For r = 1..m-1, LHS minus RHS of the linear index equation per symbol."""
    m = a.m
    out = []
    for r in range(1, m):
        target = merge_eta(m, rhs_jet(a, r).c1)
        sigma = CycloNum.zero(m)
        etas = {j: CycloNum.zero(m) for j in solved.eta_index}
        for s, c in enumerate(solved.classes):
            w = j_entry(m, r, s)
            sigma = sigma + w * _lift(m, c.sigma_coeff)
            for j in solved.eta_index:
                etas[j] = etas[j] + w * _lift(m, c.eta_coeffs[j])
        res = {"sigma": sigma}
        for j in solved.eta_index:
            res[j] = etas[j] - target.get(j, CycloNum.zero(m)) * Fraction(1, 2)
        out.append(res)
    return out


def sigma_row(solved: SolvedClasses) -> CohomExpr:
    """Weighted sum over all eigenvalues, which must equal sigma/4."""
    m = solved.m
    sigma = Fraction(0)
    etas = {j: Fraction(0) for j in solved.eta_index}
    for w, c in zip(row0_weights(m), solved.classes):
        sigma = sigma + c.sigma_coeff * w
        for j in solved.eta_index:
            etas[j] = etas[j] + c.eta_coeffs[j] * w
    return CohomExpr(sigma, etas)


def j_determinant(m: int) -> CycloNum:
    return linalg.det(j_matrix(m))
