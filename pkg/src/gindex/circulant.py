"""The csc^2 basis over (Z/m)^x/{+-1} and rank certificates for K.

Rows r of K coprime to m with r < m/2 restrict to the matrix
csc^2(pi k l/m), k, l in (Z/m)^x/{+-1}; once that matrix is known to be
invertible, every subset of its columns is independent.  The eigenvalue
theory of (block-)circulant matrices is exercised numerically only.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .cyclo import CycloNum, csc2_half, embed_numeric
from .errors import InternalError, InvalidInput, UnsupportedParameter
from .indexcore import IndexSystem


def class_reps(m: int) -> list[int]:
    """Representatives 1 <= l < m/2 of (Z/m)^x/{+-1}, ascending."""
    return [l for l in range(1, (m + 1) // 2) if math.gcd(l, m) == 1]


def _rep(x: int, m: int) -> int:
    x %= m
    return min(x, m - x)


@dataclass(frozen=True)
class UnitGroupTable:
    """(Z/m)^x/{+-1} listed in iterated block order.

    ``elements[i]`` is the class representative at position i; with
    generators g_1..g_k of orders factors[0..k-1] the position of
    g_1^{i_1} ... g_k^{i_k} is i_1 + f_1 (i_2 + f_2 (...)), so g_1 cycles
    fastest and the last factor indexes the outermost blocks.
    """

    m: int
    order: int
    factors: tuple[int, ...]
    generators: tuple[int, ...]
    elements: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    def index(self, x: int) -> int:
        return self.elements.index(_rep(x, self.m))

    @property
    def inverse_permutation(self) -> tuple[int, ...]:
        """Row i of the circulant form is row inverse_permutation[i] of the table."""
        return tuple(self.index(pow(x, -1, self.m)) for x in self.elements)


def _order(x: int, m: int) -> int:
    k, y = 1, _rep(x, m)
    while y != 1:
        y = _rep(y * x, m)
        k += 1
    return k


def _invariant_factors(elements: list[int], m: int) -> list[int]:
    n = len(elements)
    orders = [_order(x, m) for x in elements]
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    exps_by_prime: dict[int, list[int]] = {}
    for p in primes:
        # log_p |G[p^k]| = sum_i min(k, e_i)
        logs = [0]
        k = 1
        while True:
            size = sum(1 for o in orders if (p**k) % o == 0)
            logs.append(round(math.log(size, p)))
            if logs[-1] == logs[-2]:
                break
            k += 1
        at_least = [logs[i] - logs[i - 1] for i in range(1, len(logs) - 1)]
        exps = [sum(1 for a in at_least if a > i) for i in range(at_least[0])] if at_least else []
        exps_by_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in exps_by_prime.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for p, exps in exps_by_prime.items():
            if i < len(exps):
                f *= p ** exps[i]
        factors.append(f)
    return factors


def _span(gens: list[int], orders: list[int], m: int) -> set[int]:
    out = set()
    for exps in itertools.product(*(range(o) for o in orders)):
        y = 1
        for g, e in zip(gens, exps):
            y = _rep(y * pow(g, e, m), m)
        out.add(y)
    return out


def _find_generators(elements: list[int], factors: list[int], m: int) -> list[int]:
    def search(chosen: list[int]) -> list[int] | None:
        k = len(chosen)
        if k == len(factors):
            return chosen
        for x in elements:
            if _order(x, m) != factors[k]:
                continue
            trial = chosen + [x]
            if len(_span(trial, factors[: k + 1], m)) == math.prod(factors[: k + 1]):
                found = search(trial)
                if found:
                    return found
        return None

    gens = search([])
    if gens is None:
        raise InternalError(f"no generators found for (Z/{m})^x/{{+-1}} with factors {factors}")
    return gens


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroupTable:
    if m < 3:
        raise UnsupportedParameter(f"(Z/{m})^x/{{+-1}} is the trivial group; need m >= 3")
    reps = class_reps(m)
    factors = _invariant_factors(reps, m)
    gens = _find_generators(reps, factors, m)
    elements = []
    # itertools.product varies its last argument fastest, so feed factors reversed
    for exps in itertools.product(*(range(f) for f in reversed(factors))):
        y = 1
        for g, e in zip(reversed(gens), exps):
            y = _rep(y * pow(g, e, m), m)
        elements.append(y)
    if not factors:
        elements = [1]
    if sorted(elements) != reps:
        raise InternalError(f"block order for m={m} does not enumerate the group")
    table = tuple(tuple(_rep(x * y, m) for y in elements) for x in elements)
    return UnitGroupTable(m, len(reps), tuple(factors), tuple(gens), tuple(elements), table)


@dataclass(frozen=True)
class CscMatrix:
    m: int
    reps: tuple[int, ...]
    entries: tuple[tuple[CycloNum, ...], ...]

    def numeric(self) -> np.ndarray:
        return np.array([[embed_numeric(x).real for x in row] for row in self.entries])


def csc_matrix(m: int, reps: tuple[int, ...] | None = None) -> CscMatrix:
    if m < 3:
        raise UnsupportedParameter(f"csc^2 basis matrix needs m >= 3, got {m}")
    reps = tuple(class_reps(m)) if reps is None else tuple(reps)
    entries = tuple(tuple(csc2_half(k * l % m, m) for l in reps) for k in reps)
    return CscMatrix(m, reps, entries)


@dataclass(frozen=True)
class Certificate:
    m: int
    det_nonzero: bool
    determinant: CycloNum
    numeric_det: float
    permutation: tuple[int, ...]
    method: str = "exact"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "det_nonzero": self.det_nonzero,
            "method": self.method,
            "permutation": list(self.permutation),
        }


@lru_cache(maxsize=None)
def certify_basis(m: int) -> Certificate:
    """Exact determinant of the csc^2 matrix, rows and columns in group order."""
    g = unit_group(m)
    mat = csc_matrix(m, g.elements)
    det = linalg.det(mat.entries)
    num = float(np.linalg.det(mat.numeric()))
    return Certificate(m, not det.is_zero(), det, num, g.elements)


def group_matrix(m: int) -> list[list[CycloNum]]:
    """csc^2 matrix with rows reindexed by inverses: entry (x, y) is f(x^{-1} y)."""
    g = unit_group(m)
    mat = csc_matrix(m, g.elements).entries
    return [list(mat[p]) for p in g.inverse_permutation]


def is_circulant(rows) -> bool:
    n = len(rows)
    return all(rows[i][j] == rows[0][(j - i) % n] for i in range(n) for j in range(n))


# -- numeric eigenvalue checks --------------------------------------------


def circulant(coeffs) -> np.ndarray:
    """Row i is coeffs shifted right by i: C[i][j] = c_{(j - i) mod n}."""
    c = np.asarray(coeffs, dtype=complex)
    n = len(c)
    return np.array([[c[(j - i) % n] for j in range(n)] for i in range(n)])


def circulant_eigenvalues(coeffs) -> list[complex]:
    n = len(coeffs)
    return [
        sum(c * cmath.exp(2j * math.pi * j * k / n) for k, c in enumerate(coeffs)) for j in range(n)
    ]


def _same_multiset(xs, ys, tol: float) -> bool:
    ys = list(ys)
    for x in xs:
        best = min(range(len(ys)), key=lambda i: abs(ys[i] - x), default=None)
        if best is None or abs(ys[best] - x) > tol:
            return False
        ys.pop(best)
    return not ys


def _check_tolerance(tolerance: float) -> None:
    if not tolerance > 0:
        raise InvalidInput(f"tolerance must be positive, got {tolerance}")


def circulant_eigen_check(coeffs, tolerance: float = 1e-8) -> bool:
    _check_tolerance(tolerance)
    if len(coeffs) == 0:
        raise InvalidInput("empty coefficient list")
    c = circulant(coeffs)
    n = len(coeffs)
    formula = circulant_eigenvalues(coeffs)
    scale = max(1.0, float(np.abs(c).max()) * n)
    tol = tolerance * scale
    for j, lam in enumerate(formula):
        v = np.array([cmath.exp(2j * math.pi * j * k / n) for k in range(n)])
        if np.abs(c @ v - lam * v).max() > tol:
            return False
    return _same_multiset(np.linalg.eigvals(c), formula, tol)


def block_circulant(blocks) -> np.ndarray:
    """B[I][J] = blocks[(J - I) mod d], each block an n x n array."""
    d = len(blocks)
    return np.block([[np.asarray(blocks[(J - I) % d]) for J in range(d)] for I in range(d)])


def block_circulant_eigen_check(block_rows, tolerance: float = 1e-8) -> bool:
    """block_rows[i] is the first row of the circulant block A_i.

    With x_j the Fourier vector of size n, the vector (x_j, w^k x_j, w^{2k} x_j, ...)
    is an eigenvector of B with eigenvalue sum_i lambda_{i,j} w^{ik}.
    """
    _check_tolerance(tolerance)
    d, n = len(block_rows), len(block_rows[0])
    blocks = [circulant(r) for r in block_rows]
    b = block_circulant(blocks)
    lam = [circulant_eigenvalues(r) for r in block_rows]
    tol = tolerance * max(1.0, float(np.abs(b).max()) * d * n)
    formula = []
    for k in range(d):
        wk = [cmath.exp(2j * math.pi * k * i / d) for i in range(d)]
        for j in range(n):
            x = np.array([cmath.exp(2j * math.pi * j * t / n) for t in range(n)])
            v = np.concatenate([wk[i] * x for i in range(d)])
            eta = sum(lam[i][j] * wk[i] for i in range(d))
            if np.abs(b @ v - eta * v).max() > tol:
                return False
            formula.append(eta)
    return _same_multiset(np.linalg.eigvals(b), formula, tol)


def group_character_eigenvalues(m: int) -> list[complex]:
    """Eigenvalues of the csc^2 group matrix as character sums sum_z f(z) chi(z)."""
    g = unit_group(m)
    f = [embed_numeric(csc2_half(x, m)).real for x in g.elements]
    out = []
    radices = g.factors or (1,)
    for chi in itertools.product(*(range(d) for d in radices)):
        total = 0j
        for pos, val in enumerate(f):
            phase, rest = 0.0, pos
            for t, d in enumerate(radices):
                phase += chi[t] * (rest % d) / d
                rest //= d
            total += val * cmath.exp(2j * math.pi * phase)
        out.append(total)
    return out


def group_eigen_check(m: int, tolerance: float = 1e-8) -> bool:
    """Character sums against a dense eigensolve of the csc^2 group matrix."""
    _check_tolerance(tolerance)
    mat = np.array([[embed_numeric(x).real for x in row] for row in group_matrix(m)])
    formula = group_character_eigenvalues(m)
    tol = tolerance * max(1.0, float(np.abs(mat).max()) * len(mat))
    return _same_multiset(np.linalg.eigvals(mat), formula, tol)


# -- rank of K --------------------------------------------------------------


class RankContradiction(InternalError):
    pass


def rank_K(sys: IndexSystem, method: str = "auto") -> int:
    """Exact rank of K over Q(zeta_m).

    ``auto`` reads it off the basis certificate when m >= 3: the eta columns
    restricted to rows coprime to m are columns of the invertible csc^2
    matrix, so they are independent, and row 0 adds the sigma column.
    ``direct`` always runs elimination on K itself.
    """
    n = len(sys.eta_index)
    if method == "auto" and sys.m >= 3 and certify_basis(sys.m).det_nonzero:
        r = 1 + n
    elif method in ("auto", "direct"):
        r = linalg.rank(sys.K)
    else:
        raise InvalidInput(f"unknown rank method {method!r}")
    if r < n + 1:
        raise RankContradiction(f"rank(K) = {r} < n + 1 = {n + 1} for m={sys.m}")
    return r
