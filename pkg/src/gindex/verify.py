"""Invariant sweeps behind ``gindex verify`` and the acceptance tests."""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import circulant, indexcore
from .action import ActionData, ak2_standard, ak7_example, monodromy_ok, morita_example, new_action
from .apps import eigenrank_report, hirzebruch_class_formula, toledo_ak7
from .arithgroup import factor_list
from .cyclo import csc2_half, embed_numeric, icot_half
from .errors import GIndexError
from .reptheory import character_h1, complex_multiplicities

TOL = 1e-8


@dataclass
class Bounds:
    morita_m: tuple[int, int] = (3, 12)
    morita_h: tuple[int, int] = (0, 4)
    cw_h: int = 4
    hirz_h: tuple[int, int] = (3, 8)
    det_j_max_m: int = 60
    rank_max_m: int = 30
    rank_max_z: int = 8
    rank_direct_max_m: int = 12
    rank_direct_samples: int = 25
    basis_max_m: int = 40
    residual_samples: int = 500
    residual_max_m: int = 24
    numeric_max_m: int = 24
    jet_samples: int = 50
    seed: int = 20240613

    def capped(self, max_m: int | None = None, max_z: int | None = None) -> Bounds:
        b = Bounds(**self.__dict__)
        if max_m is not None:
            b.morita_m = (b.morita_m[0], min(b.morita_m[1], max_m))
            b.det_j_max_m = min(b.det_j_max_m, max_m)
            b.rank_max_m = min(b.rank_max_m, max_m)
            b.rank_direct_max_m = min(b.rank_direct_max_m, max_m)
            b.basis_max_m = min(b.basis_max_m, max_m)
            b.residual_max_m = min(b.residual_max_m, max_m)
            b.numeric_max_m = min(b.numeric_max_m, max_m)
        if max_z is not None:
            b.rank_max_z = max_z
        return b


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool = True
    count: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.criterion:>2} {self.name}: {self.count} checks, {self.seconds:.2f}s"
        if self.failures:
            out += f" (first failure: {self.failures[0]})"
        return out


def _pipeline(a: ActionData):
    n = complex_multiplicities(character_h1(a))
    sig = indexcore.solve_deg0(a, n)
    return n, sig


def check_morita(b: Bounds) -> CheckResult:
    res = CheckResult(1, "Morita factor lists")
    for m in range(b.morita_m[0], b.morita_m[1] + 1):
        for h in range(b.morita_h[0], b.morita_h[1] + 1):
            a = morita_example(m, h)
            n, sig = _pipeline(a)
            f = factor_list(a, n, sig)
            expected = [f"Sp_{2 * h}"]
            if m % 2 == 0:
                # the (-1)-eigenspace has dimension 2(h-1) + m
                expected.append(f"Sp_{2 * (h - 1) + m}")
            expected += [f"SU({h + i},{h + m - 2 - i})" for i in range((m - 1) // 2)]
            res.count += 1
            if f.labels() != expected:
                res.failures.append(f"m={m} h={h}: {f} != {' x '.join(expected)}")
            for s, a_s, _ in sig.entries:
                res.count += 1
                if indexcore.mcmullen_count(a, s) != a_s:
                    res.failures.append(f"m={m} h={h} s={s}: root count disagrees")
    return res


def check_chevalley_weil(b: Bounds) -> CheckResult:
    res = CheckResult(2, "Chevalley-Weil rational decomposition")
    for h in range(0, b.cw_h + 1):
        for m in range(3, 13):
            dims = complex_multiplicities(character_h1(morita_example(m, h))).rational_dims
            want = {k: (2 * h if k == 1 else 2 * h + m - 2) for k in range(1, m + 1) if m % k == 0}
            res.count += 1
            if dims != want:
                res.failures.append(f"morita m={m} h={h}: {dims}")
        if h >= 2:
            dims = complex_multiplicities(character_h1(ak7_example(h).base_action)).rational_dims
            res.count += 1
            if dims != {1: 2 * h, 7: 2 * h + 5}:
                res.failures.append(f"ak7 h={h}: {dims}")
    return res


def check_hirzebruch(b: Bounds) -> CheckResult:
    res = CheckResult(3, "m=2 class formula")
    hs = range(b.hirz_h[0], b.hirz_h[1] + 1)
    for h in hs:
        solved = indexcore.solve_deg1(indexcore.build_system(new_action(2, h, {1: 2})))
        e1, em1 = solved.classes
        res.count += 1
        if (e1.sigma_coeff, e1.eta_coeffs) != (Fraction(1, 8), {1: Fraction(1, 8)}) or (
            em1.sigma_coeff,
            em1.eta_coeffs,
        ) != (Fraction(1, 8), {1: Fraction(-1, 8)}):
            res.failures.append(f"h={h}: {e1}, {em1}")
    res.count += 1
    if not hirzebruch_class_formula(hs)["holds"]:
        res.failures.append("4 c_1(E_1) != (sigma + eta)/2")
    return res


def check_toledo(b: Bounds) -> CheckResult:
    res = CheckResult(4, "Toledo invariants for m=7")
    try:
        rep = toledo_ak7(2)
    except GIndexError as exc:
        res.failures.append(str(exc))
        return res
    coeffs = [c for _, _, c in rep.entries]
    res.count = 3
    if coeffs != [Fraction(3, 112), Fraction(5, 112), Fraction(6, 112)] or not rep.consistency:
        res.failures.append(f"got {coeffs}")
    if rep.sigma_row != Fraction(1, 4):
        res.failures.append(f"sigma row {rep.sigma_row}")
    return res


def realizable_eta_sets(m: int, max_z: int):
    """Yield (eta set, witness counts) for every eta set carried by some valid action with |Z| <= max_z.

    Each merged class k gets a signed count d: d > 0 points in class k, -d in
    class m-k, or one point in each when d = 0.  The monodromy sum is then
    sum inv(k) d; for even m it forces |Z| even, so parity needs no extra care.
    """
    merged = [j for j in range(1, m // 2 + 1) if math.gcd(j, m) == 1]

    def options(k: int):
        if 2 * k == m:
            return [(d, d, {k: d}) for d in range(1, max_z + 1)]
        out = [(0, 2, {k: 1, m - k: 1})] if max_z >= 2 else []
        for d in range(1, max_z + 1):
            out += [(d, d, {k: d}), (-d, d, {m - k: d})]
        return out

    opts = {k: options(k) for k in merged}

    def extend(state, k):
        inv = pow(k, -1, m)
        new = {}
        for res, (cost, counts) in state.items():
            for d, c, extra in opts[k]:
                total = cost + c
                if total > max_z:
                    continue
                key = (res + inv * d) % m
                if key not in new or new[key][0] > total:
                    new[key] = (total, {**counts, **extra})
        return new

    def dfs(start: int, S: tuple[int, ...], state):
        if 0 in state:
            yield S, state[0][1]
        for i in range(start, len(merged)):
            nxt = extend(state, merged[i])
            if nxt:
                yield from dfs(i + 1, S + (merged[i],), nxt)

    yield from dfs(0, (), {0: (0, {})})


def check_rank_certificates(b: Bounds) -> CheckResult:
    res = CheckResult(5, "rank certificates")
    for m in range(2, b.det_j_max_m + 1):
        res.count += 1
        if indexcore.j_determinant(m).is_zero():
            res.failures.append(f"det J = 0 for m={m}")
    for m in range(3, b.basis_max_m + 1):
        res.count += 1
        if not circulant.certify_basis(m).det_nonzero:
            res.failures.append(f"csc^2 basis singular for m={m}")
    rng = random.Random(b.seed)
    large = []
    for m in range(2, b.rank_max_m + 1):
        for S, counts in realizable_eta_sets(m, b.rank_max_z):
            a = new_action(m, 1, counts)
            if not monodromy_ok(a) or indexcore.eta_index(a) != S:
                res.failures.append(f"bad witness {counts} for m={m}")
                continue
            sys = indexcore.index_system(m, S)
            res.count += 1
            if circulant.rank_K(sys) != len(S) + 1:
                res.failures.append(f"rank K wrong for m={m}, eta={S}")
            if m <= b.rank_direct_max_m:
                res.count += 1
                if circulant.rank_K(indexcore.build_system(a), method="direct") != len(S) + 1:
                    res.failures.append(f"direct rank wrong for m={m}, eta={S}")
            elif len(S) >= 2:
                large.append((m, S))
    for m, S in rng.sample(large, min(b.rank_direct_samples, len(large))):
        res.count += 1
        if circulant.rank_K(indexcore.index_system(m, S), method="direct") != len(S) + 1:
            res.failures.append(f"direct rank wrong for m={m}, eta={S}")
    return res


def random_action(rng: random.Random, max_m: int, max_z: int = 8, max_h: int = 4) -> ActionData:
    while True:
        m = rng.randint(2, max_m)
        h = rng.randint(0, max_h)
        classes = [j for j in range(1, m) if math.gcd(j, m) == 1]
        counts: dict[int, int] = {}
        for _ in range(rng.randint(0, max_z)):
            j = rng.choice(classes)
            counts[j] = counts.get(j, 0) + 1
        try:
            a = new_action(m, h, counts)
        except GIndexError:
            continue
        if monodromy_ok(a):
            return a


def check_residuals(b: Bounds) -> CheckResult:
    res = CheckResult(6, "degree-0/degree-1 residuals")
    rng = random.Random(b.seed + 6)
    for _ in range(b.residual_samples):
        a = random_action(rng, b.residual_max_m)
        n, sig = _pipeline(a)
        solved = indexcore.solve_deg1(indexcore.build_system(a))
        res.count += 1
        bad = [x for x in indexcore.deg0_residuals(a, sig) if x]
        bad += [v for row in indexcore.deg1_residuals(a, solved) for v in row.values() if v]
        if bad:
            res.failures.append(f"nonzero residual for {a.to_json()}")
    return res


def check_eigenranks(b: Bounds) -> CheckResult:
    res = CheckResult(7, "eigenbundle ranks")
    got = [tuple(r["rank"] for r in eigenrank_report(a)) for a, _ in ak2_standard()]
    res.count = 2
    if got != [(3, 3), (104, 217)]:
        res.failures.append(f"ranks {got}")
    return res


def check_numeric(b: Bounds) -> CheckResult:
    res = CheckResult(8, "numeric cross-checks")
    for m in range(2, b.numeric_max_m + 1):
        for k in range(1, m):
            phi = math.pi * k / m
            res.count += 2
            if abs(embed_numeric(icot_half(k, m)) - (-1j / math.tan(phi))) > TOL * max(1, 1 / abs(math.tan(phi))):
                res.failures.append(f"icot_half({k},{m})")
            if abs(embed_numeric(csc2_half(k, m)) - 1 / math.sin(phi) ** 2) > TOL / math.sin(phi) ** 2:
                res.failures.append(f"csc2_half({k},{m})")
        if m >= 3:
            res.count += 1
            if not circulant.group_eigen_check(m, TOL):
                res.failures.append(f"group character eigenvalues m={m}")
            g = circulant.unit_group(m)
            if len(g.factors) <= 1:
                row = [embed_numeric(x).real for x in circulant.group_matrix(m)[0]]
                res.count += 1
                if not circulant.circulant_eigen_check(row, TOL):
                    res.failures.append(f"circulant eigenvalues m={m}")
    rng = random.Random(b.seed + 8)
    for d in range(1, 9):
        for n in range(1, 9):
            rows = [[rng.uniform(-2, 2) for _ in range(n)] for _ in range(d)]
            res.count += 1
            if not circulant.block_circulant_eigen_check(rows, TOL):
                res.failures.append(f"block circulant {d}x{n}")
    return res


def check_jets(b: Bounds) -> CheckResult:
    res = CheckResult(9, "jet expansion vs finite differences")
    rng = random.Random(b.seed + 9)
    step = 1e-4
    while res.count < b.jet_samples:
        m = rng.randint(2, b.numeric_max_m)
        j = rng.choice([x for x in range(1, m) if math.gcd(x, m) == 1])
        r = rng.randint(1, m - 1)
        jet = indexcore.coth_jet(j, r, m)
        phi = 2 * math.pi * j * r / m

        def f(x: float) -> complex:
            return 1 / cmath.tanh((x + 1j * phi) / 2)

        c0 = embed_numeric(jet.c0)
        c1 = embed_numeric(jet.c1[j])
        d1 = (f(step) - f(-step)) / (2 * step)
        res.count += 1
        # truncation error of the central difference scales with the derivative itself
        if abs(c0 - f(0)) > 1e-6 * max(1, abs(c0)) or abs(c1 - d1) > 1e-6 * max(1, abs(c1)):
            res.failures.append(f"(j, r, m) = ({j}, {r}, {m})")
    return res


CHECKS: list[Callable[[Bounds], CheckResult]] = [
    check_morita,
    check_chevalley_weil,
    check_hirzebruch,
    check_toledo,
    check_rank_certificates,
    check_residuals,
    check_eigenranks,
    check_numeric,
    check_jets,
]


def run_all(b: Bounds | None = None, checks=None) -> list[CheckResult]:
    b = b or Bounds()
    out = []
    for check in checks or CHECKS:
        t = time.perf_counter()
        try:
            r = check(b)
        except GIndexError as exc:
            r = CheckResult(0, check.__name__, False, failures=[f"{type(exc).__name__}: {exc}"])
        r.seconds = time.perf_counter() - t
        r.passed = not r.failures
        out.append(r)
    return out
