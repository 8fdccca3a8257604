"""Search for a power nu with Tr(A^nu) > B, plus the two lemma engines behind it.

``find_nu`` is the workhorse: an exact linear scan of the power sums of the
characteristic polynomial up to ceil(m^(2+eps)).  ``find_nu_expanding`` and
``find_nu_cyclotomic`` follow the two halves of the case split
(spectral radius > 1 versus all eigenvalues roots of unity) and return
certificates that say which branch of the argument fired.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import ContractViolation, SearchExhausted
from .matrix_core import IntMatrix, char_poly, det, trace_power_direct
from .polynomial import (
    IntPolynomial,
    cyclotomic,
    cyclotomic_factorization,
    divisors,
    euler_phi,
    iter_power_sums,
    newton_power_sums,
    power_roots_poly,
    ramanujan_sum,
    totient_threshold,
)
from .spectral import DEFAULT_C

HORIZON_ENV = "TRACE_HORIZON_MAX_NU"
DIRICHLET_CAP = 8

CASES = ("expanding", "cyclotomic_large_kl", "cyclotomic_small_kl", "direct_scan")


@dataclass(frozen=True)
class NuCertificate:
    nu: int
    trace: int
    threshold_B: int
    case: str
    horizon: int
    minimal: bool
    subcase: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "certificate",
            "nu": self.nu,
            "trace": self.trace,
            "threshold_B": self.threshold_B,
            "case": self.case,
            "horizon": self.horizon,
            "minimal": self.minimal,
            "subcase": self.subcase,
        }


@dataclass(frozen=True)
class SearchFailure:
    horizon: int
    max_trace_seen: int | None
    periodic: bool
    period: int | None = None
    threshold_B: int | None = None
    # max of Tr(A^nu) over one full period; None when not periodic
    period_max_trace: int | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "failure",
            "horizon": self.horizon,
            "max_trace_seen": self.max_trace_seen,
            "periodic": self.periodic,
            "period": self.period,
            "threshold_B": self.threshold_B,
            "period_max_trace": self.period_max_trace,
        }


def _ceil_power(m: int, exponent: float) -> int:
    h = m ** exponent
    r = round(h)
    if abs(h - r) <= 1e-9 * max(1.0, h):
        return int(r)
    return math.ceil(h)


def _apply_env_cap(horizon: int) -> int:
    cap = os.environ.get(HORIZON_ENV)
    if cap:
        return min(horizon, int(cap))
    return horizon


def scan_horizon(m: int, eps: float) -> int:
    """ceil(m^(2+eps)), clipped by the TRACE_HORIZON_MAX_NU safety valve."""
    if eps <= 0:
        raise ContractViolation("epsilon must be positive")
    return _apply_env_cap(_ceil_power(m, 2 + eps))


def _require_sl(A: IntMatrix):
    d = det(A)
    if d != 1:
        raise ContractViolation(f"matrix must lie in SL(m, Z); det = {d}")


def period_trace_max(indices: Sequence[int]) -> tuple[int, int]:
    """(period, max trace over one period) for a product of Phi_k, k in ``indices``.

    Tr(A^nu) = sum_j c_{k_j}(nu) with c_k the Ramanujan sum, which depends on
    nu only through gcd(nu, period); so the divisors of the period cover
    every residue class.
    """
    from .polynomial import lcm

    L = lcm(indices)
    best = max(sum(ramanujan_sum(k, d) for k in indices) for d in divisors(L))
    return L, best


def _failure(Q: IntPolynomial, horizon: int, max_seen, B) -> SearchFailure:
    fac = cyclotomic_factorization(Q)
    if fac.complete:
        period, pmax = period_trace_max(fac.indices)
        return SearchFailure(horizon, max_seen, True, period, B, pmax)
    return SearchFailure(horizon, max_seen, False, None, B, None)


def _scan(Q: IntPolynomial, B, horizon: int):
    """First nu <= horizon with S_nu > B, or (None, max seen)."""
    max_seen = None
    for nu, s in zip(range(1, horizon + 1), iter_power_sums(Q)):
        if s > B:
            return nu, s, max_seen
        max_seen = s if max_seen is None else max(max_seen, s)
    return None, None, max_seen


def find_nu(A: IntMatrix, B: int = 2, eps: float = 0.5):
    """Minimal nu <= ceil(m^(2+eps)) with Tr(A^nu) > B.

    Returns a NuCertificate, or a SearchFailure value when the horizon is
    exhausted (small m can legitimately fail).
    """
    _require_sl(A)
    Q = char_poly(A)
    horizon = scan_horizon(A.dim, eps)
    nu, s, max_seen = _scan(Q, B, horizon)
    if nu is not None:
        return NuCertificate(nu, s, B, "direct_scan", horizon, True)
    return _failure(Q, horizon, max_seen, B)


def expanding_horizons(m: int, B, eps: float, c: float = DEFAULT_C,
                       conjectural: bool = False) -> tuple[int, int]:
    """(K0, K) for the expanding case.

    Unconditionally K0 = ceil(20 (B/c) m (ln m)^3) and K = ceil(m^(1+eps)).
    With ``conjectural=True`` the linear root-separation floor 1 + c/d is
    ASSUMED, giving K0 = ceil(20 B m / c) and K = ceil(5 (m + 2 B K0)).
    """
    if c <= 0:
        raise ContractViolation("c must be positive")
    if conjectural:
        K0 = math.ceil(20 * B * m / c)
        return K0, math.ceil(5 * (m + 2 * B * K0))
    K0 = math.ceil(20 * (B / c) * m * math.log(m) ** 3) if m > 1 else 0
    return K0, _ceil_power(m, 1 + eps)


def find_nu_expanding(A: IntMatrix, B: int = 2, eps: float = 0.5,
                      c: float = DEFAULT_C, conjectural: bool = False) -> NuCertificate:
    """Certificate for a matrix whose characteristic polynomial is not fully cyclotomic.

    The scan runs to max(K, K0).  ``subcase`` records whether the hit came
    at nu <= K0 ("within_K0") or in the Fejer window K0 < nu <= K.
    """
    _require_sl(A)
    Q = char_poly(A)
    if cyclotomic_factorization(Q).complete:
        raise ContractViolation("all eigenvalues are roots of unity; use find_nu_cyclotomic")
    m = A.dim
    K0, K = expanding_horizons(m, B, eps, c, conjectural)
    horizon = _apply_env_cap(K if conjectural else max(K, K0))
    nu, s, max_seen = _scan(Q, B, horizon)
    if nu is None:
        failure = SearchFailure(horizon, max_seen, False, None, B, None)
        raise SearchExhausted(
            failure, f"no nu <= {horizon} with trace > {B}: m below threshold or c too large"
        )
    subcase = "within_K0" if nu <= K0 else "fejer_window"
    if conjectural:
        subcase = "conjectural_" + subcase
    return NuCertificate(nu, s, B, "expanding", horizon, True, subcase)


def reduced_trace(A: IntMatrix, nu: int, period: int) -> int:
    """Tr(A^nu) computed as Tr(A^r) with r = nu mod period (r = period when 0).

    Valid whenever every eigenvalue of A is a period-th root of unity, since
    the trace is then a period-periodic function of nu.
    """
    r = nu % period or period
    return trace_power_direct(A, r)


def find_nu_cyclotomic(A: IntMatrix, B: int = 2) -> NuCertificate:
    """Constructive nu for a matrix whose eigenvalues are all roots of unity.

    With k_l the largest cyclotomic index and B' = totient_threshold(B):
    if k_l > B', strip Phi_{k_l}, raise the remaining roots to the k_l-th
    power, pick nu' with a nonnegative power sum and use nu = k_l nu';
    otherwise use nu = B'! which kills every eigenvalue, giving trace m.
    """
    _require_sl(A)
    if B < 1:
        raise ContractViolation("B must be a positive integer")
    Q = char_poly(A)
    fac = cyclotomic_factorization(Q)
    if not fac.complete:
        raise ContractViolation("characteristic polynomial is not a product of cyclotomics")
    m = A.dim
    Bp = totient_threshold(B)
    kl = fac.indices[-1]
    period = fac.period
    if kl > Bp:
        rest = Q // cyclotomic(kl)
        g = power_roots_poly(rest, kl)
        if g.degree == 0:
            nu_prime, S = 1, 0
        else:
            nu_prime, S = newton_girard_nu(g)
        nu = kl * nu_prime
        trace = euler_phi(kl) + S
        horizon = kl * (g.degree + 1)
        case = "cyclotomic_large_kl"
    else:
        if m <= B:
            failure = SearchFailure(math.factorial(Bp), m, True, period, B,
                                    period_trace_max(fac.indices)[1])
            raise SearchExhausted(failure, f"k_l <= B' and m = {m} <= B: below threshold")
        nu = math.factorial(Bp)
        trace = m
        horizon = nu
        case = "cyclotomic_small_kl"
    check = reduced_trace(A, nu, period)
    if check != trace:
        raise AssertionError(f"constructive trace {trace} disagrees with direct trace {check}")
    if trace <= B:
        raise AssertionError("constructed nu does not clear the threshold")
    return NuCertificate(nu, trace, B, case, horizon, False)


def classify(A: IntMatrix) -> str:
    """'cyclotomic' when every eigenvalue is a root of unity, else 'expanding'."""
    fac = cyclotomic_factorization(char_poly(A))
    return "cyclotomic" if fac.complete else "expanding"


# ----------------------------------------------------------------- lemmas

def newton_girard_nu(Q) -> tuple[int, object]:
    """Least nu <= deg + 1 with S_nu >= 0 for a real polynomial.

    ``Q`` is an IntPolynomial or a coefficient sequence, lowest degree first.
    Integer and rational inputs are handled exactly; floats use a -1e-9 slack.
    """
    coeffs = list(Q.coeffs) if isinstance(Q, IntPolynomial) else list(Q)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise ContractViolation("newton_girard_nu needs degree >= 1")
    exact = all(isinstance(a, Rational) for a in coeffs)
    lead = coeffs[-1]
    if exact:
        monic = [Fraction(a) / Fraction(lead) for a in coeffs]
        floor = 0
    else:
        monic = [float(a) / float(lead) for a in coeffs]
        floor = -1e-9
    S = newton_power_sums(monic, n + 1)
    for nu, s in enumerate(S, start=1):
        if s >= floor:
            if exact and s.denominator == 1:
                s = int(s)
            return nu, s
    raise AssertionError("no nonnegative power sum within deg + 1: this is a bug")


def dirichlet_nu(zs: Sequence[complex], cap: int = DIRICHLET_CAP) -> tuple[int, float]:
    """Pigeonhole power nu <= 8^m with Re(S_nu) >= (1/sqrt 2) sum |z_j|^nu.

    Each z_j^k, k = 1..8^m + 1, is coded by its angular sector of width
    pi/4; two equal codes at k = i < j give nu = j - i.  The smallest such
    gap over the whole range is returned.
    """
    zs = [complex(z) for z in zs]
    m = len(zs)
    if m < 1:
        raise ContractViolation("dirichlet_nu needs at least one number")
    if m > cap:
        raise ContractViolation(f"m = {m} exceeds the cap {cap}: 8^m codes would be scanned")
    N = 8 ** m + 1
    k = np.arange(1, N + 1, dtype=np.float64)
    codes = np.zeros(N, dtype=np.int64)
    for j, z in enumerate(zs):
        if z == 0:
            continue
        t = (cmath.phase(z) / (2 * math.pi)) % 1.0
        sector = np.floor(np.mod(k * t, 1.0) * 8).astype(np.int64)
        np.clip(sector, 0, 7, out=sector)
        codes += sector * (8 ** j)
    order = np.argsort(codes, kind="stable")
    sc = codes[order]
    same = sc[1:] == sc[:-1]
    gaps = np.diff(order)[same]
    nu = int(gaps.min())
    realsum = sum((z ** nu).real for z in zs)
    return nu, realsum


def fejer_value(z, K: int):
    """P(z) = 1/2 + sum_{nu=1..K} (1 - nu/(K+1)) z^nu, by Horner.

    Exact (Fraction) when z is an int or Fraction.
    """
    if K < 1:
        raise ContractViolation("K must be >= 1")
    if isinstance(z, Rational):
        z = Fraction(z)
        coef = [Fraction(K + 1 - nu, K + 1) for nu in range(K + 1)]
        half = Fraction(1, 2)
    else:
        z = complex(z)
        coef = [(K + 1 - nu) / (K + 1) for nu in range(K + 1)]
        half = 0.5
    acc = 0
    for nu in range(K, 0, -1):
        acc = acc * z + coef[nu]
    return half + z * acc


def unit_disk_samples(n: int, seed: int = 0) -> np.ndarray:
    """About n quasi-uniform points of the closed unit disk.

    A golden-angle spiral covers the interior; a quarter of the budget goes
    to the boundary circle, where Re P is smallest.  ``seed`` rotates both.
    """
    rng = np.random.default_rng(seed)
    phase = rng.uniform(0, 2 * np.pi)
    n_edge = max(n // 4, 1)
    n_in = max(n - n_edge, 1)
    i = np.arange(n_in)
    r = np.sqrt((i + 0.5) / n_in)
    theta = i * np.pi * (3 - np.sqrt(5)) + phase
    inner = r * np.exp(1j * theta)
    edge = np.exp(1j * (2 * np.pi * np.arange(n_edge) / n_edge + phase))
    return np.concatenate([inner, edge])


def fejer_min_real(K: int, n: int = 10_000, seed: int = 0) -> float:
    """min Re P(z) over the sample set; vectorised Horner."""
    z = unit_disk_samples(n, seed)
    acc = np.zeros_like(z)
    for nu in range(K, 0, -1):
        acc = acc * z + (K + 1 - nu) / (K + 1)
    return float((0.5 + z * acc).real.min())
