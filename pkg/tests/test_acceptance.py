"""One check per acceptance criterion; each prints a single PASS/FAIL line."""
import cmath
import math
import random
import time
from fractions import Fraction
from numbers import Rational

import pytest

from conftest import ACCEPTANCE_LINES, LEHMER
from trace_horizon.bounds import SurfaceParams, lefschetz_floor, penner_lower, theta
from trace_horizon.lefschetz import LefschetzCertificate, dilatation_lower_from_homology
from trace_horizon.matrix_core import IntMatrix, char_poly, companion, random_sl, standard_symplectic_form
from trace_horizon.penner import curve_system, entry_bound, penner_matrix, rho_bound
from trace_horizon.polynomial import IntPolynomial, cyclotomic, cyclotomic_factorization, power_sums
from trace_horizon.spectral import house, sz_floor
from trace_horizon.trace_search import (
    NuCertificate,
    SearchFailure,
    dirichlet_nu,
    fejer_min_real,
    fejer_value,
    find_nu,
    find_nu_cyclotomic,
    newton_girard_nu,
    reduced_trace,
    scan_horizon,
)


def report(n, passed, detail):
    line = f"criterion {n}: {'PASS' if passed else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert passed, line


def test_criterion_01_oracle_equivalence():
    rng = random.Random(101)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        m = rng.randint(2, 12)
        A = random_sl(m, rng, count=rng.randint(1, 3 * m))
        S = power_sums(char_poly(A), 30)
        P = IntMatrix.identity(m)
        for nu in range(1, 31):
            P = P @ A
            mismatches += P.trace() != S[nu - 1]
    dt = time.perf_counter() - t0
    report(1, mismatches == 0 and dt < 30,
           f"200 matrices x 30 powers, {mismatches} mismatches, {dt:.1f}s (limit 30s)")


def test_criterion_02_empirical_horizon():
    rng = random.Random(202)
    t0 = time.perf_counter()
    trials, successes, bad_failures = 500, 0, 0
    for _ in range(trials):
        m = rng.randint(4, 40)
        A = random_sl(m, rng)
        res = find_nu(A, 2, 0.5)
        if isinstance(res, NuCertificate):
            successes += res.nu <= math.ceil(m ** 2.5) and res.trace > 2
        else:
            ok = (res.periodic and cyclotomic_factorization(char_poly(A)).complete
                  and res.period_max_trace is not None and res.period_max_trace <= 2)
            bad_failures += not ok
    dt = time.perf_counter() - t0
    rate = successes / trials
    report(2, rate >= 0.99 and bad_failures == 0 and dt < 120,
           f"success {successes}/{trials} ({rate:.1%}, need 99%), "
           f"non-periodic failures {bad_failures}, {dt:.1f}s (limit 120s)")


def kronecker_corpus(rng):
    corpus = []
    small = [k for k in range(1, 40) if cyclotomic(k).degree <= 6]
    for _ in range(60):
        Q = IntPolynomial((1,))
        for _ in range(rng.randint(1, 4)):
            Q = Q * cyclotomic(rng.choice(small))
        corpus.append(Q)
    while len(corpus) < 150:
        d = rng.randint(2, 10)
        mid = [rng.randint(-2, 2) for _ in range(d - 1)]
        corpus.append(IntPolynomial([rng.choice([-1, 1])] + mid + [1]))
    corpus.append(LEHMER)
    corpus.append(LEHMER * cyclotomic(5))
    return corpus


def test_criterion_03_kronecker_dichotomy():
    corpus = kronecker_corpus(random.Random(303))
    exceptions = 0
    n_cyc = 0
    for Q in corpus:
        complete = cyclotomic_factorization(Q).complete
        n_cyc += complete
        exceptions += complete != (house(Q).value <= 1 + 1e-6)
    report(3, exceptions == 0 and len(corpus) >= 100,
           f"{len(corpus)} polynomials ({n_cyc} cyclotomic products), {exceptions} exceptions")


def test_criterion_04_pigeonhole():
    rng = random.Random(404)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(100):
        m = rng.randint(1, 5)
        zs = [cmath.exp(2j * math.pi * rng.random()) for _ in range(m)]
        nu, s = dirichlet_nu(zs)
        bad += not (1 <= nu <= 8 ** m and s >= m / math.sqrt(2) - 1e-9)
    dt = time.perf_counter() - t0
    report(4, bad == 0 and dt < 60, f"100 tuples, {bad} violations, {dt:.1f}s (limit 60s)")


def test_criterion_05_newton_girard():
    rng = random.Random(505)
    bad = 0
    for _ in range(1000):
        d = rng.randint(1, 12)
        coeffs = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(d)]
        lead = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 12))
        nu, s = newton_girard_nu(coeffs + [lead])
        bad += not (1 <= nu <= d + 1 and isinstance(s, Rational) and s >= 0)
    report(5, bad == 0, f"1000 rational polynomials of degree <= 12, {bad} exceptions")


def test_criterion_06_fejer():
    mins = {K: fejer_min_real(K, 10_000, 0) for K in (1, 5, 50)}
    exact = all(fejer_value(Fraction(1), K) == Fraction(K + 1, 2) for K in (1, 5, 50))
    report(6, all(v >= -1e-10 for v in mins.values()) and exact,
           f"min Re P over 10^4 samples {', '.join(f'K={k}: {v:.3e}' for k, v in mins.items())}; "
           f"P(1) = (K+1)/2 exact: {exact}")


def test_criterion_07_named_values():
    checks = {
        "theta(2) = 51840": theta(2) == 51840,
        "theta(g) > 3^(g^2), g <= 8": all(theta(g) > 3 ** (g * g) for g in range(1, 9)),
        "penner_lower(2,0)": abs(penner_lower(SurfaceParams(2, 0)) - math.log(2) / 12) <= 1e-12,
        "lefschetz_floor(-2)": abs(lefschetz_floor(-2) - math.log(6) / 12) <= 1e-12,
        "sz_floor(2) = 1.00390625": sz_floor(2) == 1.00390625,
    }
    failed = [k for k, v in checks.items() if not v]
    report(7, not failed, f"{len(checks) - len(failed)}/{len(checks)} named values"
           + (f", failed: {failed}" if failed else ""))


def test_criterion_08_lefschetz_pipeline():
    cert = dilatation_lower_from_homology(standard_symplectic_form(2), SurfaceParams(2, 0), 0.5)
    j_ok = (isinstance(cert, LefschetzCertificate) and cert.nu == 4
            and abs(cert.dilatation_log_lower - math.log(6) / 48) <= 1e-12)
    # genus 1 is gated by the bound formulas, so the rotation goes through the trace scan
    rot = find_nu(IntMatrix.from_rows([[0, -1], [1, 0]]), 2, 0.5)
    rot_ok = isinstance(rot, SearchFailure) and rot.periodic and rot.period == 4
    report(8, j_ok and rot_ok,
           f"J: nu={getattr(cert, 'nu', None)}, bound={getattr(cert, 'dilatation_log_lower', None)}; "
           f"rotation periodic failure: {rot_ok}")


def test_criterion_09_appendix_bounds():
    t0 = time.perf_counter()
    cells, violations = 0, []
    for g in range(2, 11):
        for n in range(0, 12 * g + 7):
            rep = penner_matrix(curve_system(g, n))
            cells += 1
            ok = (rep.max_entry <= entry_bound(n)
                  and rep.rho.upper <= rep.row_sum_bound
                  and rep.row_sum_bound == (rep.matrix.dim * rep.max_entry)
                  and rep.row_sum_bound <= rho_bound(g))
            if not ok:
                violations.append((g, n))
    dt = time.perf_counter() - t0
    report(9, not violations and dt < 120,
           f"{cells} cells, violations {violations[:5]}{'...' if len(violations) > 5 else ''}, "
           f"{dt:.1f}s (limit 120s)")


def test_criterion_10_cyclotomic_path():
    A7 = companion(cyclotomic(7))
    c7 = find_nu_cyclotomic(A7, 2)
    ok7 = c7.trace == 6 and reduced_trace(A7, c7.nu, 7) == 6 and A7.__pow__(c7.nu).trace() == 6
    I4 = IntMatrix.identity(4)
    c4 = find_nu_cyclotomic(I4, 2)
    ok4 = c4.nu == 720 and c4.trace == 4 and reduced_trace(I4, 720, 1) == 4
    report(10, ok7 and ok4,
           f"Phi_7: nu={c7.nu}, trace={c7.trace}; I_4: nu={c4.nu}, trace={c4.trace}")
