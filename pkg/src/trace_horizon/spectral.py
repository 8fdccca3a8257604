"""Numerical spectra of integer polynomials and matrices.

Roots are found with the Aberth-Ehrlich simultaneous iteration, run on each
square-free part of the input separately so that repeated factors such as
(z - 1)^3 do not wreck convergence.  Each root carries an inclusion radius
d |P(z)| / |P'(z)| computed from the square-free factor P of degree d.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import ContractViolation, NumericalFailure
from .matrix_core import IntMatrix, char_poly
from .polynomial import IntPolynomial, squarefree_decomposition

MAX_ITER = 1000
DEFAULT_TOL = 1e-10

# Placeholder for the root-separation constant c in 1 + c/(d log(d)^3).
# The true value depends on an unquantified degree threshold; this is not
# a published constant.
DEFAULT_C = 4.0 ** -12


@dataclass(frozen=True)
class SpectrumEstimate:
    roots: tuple[tuple[complex, float], ...]
    source_degree: int

    @property
    def values(self) -> list[complex]:
        return [z for z, _ in self.roots]

    @property
    def max_radius(self) -> float:
        return max((r for _, r in self.roots), default=0.0)


@dataclass(frozen=True)
class HouseValue:
    value: float
    radius: float
    certified_gt_one: bool


@dataclass(frozen=True)
class PerronBracket:
    estimate: float
    lower: float
    upper: float


class _Float:
    eps = float(np.finfo(float).eps)
    num = complex

    @staticmethod
    def expj(t):
        return cmath.exp(1j * t)

    @staticmethod
    def to_py(z):
        return complex(z)


class _MP:
    def __init__(self, dps):
        self.dps = dps
        self.eps = 10.0 ** (-dps)

    @staticmethod
    def num(a):
        return mpmath.mpc(a)

    @staticmethod
    def expj(t):
        return mpmath.expj(t)

    @staticmethod
    def to_py(z):
        return complex(z)


def _aberth(coeffs, tol, ctx):
    """Simultaneous root iteration for a square-free polynomial (coeffs low first)."""
    d = len(coeffs) - 1
    a = [ctx.num(c) for c in coeffs]
    da = [k * a[k] for k in range(1, d + 1)]
    lead = abs(a[-1])
    bound = 2 * max(float(abs(a[d - i]) / lead) ** (1.0 / i) for i in range(1, d + 1))
    r0 = max(bound / 2, 1e-3)
    z = [r0 * ctx.expj(2 * math.pi * i / d + 0.4) for i in range(d)]

    def horner(p, x):
        acc = 0
        for c in reversed(p):
            acc = acc * x + c
        return acc

    stop = max(tol * 1e-3, 0.0)
    for _ in range(MAX_ITER):
        worst = 0.0
        for i in range(d):
            zi = z[i]
            p = horner(a, zi)
            if p == 0:
                continue
            dp = horner(da, zi)
            s = sum(1 / (zi - z[j]) for j in range(d) if j != i)
            ratio = p / dp if dp != 0 else p
            delta = ratio / (1 - ratio * s)
            z[i] = zi - delta
            rel = float(abs(delta)) / max(1.0, float(abs(z[i])))
            worst = max(worst, rel)
        if worst <= max(stop, 16 * ctx.eps):
            break
    else:
        raise NumericalFailure(f"Aberth iteration did not converge in {MAX_ITER} steps (degree {d})")

    out = []
    absa = [abs(c) for c in a]
    for zi in z:
        p = horner(a, zi)
        dp = horner(da, zi)
        # rounding error of the Horner evaluation
        rz = abs(zi)
        err = 2 * d * ctx.eps * float(horner(absa, rz))
        if dp == 0:
            radius = math.inf
        else:
            radius = d * (float(abs(p)) + err) / float(abs(dp))
        out.append((ctx.to_py(zi), radius))
    return out


def _simple_roots(P: IntPolynomial, tol: float):
    d = P.degree
    if d == 1:
        a0, a1 = P.coeffs
        if a1 == 1 and abs(a0) < 2 ** 53:
            return [(complex(-a0), 0.0)]
    result = None
    for ctx in (_Float, _MP(40), _MP(100)):
        try:
            if isinstance(ctx, _MP):
                with mpmath.workdps(ctx.dps):
                    result = _aberth(P.coeffs, tol, ctx)
            else:
                result = _aberth(P.coeffs, tol, ctx)
        except (NumericalFailure, ZeroDivisionError, OverflowError):
            result = None
            continue
        if max(r for _, r in result) <= tol:
            return result
    raise NumericalFailure(
        f"could not certify roots of a degree-{d} factor to tolerance {tol}"
    )


def roots(Q: IntPolynomial, tol: float = DEFAULT_TOL) -> SpectrumEstimate:
    """All complex roots of Q with multiplicity, each within ``tol`` of a true root."""
    if Q.degree < 1:
        raise ContractViolation("roots needs degree >= 1")
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    parts = squarefree_decomposition(Q) if Q.is_monic else [(Q, 1)]
    found = []
    for P, mult in parts:
        for z, r in _simple_roots(P, tol):
            found.extend([(z, r)] * mult)
    found.sort(key=lambda zr: (-abs(zr[0]), -zr[0].imag, -zr[0].real))
    return SpectrumEstimate(tuple(found), Q.degree)


def house(Q: IntPolynomial, tol: float = DEFAULT_TOL) -> HouseValue:
    """Largest root modulus of a monic Q with Q(0) != 0."""
    if not Q.is_monic or Q.coeffs[0] == 0:
        raise ContractViolation("house needs a monic polynomial with nonzero constant term")
    est = roots(Q, tol)
    z, r = max(est.roots, key=lambda zr: abs(zr[0]))
    certified = any(abs(w) - rw > 1 for w, rw in est.roots)
    return HouseValue(abs(z), r, certified)


def spectral_radius(A: IntMatrix, tol: float = DEFAULT_TOL) -> float:
    """max |eigenvalue| of A via the characteristic polynomial.

    For entrywise nonnegative A the value is checked against the row-sum
    bracket min row sum <= rho <= max row sum.
    """
    est = roots(char_poly(A), tol)
    rho = max(abs(z) for z in est.values)
    if A.is_nonnegative():
        sums = [sum(r) for r in A.rows]
        if not (min(sums) - tol <= rho <= max(sums) + tol):
            raise NumericalFailure(
                f"spectral radius {rho} outside row-sum bracket [{min(sums)}, {max(sums)}]"
            )
    return rho


def perron_root(A, tol: float = 1e-12, max_iter: int = 200) -> PerronBracket:
    """Perron root of a nonnegative irreducible matrix with a Collatz-Wielandt bracket.

    For any positive vector x, min (Ax)_i/x_i <= rho <= max (Ax)_i/x_i.  The
    starting vector comes from a dense eigensolver and is then refined by
    power iteration until the bracket is within ``tol`` (relative).
    """
    M = np.asarray(A.to_lists() if isinstance(A, IntMatrix) else A, dtype=float)
    if (M < 0).any():
        raise ContractViolation("perron_root needs a nonnegative matrix")
    n = M.shape[0]
    w, V = np.linalg.eig(M)
    k = int(np.argmax(np.abs(w)))
    x = np.abs(V[:, k].real) + 1e-300
    if not (x > 0).all():
        x = np.ones(n)
    slack = 4 * n * np.finfo(float).eps
    lo = hi = None
    for _ in range(max_iter):
        y = M @ x
        if (x <= 0).any():
            raise NumericalFailure("Perron vector lost positivity; matrix not irreducible?")
        ratios = y / x
        lo, hi = ratios.min() * (1 - slack), ratios.max() * (1 + slack)
        if hi - lo <= tol * max(hi, 1.0):
            break
        x = y / np.linalg.norm(y)
    return PerronBracket(float((lo + hi) / 2), float(lo), float(hi))


# ------------------------------------------------------------ floor formulas

def dobrowolsky_floor(d: int) -> float:
    """1 + (1/d) (ln ln d / ln d)^3, defined for d >= 3."""
    if d < 3:
        raise ContractViolation("dobrowolsky_floor needs d >= 3 so that ln ln d > 0")
    return 1 + (math.log(math.log(d)) / math.log(d)) ** 3 / d


def sz_floor(s: int) -> float:
    """1 + 4^(-s-2), where 2s conjugates are non-real."""
    if s < 0:
        raise ContractViolation("sz_floor needs s >= 0")
    return 1 + 4.0 ** (-s - 2)


def combined_floor(d: int, c: float = DEFAULT_C) -> float:
    """1 + c / (d (ln d)^3): the all-degree floor obtained by patching the two above."""
    if d < 2:
        raise ContractViolation("combined_floor needs d >= 2")
    if c <= 0:
        raise ContractViolation("c must be positive")
    return 1 + c / (d * math.log(d) ** 3)


def conjectural_linear_floor(d: int, c: float = DEFAULT_C) -> float:
    """1 + c/d. CONJECTURAL (Schinzel-Zassenhaus); never used as a proven bound."""
    if d < 1:
        raise ContractViolation("d must be >= 1")
    return 1 + c / d
