"""Integer polynomials: power sums, cyclotomic polynomials and their recognition.

Coefficient tuples are stored lowest degree first, so ``coeffs[i]`` is the
coefficient of z**i.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterator, Sequence

from .errors import ContractViolation


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """Build from coefficients listed highest degree first."""
        return cls(tuple(reversed(tuple(coeffs))))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (a,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, z):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial((0,))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, divisor: "IntPolynomial"):
        """Long division by a monic divisor; quotient and remainder stay integral."""
        if not divisor.is_monic:
            raise ContractViolation("integer long division needs a monic divisor")
        d = divisor.degree
        rem = list(self.coeffs)
        if self.degree < d:
            return IntPolynomial((0,)), self
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            q = rem[i]
            if q:
                quot[i - d] = q
                for j, b in enumerate(divisor.coeffs):
                    rem[i - d + j] -= q * b
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:d]) or (0,))

    def __floordiv__(self, divisor):
        return divmod(self, divisor)[0]

    def __mod__(self, divisor):
        return divmod(self, divisor)[1]

    def compose_power(self, p: int) -> "IntPolynomial":
        """Q(z**p)."""
        out = [0] * ((len(self.coeffs) - 1) * p + 1)
        for i, a in enumerate(self.coeffs):
            out[i * p] = a
        return IntPolynomial(tuple(out))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs))[1:] or (0,))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("z" if i == 1 else f"z^{i}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


Z = IntPolynomial((0, 1))


# ---------------------------------------------------------------- power sums

def newton_power_sums(coeffs: Sequence, N: int) -> list:
    """S_1..S_N for the monic polynomial with coefficients ``coeffs`` (low first).

    Works for any exact or floating coefficient type.  For nu <= degree this
    is the r*sigma_r family of the Newton-Girard identities; beyond the
    degree it is the shift recurrence S_{t+m} = -sum c_{m-i} S_{t+m-i}.
    """
    m = len(coeffs) - 1
    if m < 1:
        raise ContractViolation("power sums need degree >= 1")
    if coeffs[m] != 1:
        raise ContractViolation("power sums need a monic polynomial")
    S = []
    for k in range(1, N + 1):
        s = 0
        for i in range(1, min(k - 1, m) + 1):
            s -= coeffs[m - i] * S[k - i - 1]
        if k <= m:
            s -= k * coeffs[m - k]
        S.append(s)
    return S


def power_sums(Q: IntPolynomial, N: int) -> list[int]:
    """Exact S_1..S_N, the sums of nu-th powers of the roots of monic Q."""
    if Q.degree < 1 or not Q.is_monic:
        raise ContractViolation("power_sums needs a monic polynomial of degree >= 1")
    return newton_power_sums(Q.coeffs, N)


def iter_power_sums(Q: IntPolynomial) -> Iterator[int]:
    """Endless stream S_1, S_2, ... keeping only the last deg(Q) values."""
    if Q.degree < 1 or not Q.is_monic:
        raise ContractViolation("power sums need a monic polynomial of degree >= 1")
    c = Q.coeffs
    m = Q.degree
    window = deque(newton_power_sums(c, m), maxlen=m)
    yield from window
    # window[-i] is S_{k-i}
    tail = [c[m - i] for i in range(1, m + 1)]
    while True:
        s = 0
        for i, a in enumerate(tail, start=1):
            if a:
                s -= a * window[-i]
        window.append(s)
        yield s


def power_roots_poly(Q: IntPolynomial, k: int) -> IntPolynomial:
    """Monic polynomial whose roots are the k-th powers of the roots of Q.

    Uses S'_nu = S_{k nu} and the inverse Newton identities
    j e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} S'_i; every division is exact.
    """
    if not Q.is_monic:
        raise ContractViolation("power_roots_poly needs a monic polynomial")
    if k < 1:
        raise ContractViolation("k must be >= 1")
    m = Q.degree
    if m == 0:
        return Q
    S = power_sums(Q, k * m)
    Sp = [S[k * nu - 1] for nu in range(1, m + 1)]
    e = [1]
    for j in range(1, m + 1):
        acc = 0
        for i in range(1, j + 1):
            term = e[j - i] * Sp[i - 1]
            acc += term if i % 2 else -term
        q, r = divmod(acc, j)
        if r:
            raise ArithmeticError("non-integral elementary symmetric function")
        e.append(q)
    coeffs = [0] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = e[j] if j % 2 == 0 else -e[j]
    return IntPolynomial(tuple(coeffs))


# --------------------------------------------------------- arithmetic helpers

def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ContractViolation("factorize needs n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(k: int) -> int:
    if k < 1:
        raise ContractViolation("euler_phi needs k >= 1")
    phi = k
    for p in factorize(k):
        phi -= phi // p
    return phi


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


def lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def ramanujan_sum(k: int, nu: int) -> int:
    """Sum of nu-th powers of the primitive k-th roots of unity, i.e. the power sum of Phi_k."""
    g = math.gcd(k, nu)
    return sum(mobius(k // d) * d for d in divisors(g))


def totient_threshold(B: int) -> int:
    """Least B' such that phi(t) > B for every t > B'.

    phi(t) >= sqrt(t/2) bounds every t with phi(t) <= B by 2B^2, so
    scanning up to 2(B+1)^2 is enough.
    """
    if B < 1:
        raise ContractViolation("totient_threshold needs B >= 1")
    return max(t for t in range(1, 2 * (B + 1) ** 2 + 1) if euler_phi(t) <= B)


# ------------------------------------------------------------- cyclotomics

@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPolynomial:
    """Phi_k by exact division.

    With p a prime dividing k: Phi_k(z) = Phi_{k/p}(z^p) when p^2 | k, and
    Phi_{k/p}(z^p) / Phi_{k/p}(z) otherwise.
    """
    if k < 1:
        raise ContractViolation("cyclotomic needs k >= 1")
    if k == 1:
        return IntPolynomial((-1, 1))
    p = min(factorize(k))
    base = cyclotomic(k // p)
    lifted = base.compose_power(p)
    if (k // p) % p == 0:
        return lifted
    q, r = divmod(lifted, base)
    assert r.is_zero
    return q


@dataclass(frozen=True)
class CyclotomicFactorization:
    indices: tuple[int, ...]
    residual: IntPolynomial
    complete: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "complete", self.residual == IntPolynomial((1,)))

    @property
    def period(self) -> int | None:
        """lcm of the indices when complete: the period of the power-sum sequence."""
        return lcm(self.indices) if self.complete else None

    def product(self) -> IntPolynomial:
        out = self.residual
        for k in self.indices:
            out = out * cyclotomic(k)
        return out


def cyclotomic_candidates(d: int) -> list[int]:
    """All k with phi(k) <= d, in increasing order (they satisfy k <= 2 d^2)."""
    return [k for k in range(1, 2 * d * d + 1) if euler_phi(k) <= d]


def cyclotomic_factorization(Q: IntPolynomial) -> CyclotomicFactorization:
    """Strip every cyclotomic factor of Q by repeated trial division."""
    if not Q.is_monic:
        raise ContractViolation("cyclotomic_factorization needs a monic polynomial")
    if Q.coeffs[0] == 0:
        raise ContractViolation("Q(0) = 0: z divides Q, so Q cannot be a characteristic polynomial in SL")
    indices = []
    residual = Q
    for k in cyclotomic_candidates(Q.degree):
        phi_k = cyclotomic(k)
        while phi_k.degree <= residual.degree:
            q, r = divmod(residual, phi_k)
            if not r.is_zero:
                break
            indices.append(k)
            residual = q
        if residual.degree == 0:
            break
    return CyclotomicFactorization(tuple(indices), residual)


# ------------------------------------------------- square-free decomposition

def _monic_fraction(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    lead = p[-1]
    return [c / lead for c in p]


def _fraction_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _fraction_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _monic_fraction(list(a))
    b = _monic_fraction(list(b)) if any(b) else []
    while b:
        _, r = _fraction_divmod(a, b)
        a, b = b, (_monic_fraction(r) if r else [])
    return a


def _to_int_poly(p: list[Fraction]) -> IntPolynomial:
    if any(c.denominator != 1 for c in p):
        raise ArithmeticError("factor of a monic integer polynomial is not integral")
    return IntPolynomial(tuple(int(c) for c in p))


def squarefree_decomposition(Q: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: Q = prod P_i^i with each P_i square-free and coprime.

    For monic integer Q the factors are monic integer polynomials (Gauss).
    Returns the non-constant (P_i, i) pairs.
    """
    if Q.degree < 1 or not Q.is_monic:
        raise ContractViolation("squarefree_decomposition needs a monic polynomial of degree >= 1")
    f = [Fraction(c) for c in Q.coeffs]
    df = [Fraction(c) for c in Q.derivative().coeffs]
    a = _fraction_gcd(f, df)
    b, _ = _fraction_divmod(f, a)
    c, _ = _fraction_divmod(df, a)
    out = []
    i = 1
    while len(b) > 1:
        # d = c - b'
        db = [k * x for k, x in enumerate(b)][1:]
        n = max(len(c), len(db))
        d = [(c[j] if j < len(c) else 0) - (db[j] if j < len(db) else 0) for j in range(n)]
        while d and d[-1] == 0:
            d.pop()
        a = _fraction_gcd(b, d) if d else _monic_fraction(list(b))
        if len(a) > 1:
            out.append((_to_int_poly(a), i))
        b, _ = _fraction_divmod(b, a)
        c, _ = _fraction_divmod(d, a) if d else ([Fraction(0)], [])
        i += 1
    return out
