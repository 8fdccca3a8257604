"""Exact square integer matrices.

Everything here works over Python ints, so there is no overflow at any
magnitude.  The characteristic polynomial is computed with the
Faddeev-LeVerrier recurrence, whose divisions are exact over the integers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation, ParseError


@dataclass(frozen=True)
class IntMatrix:
    """Immutable m x m matrix of arbitrary-precision integers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        m = len(rows)
        if m == 0:
            raise ContractViolation("matrix must have dimension >= 1")
        for i, r in enumerate(rows):
            if len(r) != m:
                raise ContractViolation(f"row {i} has length {len(r)}, expected {m}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, m: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_object_array(self) -> np.ndarray:
        arr = np.empty((self.dim, self.dim), dtype=object)
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                arr[i, j] = x
        return arr

    @classmethod
    def from_array(cls, arr) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in arr))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise ContractViolation("dimension mismatch in matrix product")
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ContractViolation("negative matrix powers are not supported")
        result = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def __str__(self) -> str:
        return format_matrix(self)


def parse_matrix(text) -> IntMatrix:
    """Parse the plain-text matrix format.

    Line 1 holds the dimension m, the next m lines hold m integers each.
    Lines whose first non-blank character is ``#`` and blank lines are skipped.
    Accepts ``str`` or ``bytes``.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    content = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        content.append((lineno, raw))
    if not content:
        raise ParseError("missing dimension line", 1)

    lineno, raw = content[0]
    tokens = raw.split()
    if len(tokens) != 1:
        raise ParseError("dimension line must hold a single integer", lineno)
    try:
        m = int(tokens[0])
    except ValueError:
        raise ParseError(f"dimension {tokens[0]!r} is not an integer", lineno,
                         raw.index(tokens[0]) + 1) from None
    if m < 1:
        raise ParseError(f"dimension must be positive, got {m}", lineno)

    rows = []
    for r, (lineno, raw) in enumerate(content[1:], start=1):
        if r > m:
            raise ParseError(f"unexpected extra row (matrix has {m} rows)", lineno)
        row = []
        pos = 0
        for tok in raw.split():
            col = raw.index(tok, pos)
            pos = col + len(tok)
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"token {tok!r} is not an integer", lineno, col + 1) from None
        if len(row) != m:
            raise ParseError(f"row {r} has {len(row)} entries, expected {m}", lineno)
        rows.append(row)
    if len(rows) != m:
        last = content[-1][0]
        raise ParseError(f"expected {m} rows, found {len(rows)}", last + 1)
    return IntMatrix.from_rows(rows)


def format_matrix(A: IntMatrix) -> str:
    """Inverse of :func:`parse_matrix`."""
    lines = [str(A.dim)] + [" ".join(str(x) for x in r) for r in A.rows]
    return "\n".join(lines) + "\n"


def det(A: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = A.dim
    M = [list(r) for r in A.rows]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if M[k][k] == 0:
            for i in range(k + 1, m):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                # Bareiss guarantees this division is exact
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[m - 1][m - 1]


def char_poly(A: IntMatrix):
    """Characteristic polynomial det(zI - A) as an IntPolynomial (monic, degree m)."""
    from .polynomial import IntPolynomial

    m = A.dim
    a = A.to_object_array()
    coeffs = [0] * (m + 1)
    coeffs[m] = 1
    eye = np.identity(m, dtype=int).astype(object)
    M = np.zeros((m, m), dtype=int).astype(object)
    for k in range(1, m + 1):
        M = a.dot(M) + coeffs[m - k + 1] * eye
        t = int(np.trace(a.dot(M)))
        q, r = divmod(-t, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact over Z"
        coeffs[m - k] = q
    return IntPolynomial(tuple(coeffs))


def trace_power_direct(A: IntMatrix, nu: int) -> int:
    """Tr(A^nu) by exact binary powering. Independent of the polynomial route."""
    if nu < 1:
        raise ContractViolation("nu must be >= 1")
    return (A ** nu).trace()


def standard_symplectic_form(g: int) -> IntMatrix:
    """Block diagonal J with g copies of [[0, 1], [-1, 0]]."""
    m = 2 * g
    rows = [[0] * m for _ in range(m)]
    for b in range(g):
        rows[2 * b][2 * b + 1] = 1
        rows[2 * b + 1][2 * b] = -1
    return IntMatrix.from_rows(rows)


def is_symplectic(A: IntMatrix) -> bool:
    """True iff A^T J A == J for the block-diagonal standard form J."""
    if A.dim % 2:
        raise ContractViolation(f"symplectic test needs even dimension, got {A.dim}")
    J = standard_symplectic_form(A.dim // 2)
    return A.transpose() @ J @ A == J


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    m = sum(b.dim for b in blocks)
    rows = [[0] * m for _ in range(m)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[off + i][off:off + b.dim] = r
        off += b.dim
    return IntMatrix.from_rows(rows)


def companion(Q) -> IntMatrix:
    """Companion matrix of a monic polynomial; its characteristic polynomial is Q."""
    c = Q.coeffs
    m = len(c) - 1
    if m < 1 or c[-1] != 1:
        raise ContractViolation("companion matrix needs a monic polynomial of degree >= 1")
    rows = [[0] * m for _ in range(m)]
    for i in range(1, m):
        rows[i][i - 1] = 1
    for i in range(m):
        rows[i][m - 1] = -c[i]
    return IntMatrix.from_rows(rows)


def transvection(m: int, i: int, j: int, s: int = 1) -> IntMatrix:
    """Elementary matrix I + s*E_ij (i != j); determinant 1."""
    if i == j:
        raise ContractViolation("transvection needs i != j")
    rows = [[int(a == b) for b in range(m)] for a in range(m)]
    rows[i][j] = s
    return IntMatrix.from_rows(rows)


def random_sl(m: int, rng: random.Random, count: int | None = None,
              scalars: Sequence[int] = (-1, 1)) -> IntMatrix:
    """Random element of SL(m, Z) as a product of elementary transvections.

    ``count`` defaults to a uniform draw from 1..3m.  For m == 1 the only
    element is [[1]].
    """
    if m == 1:
        return IntMatrix.identity(1)
    if count is None:
        count = rng.randint(1, 3 * m)
    M = [[int(a == b) for b in range(m)] for a in range(m)]
    for _ in range(count):
        i, j = rng.sample(range(m), 2)
        s = rng.choice(scalars)
        # left-multiply by I + s E_ij: row i += s * row j
        M[i] = [x + s * y for x, y in zip(M[i], M[j])]
    return IntMatrix.from_rows(M)
