"""Penner twist matrices for S_{g,n} and the entry / spectral-radius checks on them.

Curve model (chain plus fan), with red curves a_1..a_{g+1} and blue curves
b_1..b_{g+n-1}:

* chain: b_j meets a_j and a_{j+1} once, for 1 <= j <= g-1;
* fan:   each of b_g..b_{g+n-1} meets a_g and a_{g+1} once;
* n = 0: b_{g-1} also meets a_{g+1}, so the last red curve is not isolated.

This is one reading of the standard picture.  Only the two inequalities
max entry <= max(3n+4, 7) and rho <= (14g+6)(36g+22) are treated as ground
truth, and a violation is reported rather than patched.
"""
from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable

import numpy as np

from .errors import ContractViolation
from .matrix_core import IntMatrix
from .spectral import PerronBracket, perron_root


@dataclass(frozen=True)
class CurveSystem:
    g: int
    n: int
    k: int
    l: int
    intersections: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return self.k + self.l

    @property
    def red(self) -> range:
        return range(self.k)

    @property
    def blue(self) -> range:
        return range(self.k, self.k + self.l)

    def label(self, idx: int) -> str:
        return f"a{idx + 1}" if idx < self.k else f"b{idx - self.k + 1}"

    def is_bipartite(self) -> bool:
        I = self.intersections
        same = [(i, j) for grp in (self.red, self.blue) for i in grp for j in grp]
        return all(I[i][j] == 0 for i, j in same)

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j, x in enumerate(self.intersections[i]):
                if x and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.size


def curve_system(g: int, n: int) -> CurveSystem:
    if g < 2 or n < 0:
        raise ContractViolation(f"curve_system needs g >= 2 and n >= 0, got ({g}, {n})")
    k, l = g + 1, g + n - 1
    size = k + l
    M = [[0] * size for _ in range(size)]

    def meet(a, b):
        # a, b are 1-based red / blue labels
        i, j = a - 1, k + b - 1
        M[i][j] = M[j][i] = 1

    for j in range(1, g):
        meet(j, j)
        meet(j + 1, j)
    for b in range(g, g + n):
        meet(g, b)
        meet(g + 1, b)
    if n == 0:
        meet(g + 1, g - 1)
    cs = CurveSystem(g, n, k, l, tuple(tuple(r) for r in M))
    assert cs.is_bipartite() and cs.is_connected()
    return cs


def twist_matrix(cs: CurveSystem, c: int) -> IntMatrix:
    """Action of the twist along curve c on curve-supported measures: I + e_c i(c, .)."""
    size = cs.size
    rows = [[int(i == j) for j in range(size)] for i in range(size)]
    rows[c] = [x + y for x, y in zip(rows[c], cs.intersections[c])]
    return IntMatrix.from_rows(rows)


def same_color_commute(cs: CurveSystem) -> bool:
    """Exact check that twist matrices of same-coloured curves commute pairwise."""
    mats = [twist_matrix(cs, c) for c in range(cs.size)]
    for grp in (cs.red, cs.blue):
        for i in grp:
            for j in grp:
                if i < j and mats[i] @ mats[j] != mats[j] @ mats[i]:
                    return False
    return True


def _product_array(cs: CurveSystem) -> np.ndarray:
    """prod_red M(c) * prod_blue M(c) via rank-one updates X <- X + (X e_c) i(c, .)."""
    I = np.array(cs.intersections, dtype=np.int64)
    X = np.eye(cs.size, dtype=np.int64)
    for c in list(cs.red) + list(cs.blue):
        X = X + np.outer(X[:, c], I[c])
    if X.max() > 2 ** 40:
        raise OverflowError("entries too large for the int64 fast path")
    return X


@dataclass(frozen=True)
class PennerMatrixReport:
    g: int
    n: int
    matrix: IntMatrix
    max_entry: int
    entry_bound: int
    rho: PerronBracket
    row_sum_bound: int
    rho_bound: int
    max_row_sum: int

    @property
    def entry_ok(self) -> bool:
        return self.max_entry <= self.entry_bound

    @property
    def row_sum_ok(self) -> bool:
        # rho <= max row sum <= (k + l) * max entry
        return self.rho.upper <= self.max_row_sum <= self.row_sum_bound

    @property
    def rho_bound_ok(self) -> bool:
        return self.row_sum_bound <= self.rho_bound

    @property
    def chain_ok(self) -> bool:
        # (k + l) * max(3n+4, 7) <= (14g+6)(36g+22), independent of the model
        return (self.matrix.dim * self.entry_bound) <= self.rho_bound

    @property
    def ok(self) -> bool:
        return self.entry_ok and self.row_sum_ok and self.rho_bound_ok and self.chain_ok


def entry_bound(n: int) -> int:
    return max(3 * n + 4, 7)


def rho_bound(g: int) -> int:
    return (14 * g + 6) * (36 * g + 22)


def penner_matrix(cs: CurveSystem) -> PennerMatrixReport:
    X = _product_array(cs)
    if (X < 0).any():
        raise AssertionError("Penner matrix must be nonnegative")
    max_entry = int(X.max())
    return PennerMatrixReport(
        g=cs.g,
        n=cs.n,
        matrix=IntMatrix.from_array(X.tolist()),
        max_entry=max_entry,
        entry_bound=entry_bound(cs.n),
        rho=perron_root(X),
        row_sum_bound=cs.size * max_entry,
        rho_bound=rho_bound(cs.g),
        max_row_sum=int(X.sum(axis=1).max()),
    )


def primitivity_exponent(A: IntMatrix, limit: int | None = None) -> int | None:
    """Least p <= limit (default dim) with A^p entrywise positive, else None."""
    P = np.array(A.to_lists()) > 0
    limit = limit or A.dim
    cur = P.copy()
    for p in range(1, limit + 1):
        if cur.all():
            return p
        cur = (cur.astype(np.int64) @ P.astype(np.int64)) > 0
    return None


@dataclass(frozen=True)
class TableRow:
    g: int
    n: int
    k: int
    l: int
    max_entry: int
    entry_bound: int
    rho: float
    row_sum_bound: int
    rho_bound: int
    ok: bool


CSV_HEADER = [f.name for f in fields(TableRow)]


def upper_bound_table(g_range: Iterable[int],
                      n_range: Iterable[int] | Callable[[int], Iterable[int]]) -> list[TableRow]:
    """One row per (g, n).  ``n_range`` may depend on g, e.g. ``lambda g: range(12*g + 7)``."""
    rows = []
    for g in g_range:
        ns = n_range(g) if callable(n_range) else n_range
        for n in ns:
            cs = curve_system(g, n)
            rep = penner_matrix(cs)
            rows.append(TableRow(g, n, cs.k, cs.l, rep.max_entry, rep.entry_bound,
                                 rep.rho.estimate, rep.row_sum_bound, rep.rho_bound, rep.ok))
    return rows


def table_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(["true" if x is True else "false" if x is False else x for x in astuple(r)])
    return buf.getvalue()
