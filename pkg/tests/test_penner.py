import numpy as np
import pytest

from trace_horizon.errors import ContractViolation
from trace_horizon.matrix_core import IntMatrix
from trace_horizon.penner import (
    CSV_HEADER,
    curve_system,
    entry_bound,
    penner_matrix,
    primitivity_exponent,
    rho_bound,
    same_color_commute,
    table_csv,
    twist_matrix,
    upper_bound_table,
)


def exact_product(cs):
    A = IntMatrix.identity(cs.size)
    for c in list(cs.red) + list(cs.blue):
        A = A @ twist_matrix(cs, c)
    return A


class TestCurveSystem:
    def test_figure_counts(self):
        cs = curve_system(4, 3)
        assert (cs.k, cs.l) == (5, 6)
        assert [cs.label(i) for i in range(cs.size)][::5] == ["a1", "b1", "b6"]

    def test_g2_n0(self):
        cs = curve_system(2, 0)
        assert (cs.k, cs.l) == (3, 1)

    def test_g2_n1(self):
        cs = curve_system(2, 1)
        assert (cs.k, cs.l) == (3, 2)
        for b in cs.blue:
            assert sum(cs.intersections[b][a] for a in cs.red) == 2

    @pytest.mark.parametrize("g,n", [(2, 0), (3, 5), (6, 0), (5, 40)])
    def test_invariants(self, g, n):
        cs = curve_system(g, n)
        I = np.array(cs.intersections)
        assert (I == I.T).all() and (I >= 0).all()
        assert cs.is_bipartite() and cs.is_connected()

    def test_domain(self):
        with pytest.raises(ContractViolation):
            curve_system(1, 3)
        with pytest.raises(ContractViolation):
            curve_system(2, -1)


class TestMatrix:
    def test_g2_n0(self):
        rep = penner_matrix(curve_system(2, 0))
        assert rep.max_entry <= 7 and rep.rho_bound == 34 * 94 == 3196
        assert rep.rho.upper <= 28 and rep.ok

    def test_g4_n3(self):
        rep = penner_matrix(curve_system(4, 3))
        assert rep.entry_bound == 13 and rep.max_entry <= 13
        assert rep.rho.upper <= 143 and rep.row_sum_bound <= 143

    @pytest.mark.parametrize("g,n", [(2, 0), (2, 3), (3, 1), (4, 3), (5, 10)])
    def test_fast_path_matches_exact(self, g, n):
        cs = curve_system(g, n)
        assert penner_matrix(cs).matrix == exact_product(cs)

    def test_commutation(self):
        cs = curve_system(3, 2)
        a1, a2 = twist_matrix(cs, 0), twist_matrix(cs, 1)
        assert a1 @ a2 == a2 @ a1
        for g, n in [(2, 0), (3, 4), (5, 2)]:
            assert same_color_commute(curve_system(g, n))

    def test_different_colours_do_not_commute(self):
        cs = curve_system(2, 1)
        a, b = twist_matrix(cs, 0), twist_matrix(cs, cs.k)
        assert a @ b != b @ a

    def test_rho_against_eigvals(self):
        for g, n in [(2, 0), (3, 3), (6, 20)]:
            rep = penner_matrix(curve_system(g, n))
            X = np.array(rep.matrix.to_lists(), dtype=float)
            rho = max(abs(np.linalg.eigvals(X)))
            assert rep.rho.lower - 1e-9 <= rho <= rep.rho.upper + 1e-9
            assert rep.rho.estimate >= 1

    @pytest.mark.parametrize("g", [2, 3, 5, 10])
    def test_grid_properties(self, g):
        Id = None
        for n in range(0, 12 * g + 7, 3):
            cs = curve_system(g, n)
            rep = penner_matrix(cs)
            X = np.array(rep.matrix.to_lists(), dtype=object)
            Id = np.eye(cs.size, dtype=int)
            assert (X >= Id).all()
            p = primitivity_exponent(rep.matrix, cs.size)
            assert p is not None and p <= cs.size
            assert rep.max_entry <= entry_bound(n)
            assert rep.rho.upper <= rep.max_row_sum <= rep.row_sum_bound <= rho_bound(g)


class TestTable:
    def test_rows_and_csv(self):
        rows = upper_bound_table(range(2, 5), range(0, 6))
        assert len(rows) == 18 and all(r.ok for r in rows)
        text = table_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "g,n,k,l,max_entry,entry_bound,rho,row_sum_bound,rho_bound,ok"
        assert lines[0].split(",") == CSV_HEADER
        assert len(lines) == 19 and all(l.endswith(",true") for l in lines[1:])

    def test_empty(self):
        assert table_csv(upper_bound_table(range(2, 2), range(0, 3))).strip() == ",".join(CSV_HEADER)

    def test_callable_n_range(self):
        rows = upper_bound_table([2], lambda g: range(12 * g + 7))
        assert len(rows) == 31
