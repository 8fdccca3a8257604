import logging
import math
import random

import pytest

from trace_horizon.bounds import SurfaceParams, lefschetz_floor
from trace_horizon.errors import ContractViolation
from trace_horizon.lefschetz import (
    LefschetzCertificate,
    dilatation_lower_from_homology,
    lefschetz_number,
)
from trace_horizon.matrix_core import (
    IntMatrix,
    block_diag,
    char_poly,
    is_symplectic,
    standard_symplectic_form,
)
from trace_horizon.polynomial import power_sums
from trace_horizon.trace_search import SearchFailure, find_nu


def symplectic_transvection(v, J):
    """x -> x + omega(v, x) v, i.e. I + v v^T J."""
    m = len(v)
    rows = [[int(i == j) + v[i] * sum(v[k] * J.rows[k][j] for k in range(m)) for j in range(m)]
            for i in range(m)]
    return IntMatrix.from_rows(rows)


def random_symplectic(g, rng, count=None):
    J = standard_symplectic_form(g)
    A = IntMatrix.identity(2 * g)
    for _ in range(count or rng.randint(1, 6 * g)):
        v = [rng.randint(-1, 1) for _ in range(2 * g)]
        A = symplectic_transvection(v, J) @ A
    return A


def inverse_symplectic(A, J):
    # A^T J A = J gives A^-1 = -J A^T J
    return IntMatrix.from_rows([[-x for x in r] for r in (J @ A.transpose() @ J).rows])


class TestLefschetzNumber:
    def test_examples(self, rotation, J4):
        assert lefschetz_number(IntMatrix.identity(4)) == -2
        assert lefschetz_number(rotation) == 2
        assert lefschetz_number(J4) == 2

    def test_powers_against_power_sums(self):
        rng = random.Random(3)
        for _ in range(15):
            A = random_symplectic(rng.randint(2, 4), rng)
            S = power_sums(char_poly(A), 30)
            P = IntMatrix.identity(A.dim)
            for nu in range(1, 31):
                P = P @ A
                assert lefschetz_number(P) == 2 - S[nu - 1]


class TestPipeline:
    def test_block_example(self, cat_plus_identity):
        cert = dilatation_lower_from_homology(cat_plus_identity, SurfaceParams(2, 1), 0.5)
        assert isinstance(cert, LefschetzCertificate)
        assert (cert.nu, cert.trace, cert.lefschetz) == (1, 5, -3)
        assert cert.dilatation_log_lower == pytest.approx(math.log(9) / 18, abs=1e-12)
        assert cert.dilatation_log_lower == pytest.approx(0.122068, abs=1e-6)

    def test_J(self, J4):
        cert = dilatation_lower_from_homology(J4, SurfaceParams(2, 0), 0.5)
        assert cert.nu == 4 and cert.trace == 4 and cert.lefschetz == -2
        assert [(J4 ** k).trace() for k in range(1, 5)] == [0, -4, 0, 4]
        assert cert.dilatation_log_lower == pytest.approx(math.log(6) / 48, abs=1e-12)
        assert cert.symplectic
        d = cert.to_dict()
        assert d["kind"] == "certificate" and d["chi"] == -2 and "pseudo-Anosov" in d["conditional"]

    def test_genus_one_rejected(self, rotation):
        with pytest.raises(ContractViolation):
            dilatation_lower_from_homology(rotation, SurfaceParams(1, 1), 0.5)

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            dilatation_lower_from_homology(IntMatrix.identity(3), SurfaceParams(2, 0))
        with pytest.raises(ContractViolation):
            dilatation_lower_from_homology(IntMatrix.identity(6), SurfaceParams(2, 0))

    def test_det_gate(self):
        A = IntMatrix.from_rows([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        with pytest.raises(ContractViolation):
            dilatation_lower_from_homology(A, SurfaceParams(2, 0))

    def test_rotation_search_is_periodic(self, rotation):
        res = find_nu(rotation, 2, 0.5)
        assert isinstance(res, SearchFailure) and res.periodic and res.period == 4

    def test_finite_order_certifies_at_its_order(self, rotation):
        # Tr(A^k) = 2g > 2 at the order k, and for g = 2 every order is <= 12
        A = block_diag(rotation, rotation)
        cert = dilatation_lower_from_homology(A, SurfaceParams(2, 0))
        assert (cert.nu, cert.trace) == (4, 4)

    def test_capped_failure_propagates(self, J4, monkeypatch):
        monkeypatch.setenv("TRACE_HORIZON_MAX_NU", "3")
        res = dilatation_lower_from_homology(J4, SurfaceParams(2, 0))
        assert isinstance(res, SearchFailure) and res.horizon == 3
        assert res.periodic and res.period == 4

    def test_non_symplectic_warns(self, caplog):
        A = IntMatrix.from_rows([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
        A = A @ A.transpose()
        assert not is_symplectic(A)
        with caplog.at_level(logging.WARNING):
            cert = dilatation_lower_from_homology(A, SurfaceParams(2, 0))
        assert not cert.symplectic and "symplectic" in caplog.text

    def test_bound_never_exceeds_floor(self):
        rng = random.Random(5)
        for _ in range(30):
            g = rng.randint(2, 4)
            p = SurfaceParams(g, rng.randint(0, 5))
            res = dilatation_lower_from_homology(random_symplectic(g, rng), p)
            if isinstance(res, LefschetzCertificate):
                assert 0 < res.dilatation_log_lower <= lefschetz_floor(p)
                assert res.dilatation_log_lower == lefschetz_floor(p) / res.nu
                assert res.lefschetz == 2 - res.trace < 0


def test_symplectic_trace_of_inverse():
    rng = random.Random(7)
    for _ in range(40):
        g = rng.randint(1, 5)
        J = standard_symplectic_form(g)
        A = random_symplectic(g, rng)
        assert is_symplectic(A)
        Ainv = inverse_symplectic(A, J)
        assert A @ Ainv == IntMatrix.identity(2 * g)
        assert A.trace() == Ainv.trace()
