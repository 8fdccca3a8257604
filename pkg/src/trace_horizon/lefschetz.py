"""From a homology action to a dilatation lower bound via negative Lefschetz numbers.

The input matrix is taken to be the action on H_1 of the closed surface
obtained by forgetting punctures; punctures only enter through chi.  Nothing
here checks that the matrix is realised by a pseudo-Anosov map, so every
bound is conditional on that.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .bounds import SurfaceParams, lefschetz_floor
from .errors import ContractViolation
from .matrix_core import IntMatrix, det, is_symplectic
from .trace_search import NuCertificate, SearchFailure, find_nu

log = logging.getLogger(__name__)

LEFSCHETZ_B = 2


@dataclass(frozen=True)
class LefschetzCertificate:
    nu: int
    trace: int
    lefschetz: int
    dilatation_log_lower: float
    surface: SurfaceParams
    symplectic: bool
    search: NuCertificate

    def to_dict(self) -> dict:
        return {
            "kind": "certificate",
            "nu": self.nu,
            "trace": self.trace,
            "lefschetz": self.lefschetz,
            "dilatation_log_lower": self.dilatation_log_lower,
            "g": self.surface.g,
            "n": self.surface.n,
            "chi": self.surface.chi,
            "symplectic": self.symplectic,
            "horizon": self.search.horizon,
            "conditional": "valid only if the matrix is the homology action of a pseudo-Anosov map",
        }


def lefschetz_number(A: IntMatrix) -> int:
    """L = 2 - Tr(A) for a surface map acting on H_1 by A."""
    return 2 - A.trace()


def dilatation_lower_from_homology(A: IntMatrix, p: SurfaceParams, eps: float = 0.5):
    """Lower bound on log(dilatation) from the first power with negative Lefschetz number.

    Returns a LefschetzCertificate, or the SearchFailure from the trace scan.
    """
    if p.g < 2:
        raise ContractViolation(f"bounds need g >= 2, got g = {p.g}")
    if A.dim != 2 * p.g:
        raise ContractViolation(f"matrix dimension {A.dim} != 2g = {2 * p.g}")
    if det(A) != 1:
        raise ContractViolation("homology action must have determinant 1")
    symplectic = is_symplectic(A)
    if not symplectic:
        log.warning("matrix does not preserve the standard symplectic form; "
                    "it cannot be a surface homology action in this basis")
    result = find_nu(A, LEFSCHETZ_B, eps)
    if isinstance(result, SearchFailure):
        return result
    L = 2 - result.trace
    assert L < 0
    return LefschetzCertificate(
        nu=result.nu,
        trace=result.trace,
        lefschetz=L,
        dilatation_log_lower=lefschetz_floor(p) / result.nu,
        surface=p,
        symplectic=symplectic,
        search=result,
    )
