"""Closed-form bounds on l_{g,n}, the log of the minimal pseudo-Anosov dilatation.

All logarithms are natural.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from .errors import ContractViolation


@dataclass(frozen=True)
class SurfaceParams:
    g: int
    n: int = 0

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ContractViolation("genus and puncture count must be nonnegative")
        if self.chi >= 0:
            raise ContractViolation(f"chi = {self.chi} >= 0; every bound needs chi < 0")

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g - self.n

    @property
    def abs_chi(self) -> int:
        return -self.chi


def _require_genus(p: SurfaceParams, least: int = 2):
    if p.g < least:
        raise ContractViolation(f"formula needs g >= {least}, got g = {p.g}")


def penner_lower(p: SurfaceParams) -> float:
    """log 2 / (12g - 12 + 4n)."""
    _require_genus(p)
    denom = 12 * p.g - 12 + 4 * p.n
    if denom <= 0:
        raise ContractViolation("denominator 12g - 12 + 4n must be positive")
    return math.log(2) / denom


def theta(g: int) -> int:
    """|Sp(2g, F_3)| = 3^(g^2) prod_{i=1..g} (3^(2i) - 1), exactly."""
    if g < 1:
        raise ContractViolation("theta needs g >= 1")
    out = 3 ** (g * g)
    for i in range(1, g + 1):
        out *= 3 ** (2 * i) - 1
    return out


class TsaiLower(NamedTuple):
    value: float
    branch: str  # "genus" for log2/(12g-12), "euler" for log(3|chi|)/(6|chi|)


def _over_theta(x: float, g: int) -> float:
    # theta(g) overflows a float past g ~ 17; divide in log space
    return math.exp(math.log(x) - math.log(theta(g)))


def tsai_lower(p: SurfaceParams) -> TsaiLower:
    _require_genus(p)
    x = p.abs_chi
    genus_term = math.log(2) / (12 * p.g - 12)
    euler_term = math.log(3 * x) / (6 * x)
    if genus_term <= euler_term:
        return TsaiLower(_over_theta(genus_term, p.g), "genus")
    return TsaiLower(_over_theta(euler_term, p.g), "euler")


def lefschetz_floor(p) -> float:
    """log(3|chi|) / (6|chi|); accepts SurfaceParams or chi itself."""
    chi = p.chi if isinstance(p, SurfaceParams) else int(p)
    if chi >= 0:
        raise ContractViolation("lefschetz_floor needs chi < 0")
    x = -chi
    return math.log(3 * x) / (6 * x)


def main_lower(p: SurfaceParams, alpha: float, C: float) -> float:
    """C / g^(2+alpha) * log|chi| / |chi|."""
    _require_genus(p)
    if alpha <= 0 or C < 0:
        raise ContractViolation("alpha must be positive and C nonnegative")
    x = p.abs_chi
    return C / p.g ** (2 + alpha) * math.log(x) / x


class Constants(NamedTuple):
    C_prime: float
    C: float
    table: list  # [(j, c_j)] for j = 1..N-1


def constant_assembly(alpha: float, N: int) -> Constants:
    """c_j = j^(2+alpha) / 8^(2j), C' = min(c_1..c_{N-1}, 2^-(2+alpha)), C = C'/6.

    N is the genus threshold beyond which the polynomial horizon applies;
    it is an input here because nobody has computed it.
    """
    if alpha <= 0:
        raise ContractViolation("alpha must be positive")
    if N < 2:
        raise ContractViolation("N must be >= 2")
    table = [(j, math.exp((2 + alpha) * math.log(j) - 2 * j * math.log(8))) for j in range(1, N)]
    C_prime = min([c for _, c in table] + [2.0 ** -(2 + alpha)])
    return Constants(C_prime, C_prime / 6, table)


def tsai_upper(p: SurfaceParams, C_upper: float) -> float:
    """C_upper * g * log|chi| / |chi|."""
    _require_genus(p)
    x = p.abs_chi
    return C_upper * p.g * math.log(x) / x


def conjectural_lower(p: SurfaceParams, C: float) -> float:
    """(C/g) log|chi|/|chi|. CONJECTURAL: reported, never asserted."""
    _require_genus(p)
    x = p.abs_chi
    return C / p.g * math.log(x) / x


@dataclass(frozen=True)
class BoundReport:
    g: int
    n: int
    chi: int
    alpha: float
    N: int
    C: float
    C_source: str
    C_upper: float
    penner_lower: float
    tsai_lower: float
    tsai_branch: str
    main_lower: float
    lefschetz_floor: float
    tsai_upper: float
    conjectural_lower: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = "bounds"
        d["labels"] = {
            "C_upper": "placeholder: the upper bound constant exists but is not computed",
            "conjectural_lower": "conjecture, not a theorem",
            "main_lower": "C from constant_assembly is only valid if N is the true genus threshold"
            if self.C_source == "constant_assembly" else "C supplied by caller",
        }
        return d


def bound_report(p: SurfaceParams, alpha: float = 1.0, C: float | None = None,
                 N: int = 2, C_upper: float = 1.0) -> BoundReport:
    source = "caller"
    if C is None:
        C = constant_assembly(alpha, N).C
        source = "constant_assembly"
    tl = tsai_lower(p)
    return BoundReport(
        g=p.g, n=p.n, chi=p.chi, alpha=alpha, N=N, C=C, C_source=source, C_upper=C_upper,
        penner_lower=penner_lower(p),
        tsai_lower=tl.value,
        tsai_branch=tl.branch,
        main_lower=main_lower(p, alpha, C),
        lefschetz_floor=lefschetz_floor(p),
        tsai_upper=tsai_upper(p, C_upper),
        conjectural_lower=conjectural_lower(p, C),
    )
