"""Deciding whether a pillow map is conjugate to a conformal quotient.

The verdict rests on an exact algebraic test: the joining numbers D_n
keep pace with degree**(n/2) exactly when the matrix has a complex
eigenvalue pair (negative discriminant) or is a scalar multiple of the
identity; those are the matrices whose inverse-power norms stay within
a constant of det**(-n/2).  A window of computed D_n ratios is attached
as a consistency witness, never as the decider: no finite computation
can certify the asymptotic inequality by itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FRONTIER_BUDGET
from .expansion import dn_planar
from .pillow import LattesTypeMap

LATTES = "lattes"
NON_LATTES = "lattes_type_non_lattes"

_RATIO_SLACK = 1e-9


@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: str
    algebraic_evidence: str  # "disc < 0" | "scalar matrix" | "neither"
    empirical_evidence: tuple[tuple[int, float], ...]  # (n, D_n / deg**(n/2))
    consistent: bool


def lattes_verdict(map: LattesTypeMap, n_max: int = 8, *,
                   frontier_budget: int = FRONTIER_BUDGET) -> ClassificationVerdict:
    """Classify the map and cross-check against the D_n growth window.

    A non-scalar matrix with a repeated real eigenvalue is classified
    on the non-conformal side: its inverse-power norms pick up a factor
    linear in n, so the D_n ratios decay.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    m = map.matrix
    disc = m.trace() ** 2 - 4 * m.det()
    if disc < 0:
        evidence = "disc < 0"
    elif m.b == 0 and m.c == 0 and m.a == m.d:
        evidence = "scalar matrix"
    else:
        evidence = "neither"
    verdict = LATTES if evidence != "neither" else NON_LATTES

    ratios = []
    sqrt_deg = math.sqrt(map.degree)
    for n in range(1, n_max + 1):
        dn = dn_planar(map, n, frontier_budget=frontier_budget)
        ratios.append((n, dn / sqrt_deg**n))
    if verdict == LATTES:
        consistent = all(r >= 0.5 - _RATIO_SLACK for _, r in ratios)
    else:
        consistent = all(
            ratios[k + 1][1] <= ratios[k][1] + _RATIO_SLACK
            for k in range(len(ratios) - 1)
        )
    return ClassificationVerdict(verdict, evidence, tuple(ratios), consistent)
