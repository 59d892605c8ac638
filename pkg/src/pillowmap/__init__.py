"""Exact combinatorics of torus-quotient maps on the square pillow.

Computes cell decompositions, joining numbers D_n, the combinatorial
expansion factor, orbifold signatures, finite-level visual metrics, and
the conformal-quotient classification, all in exact arithmetic.
"""

from .classify import ClassificationVerdict, lattes_verdict
from .errors import BudgetExceededError, CapExceededError
from .exact import (
    AlgebraicModulus,
    IntMat2,
    RatMat2,
    Rational,
    eig_min_modulus,
    hnf_residue,
    inv_pow,
    linf_norm,
    mat_pow,
    rotation_order,
)
from .expansion import (
    DnReport,
    Lambda0Report,
    MengerReport,
    dn_bounds,
    dn_folded,
    dn_planar,
    dn_report,
    lambda0_estimate,
    menger_verify,
)
from .metrics import (
    DnMetricValue,
    VisualReport,
    default_sample_pairs,
    dn_metric,
    m_index,
    m_prime_index,
    visual_report,
)
from .orbifold import (
    INFINITY,
    OrbifoldData,
    Portrait,
    classify_orbifold,
    euler_char,
    has_periodic_critical,
    nu_minimal,
)
from .pillow import (
    CellDecomposition,
    LattesTypeMap,
    PillowPoint,
    TileIndex,
    canonical_tile,
    cell_counts,
    chain_adjacent,
    edge_adjacent,
    make_map,
    tiles,
    tiles_containing,
    zero_edge_tiles,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicModulus",
    "BudgetExceededError",
    "CapExceededError",
    "CellDecomposition",
    "ClassificationVerdict",
    "DnMetricValue",
    "DnReport",
    "INFINITY",
    "IntMat2",
    "Lambda0Report",
    "LattesTypeMap",
    "MengerReport",
    "OrbifoldData",
    "PillowPoint",
    "Portrait",
    "RatMat2",
    "Rational",
    "TileIndex",
    "VisualReport",
    "canonical_tile",
    "cell_counts",
    "chain_adjacent",
    "classify_orbifold",
    "default_sample_pairs",
    "dn_bounds",
    "dn_folded",
    "dn_metric",
    "dn_planar",
    "dn_report",
    "edge_adjacent",
    "eig_min_modulus",
    "euler_char",
    "has_periodic_critical",
    "hnf_residue",
    "inv_pow",
    "lambda0_estimate",
    "lattes_verdict",
    "linf_norm",
    "m_index",
    "m_prime_index",
    "make_map",
    "mat_pow",
    "menger_verify",
    "nu_minimal",
    "rotation_order",
    "tiles",
    "tiles_containing",
    "visual_report",
    "zero_edge_tiles",
]
