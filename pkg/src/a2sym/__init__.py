"""Exact local invariants of A_n surface singularities (monomial counting on
the A2 charts, validated by an exact rank oracle) and big-cotangent-bundle
degree thresholds for hypersurfaces in P^3."""

from .criterion import (
    DegreeReport,
    HypersurfaceBudget,
    Verdict,
    degree_report,
    labs_count_a2,
    load_counts_csv,
    required_segre,
    required_thm1,
    s2_smooth_hypersurface,
)
from .invariants import (
    KNOWN_H0,
    QMethod,
    QSample,
    SingularityClass,
    UnsupportedSingularityError,
    a_n,
    append_q_cache,
    block_defect,
    dim_g_closed,
    dim_g_oracle,
    h1_of,
    leading_coeff,
    limit_integral,
    load_q_cache,
    q_of_m,
    s2_local,
    valid_blocks,
)
from .linalg import RationalMatrix, intersect_rowspan_coords, rank
from .monomials import (
    BlockIndex,
    Frame,
    FType,
    InvalidBlockError,
    Weight,
    block_u,
    block_z,
    h_u,
    h_z,
    pullback_coeffs,
    pullback_monomial,
    weight,
)

__version__ = "0.1.0"

__all__ = [
    "BlockIndex",
    "DegreeReport",
    "FType",
    "Frame",
    "HypersurfaceBudget",
    "InvalidBlockError",
    "KNOWN_H0",
    "QMethod",
    "QSample",
    "RationalMatrix",
    "SingularityClass",
    "UnsupportedSingularityError",
    "Verdict",
    "Weight",
    "a_n",
    "append_q_cache",
    "block_defect",
    "block_u",
    "block_z",
    "degree_report",
    "dim_g_closed",
    "dim_g_oracle",
    "h1_of",
    "h_u",
    "h_z",
    "intersect_rowspan_coords",
    "labs_count_a2",
    "leading_coeff",
    "limit_integral",
    "load_counts_csv",
    "load_q_cache",
    "pullback_coeffs",
    "pullback_monomial",
    "q_of_m",
    "rank",
    "required_segre",
    "required_thm1",
    "s2_local",
    "s2_smooth_hypersurface",
    "valid_blocks",
    "weight",
]
