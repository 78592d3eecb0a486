"""Monomial calculus on the two charts attached to an A2 surface singularity.

The singularity `xz = y^3` is uniformized by a two-variable smoothing chart
(coordinates z1, z2) carrying a cyclic weight-(1,2) action of order three, and
resolved by a chart with coordinates u1, u2 where u1 = z1^2/z2 and
u2 = z2^2/z1.  A monomial differential

    z1^i1 * z2^i2 * dz1^m1 * dz2^m2

is recorded by its exponent 4-tuple ("f-type"); order i = i1+i2 and degree
m = m1+m2 are derived.  Negative coordinate exponents are first-class since
pulling back along u -> z produces meromorphic terms; holomorphy is a
predicate, never a type constraint.

Invariant monomials of a fixed type (i, m) split into finite blocks indexed by
k = i1 + m1, and the u -> z pullback acts block-by-block through an integer
coefficient matrix.  All list-valued operations enumerate by l ascending so
results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .linalg import RationalMatrix


class Frame(Enum):
    """Which coordinate chart an f-type lives in."""

    Z = "z"
    U = "u"


class InvalidBlockError(ValueError):
    """Block index violates the congruence k = -(m+i) mod 3."""


@dataclass(frozen=True)
class FType:
    """Exponent 4-tuple of a (possibly meromorphic) monomial differential."""

    i1: int
    i2: int
    m1: int
    m2: int
    frame: Frame = Frame.Z

    def __post_init__(self):
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("differential exponents m1, m2 must be non-negative")

    @property
    def order(self) -> int:
        return self.i1 + self.i2

    @property
    def degree(self) -> int:
        return self.m1 + self.m2

    @property
    def is_holomorphic(self) -> bool:
        return self.i1 >= 0 and self.i2 >= 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i1, self.i2, self.m1, self.m2)


@dataclass(frozen=True)
class Weight:
    """Residue class of a z-monomial under the order-3 chart action."""

    residue: int

    def __post_init__(self):
        if self.residue not in (0, 1, 2):
            raise ValueError("residue must lie in {0, 1, 2}")

    @property
    def invariant(self) -> bool:
        return self.residue == 0


@dataclass(frozen=True)
class BlockIndex:
    """Index (k, i, m) of one monomial collection of type (i, m).

    Valid blocks satisfy k = -(m+i) mod 3; indices outside that congruence
    class are rejected by the block operations.  k may lie outside [0, m+i]
    (such blocks simply contain no holomorphic member).
    """

    k: int
    i: int
    m: int

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("order i must be non-negative")
        if self.m < 1:
            raise ValueError("degree m must be positive")

    @property
    def congruent(self) -> bool:
        return (self.k + self.m + self.i) % 3 == 0

    def require_valid(self) -> None:
        if not self.congruent:
            raise InvalidBlockError(
                f"block (k={self.k}, i={self.i}, m={self.m}) violates "
                f"k = -(m+i) mod 3"
            )

    @property
    def k_u(self) -> int:
        """Companion index for the u-chart block, (i+m+k)/3."""
        self.require_valid()
        return (self.i + self.m + self.k) // 3


def weight(f: FType) -> Weight:
    """Weight of a z-monomial under the order-3 action; residue 0 = invariant."""
    if f.frame is not Frame.Z:
        raise ValueError("weights are defined on the smoothing chart (z-frame)")
    return Weight((f.i1 + 2 * f.i2 + f.m1 + 2 * f.m2) % 3)


def block_z(b: BlockIndex) -> list[FType]:
    """The m+1 z-monomials of block (k, i, m), ordered by l ascending.

    Element l is (k-m+l, i+m-k-l, m-l, l); each has order i, degree m and
    weight 0.
    """
    b.require_valid()
    k, i, m = b.k, b.i, b.m
    return [FType(k - m + l, i + m - k - l, m - l, l, Frame.Z) for l in range(m + 1)]


def block_u(b: BlockIndex) -> list[FType]:
    """The m+1 u-monomials whose pullbacks land in block (k, i, m)."""
    b.require_valid()
    kp, i, m = b.k_u, b.i, b.m
    return [FType(kp - m + l, i + m - kp - l, m - l, l, Frame.U) for l in range(m + 1)]


def h_z(b: BlockIndex) -> int:
    """Count of holomorphic members of block_z(b).

    Zero whenever k lies outside [0, m+i]; otherwise
    min(m+1, k+1, i+1, m-k+i+1).
    """
    b.require_valid()
    k, i, m = b.k, b.i, b.m
    if k < 0 or k > m + i:
        return 0
    return min(m + 1, k + 1, i + 1, m - k + i + 1)


def h_u(b: BlockIndex) -> int:
    """Count of holomorphic members of block_u(b), for 0 <= k <= m+i."""
    b.require_valid()
    k, i, m = b.k, b.i, b.m
    if not 0 <= k <= m + i:
        raise ValueError(f"k={k} outside [0, {m + i}]")
    return min(m + 1, (k + i + m) // 3 + 1, i + 1, (2 * (i + m) - k) // 3 + 1)


def _form_times(coeffs: list[int], a: int, b: int) -> list[int]:
    # Multiply a homogeneous binary form (coefficient list by y-power) by a*x + b*y.
    out = [0] * (len(coeffs) + 1)
    for l, c in enumerate(coeffs):
        out[l] += c * a
        out[l + 1] += c * b
    return out


def coeff_row(m: int, q: int) -> list[int]:
    """Coefficients c_q0..c_qm of (2x-y)^q (-x+2y)^(m-q) by ascending y-power."""
    if m < 1:
        raise ValueError("degree m must be positive")
    if not 0 <= q <= m:
        raise ValueError(f"q={q} outside [0, {m}]")
    row = [1]
    for _ in range(q):
        row = _form_times(row, 2, -1)
    for _ in range(m - q):
        row = _form_times(row, -1, 2)
    return row


def pullback_coeffs(m: int) -> RationalMatrix:
    """The (m+1)x(m+1) integer matrix [c_ql] governing degree-m pullbacks."""
    return RationalMatrix([coeff_row(m, q) for q in range(m + 1)])


def pullback_monomial(f: FType) -> list[tuple[int, FType]]:
    """Expand the pullback of a u-monomial differential along the chart map.

    For f = (p, i-p, q, m-q) in the u-frame the result is the m+1 terms

        sum_l c_ql * (3(p+q) - (i+2m) + l, -3(p+q) + 2(i+m) - l, m-l, l)_z

    every term of which has order i, degree m and weight 0.  Degree-0 inputs
    (functions rather than differentials) are rejected.
    """
    if f.frame is not Frame.U:
        raise ValueError("pullback applies to u-frame monomials")
    m = f.degree
    if m < 1:
        raise ValueError("degree-0 input: pullback of plain functions is unsupported")
    i = f.order
    p, q = f.i1, f.m1
    row = coeff_row(m, q)
    s = 3 * (p + q)
    terms = []
    for l in range(m + 1):
        z = FType(s - (i + 2 * m) + l, -s + 2 * (i + m) - l, m - l, l, Frame.Z)
        terms.append((row[l], z))
    return terms
