"""Per-block defect dimensions, the quotient-dimension sum Q(m), cubic
leading-coefficient extraction, a floating-point integral cross-check, and the
exact germ invariants s2(x, X), h0(x), h1(x) of A_n surface singularities.

Two independent routes compute the per-block intersection dimension: a closed
form in the holomorphic counts, and a rank oracle that assembles the actual
pullback matrix and intersects its row span with a coordinate subspace.  The
closed form is the production path; the oracle exists to validate it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .linalg import RationalMatrix, intersect_rowspan_coords
from .monomials import BlockIndex, block_u, block_z, h_u, h_z, pullback_monomial

#: Exact cubic-growth constants for the quotient dimension of A_n germs, for
#: the n where they are known.  Larger n is out of scope here.
KNOWN_H0 = {1: Fraction(11, 108), 2: Fraction(29, 216)}


class UnsupportedSingularityError(ValueError):
    """Raised for A_n germs whose h0 constant is not available (n >= 3)."""


@dataclass(frozen=True)
class SingularityClass:
    """Germ data of an A_n surface singularity.

    The exceptional locus of the minimal resolution is a chain of n rational
    (-2)-curves, so its Euler number is n+1; the local fundamental group is
    cyclic of order n+1.
    """

    n: int
    euler_exceptional: int
    group_order: int
    h0: Fraction | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("A_n requires n >= 1")
        if self.euler_exceptional != self.n + 1:
            raise ValueError("exceptional Euler number of A_n must be n+1")
        if self.group_order != self.n + 1:
            raise ValueError("local group order of A_n must be n+1")


def a_n(n: int) -> SingularityClass:
    """The A_n singularity class, with h0 filled in when known (n in {1, 2})."""
    return SingularityClass(n, n + 1, n + 1, KNOWN_H0.get(n))


class QMethod(Enum):
    """Which route computed a Q(m) value."""

    CLOSED_FORM = "closed"
    RANK_ORACLE = "oracle"


@dataclass(frozen=True)
class QSample:
    """One exact value of the quotient-dimension sum Q(m)."""

    m: int
    q: int
    method: QMethod

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("Q(m) is a dimension count, must be >= 0")


def _require_in_range(b: BlockIndex) -> None:
    b.require_valid()
    if not 0 <= b.k <= b.m + b.i:
        raise ValueError(f"k={b.k} outside [0, {b.m + b.i}]")


def dim_g_closed(b: BlockIndex) -> int:
    """Closed form for the block intersection dimension:
    max(h_z + h_u - (m+1), 0)."""
    _require_in_range(b)
    return max(h_z(b) + h_u(b) - (b.m + 1), 0)


def dim_g_oracle(b: BlockIndex, fault: tuple[int, int] | None = None) -> int:
    """Rank-oracle route to the block intersection dimension.

    Assembles the (m+1)-column matrix whose rows are the pullback expansions
    of the holomorphic u-members of the block (over the z-block basis), then
    intersects its row span with the span of the holomorphic z-coordinates.

    `fault` is a verification test hook: flipping the sign of coefficient
    (q, l) in the assembled rows lets a self-check demonstrate that it would
    catch a wrong coefficient matrix.  Production callers leave it None.
    """
    _require_in_range(b)
    zs = block_z(b)
    us = block_u(b)
    z_pos = {f.as_tuple(): l for l, f in enumerate(zs)}
    holo_cols = [l for l, f in enumerate(zs) if f.is_holomorphic]

    rows = []
    row_q = []
    for lu, uf in enumerate(us):
        if not uf.is_holomorphic:
            continue
        vec = [0] * (b.m + 1)
        for coeff, zf in pullback_monomial(uf):
            lz = z_pos.get(zf.as_tuple())
            if lz is None:
                raise RuntimeError(f"pullback term {zf} escaped block {b}")
            vec[lz] += coeff
        rows.append(vec)
        row_q.append(b.m - lu)

    if fault is not None:
        fq, fl = fault
        for r, q in enumerate(row_q):
            if q == fq and 0 <= fl <= b.m:
                rows[r][fl] = -rows[r][fl]

    matrix = RationalMatrix(rows)
    return intersect_rowspan_coords(matrix, holo_cols)


def block_defect(b: BlockIndex) -> int:
    """Defect of one block: min(m+1 - h_u, h_z), equal to h_z - dim_g_closed."""
    _require_in_range(b)
    return min(b.m + 1 - h_u(b), h_z(b))


def valid_blocks(m: int, i_max: int | None = None) -> Iterator[BlockIndex]:
    """All blocks entering the degree-m sum: i = 0..i_max (default 2m),
    k in [0, m+i] in the admissible congruence class."""
    if m < 1:
        raise ValueError("degree m must be positive")
    if i_max is None:
        i_max = 2 * m
    for i in range(i_max + 1):
        k0 = (-(m + i)) % 3
        for k in range(k0, m + i + 1, 3):
            yield BlockIndex(k, i, m)


def q_of_m(
    m: int,
    method: QMethod = QMethod.CLOSED_FORM,
    i_max: int | None = None,
) -> QSample:
    """The quotient-dimension sum Q(m) over all valid blocks of degree m.

    Summation order does not affect the integer result; the two methods must
    agree (the rank-oracle route is intended for small m only).
    """
    total = 0
    for b in valid_blocks(m, i_max):
        if method is QMethod.CLOSED_FORM:
            total += block_defect(b)
        else:
            total += h_z(b) - dim_g_oracle(b)
    return QSample(m, total, method)


def leading_coeff(samples: Sequence[QSample], m0: int) -> Fraction:
    """Cubic leading coefficient of Q by step-3 finite differences at m0.

    Needs Q(m0), Q(m0+3), Q(m0+6), Q(m0+9) from one method; returns
    (Q(m0+9) - 3 Q(m0+6) + 3 Q(m0+3) - Q(m0)) / 162.
    """
    wanted = (m0, m0 + 3, m0 + 6, m0 + 9)
    by_method: dict[QMethod, dict[int, int]] = {}
    for s in samples:
        by_method.setdefault(s.method, {})[s.m] = s.q
    for method in sorted(by_method, key=lambda t: t.value):
        values = by_method[method]
        if all(mm in values for mm in wanted):
            q0, q1, q2, q3 = (values[mm] for mm in wanted)
            return Fraction(q3 - 3 * q2 + 3 * q1 - q0, 162)
    have = sorted({s.m for s in samples if s.m in wanted})
    raise ValueError(
        f"need Q(m) for m in {wanted} from a single method; have {have}"
    )


def limit_integral(samples_per_axis: int) -> float:
    """Midpoint-rule estimate of the continuum limit of Q(m)/m^3.

    Integrates the normalized block-defect density

        min(1 - min(1, (x+y+1)/3, x, (2x+2-y)/3), min(1, y, x, 1+x-y))

    over 0 <= x <= 2, 0 <= y <= 1+x, weighted by the 1/3 density of
    admissible k.  The integrand is piecewise linear, so the midpoint rule
    converges without smoothness caveats.
    """
    if samples_per_axis < 100:
        raise ValueError("samples_per_axis must be at least 100")
    n = samples_per_axis
    xs = (np.arange(n) + 0.5) * (2.0 / n)
    total = 0.0
    for x in xs:
        width = 1.0 + x
        ys = (np.arange(n) + 0.5) * (width / n)
        hu = np.minimum(
            np.minimum(1.0, (x + ys + 1.0) / 3.0),
            np.minimum(x, (2.0 * x + 2.0 - ys) / 3.0),
        )
        hz = np.minimum(np.minimum(1.0, ys), np.minimum(x, 1.0 + x - ys))
        density = np.minimum(1.0 - hu, hz)
        total += float(density.sum()) * (width / n)
    return total * (2.0 / n) / 3.0


def s2_local(s: SingularityClass) -> Fraction:
    """Local second Segre number of the germ: -(e(E) - 1/|G|)."""
    return -Fraction(s.euler_exceptional) + Fraction(1, s.group_order)


def h1_of(s: SingularityClass) -> Fraction:
    """Exact h1(x) = -s2(x, X)/3! - h0(x); needs a known h0 (n in {1, 2})."""
    if s.h0 is None:
        raise UnsupportedSingularityError(
            f"h0 for A_{s.n} is not available; only n in {{1, 2}} is supported"
        )
    return -s2_local(s) / 6 - s.h0


# ---------------------------------------------------------------------------
# Q-sweep cache: append-only CSV with header `m,q,method`, exact integers.

CACHE_FIELDS = ("m", "q", "method")


def load_q_cache(path: str | Path) -> dict[tuple[int, QMethod], int]:
    """Read a Q-sweep CSV; conflicting duplicate keys are corruption."""
    path = Path(path)
    if not path.exists():
        return {}
    cache: dict[tuple[int, QMethod], int] = {}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CACHE_FIELDS:
            raise ValueError(
                f"{path}: expected CSV header {','.join(CACHE_FIELDS)}"
            )
        for row in reader:
            key = (int(row["m"]), QMethod(row["method"]))
            q = int(row["q"])
            if key in cache and cache[key] != q:
                raise ValueError(
                    f"{path}: conflicting values for m={key[0]} "
                    f"method={key[1].value}: {cache[key]} vs {q}"
                )
            cache[key] = q
    return cache


def append_q_cache(path: str | Path, samples: Iterable[QSample]) -> None:
    """Append samples not already cached; validates existing entries first."""
    path = Path(path)
    cache = load_q_cache(path)
    fresh = []
    for s in samples:
        key = (s.m, s.method)
        if key in cache:
            if cache[key] != s.q:
                raise ValueError(
                    f"{path}: cached Q({s.m})={cache[key]} disagrees with "
                    f"recomputed {s.q} ({s.method.value})"
                )
            continue
        fresh.append(s)
        cache[key] = s.q
    if not fresh:
        return
    new_file = not path.exists()
    with path.open("a", newline="") as fh:
        writer = csv.writer(fh)
        if new_file:
            writer.writerow(CACHE_FIELDS)
        for s in fresh:
            writer.writerow((s.m, s.q, s.method.value))
