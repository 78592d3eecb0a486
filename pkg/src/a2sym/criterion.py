"""Degree-by-degree bigness verdicts for resolutions of singular hypersurfaces
in P^3.

For a degree-d hypersurface whose only singularities are l germs of one A_n
class, the minimal resolution is deformation equivalent to a smooth degree-d
hypersurface, whose second Segre number is -4d^2 + 10d.  Two sufficient
criteria for big cotangent bundle are compared: the h1-based inequality
l * h1(x) > (4d^2 - 10d)/6, and the Segre-sum inequality
l * (-s2(x, X)/2) > 4d^2 - 10d.  All threshold arithmetic is exact; d = 9
passes the first criterion by a margin of about 0.27, so floating point is
never allowed near a verdict.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor
from pathlib import Path
from typing import Mapping

from .invariants import SingularityClass, h1_of, s2_local


class Verdict(Enum):
    BIG = "big"
    BOUNDARY = "boundary"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HypersurfaceBudget:
    """Degree-d hypersurface data: singularity class, constructible count,
    and the Segre number of the resolution."""

    d: int
    sing: SingularityClass
    available: int
    s2_resolution: Fraction

    def __post_init__(self):
        if self.available < 0:
            raise ValueError("available count must be non-negative")
        if self.s2_resolution != s2_smooth_hypersurface(self.d):
            raise ValueError("s2_resolution must equal -4d^2 + 10d")

    @classmethod
    def for_degree(cls, d: int, sing: SingularityClass, available: int):
        return cls(d, sing, available, s2_smooth_hypersurface(d))


@dataclass(frozen=True)
class DegreeReport:
    d: int
    available: int
    required_thm1: int
    required_segre: int
    verdict_thm1: Verdict
    verdict_segre: Verdict


def s2_smooth_hypersurface(d: int) -> Fraction:
    """Second Segre number c1^2 - c2 of a smooth degree-d surface in P^3."""
    if d < 1:
        raise ValueError("degree must be positive")
    return Fraction(-4 * d * d + 10 * d)


def labs_count_a2(d: int) -> int:
    """Closed-form count of A2 singularities constructible on a degree-d
    hypersurface in P^3 (Labs' dessins d'enfants construction).

    The trailing factor is (floor((d-1)/2) - floor(d/3)) in both branches;
    the result is asserted to be a non-negative integer.
    """
    if d < 4:
        raise ValueError("count formula needs d >= 4")
    base = Fraction(d * (d - 1), 2) * (d // 3)
    tail_len = (d - 1) // 2 - d // 3
    if d % 3 == 0:
        tail = Fraction(d * (d - 3), 3) * tail_len
    else:
        tail = Fraction(d * (d - 3) + 2, 3) * tail_len
    total = base + tail
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(
            f"count formula gave non-integral value {total} at d={d}; "
            f"branch parenthesization needs review"
        )
    return int(total)


def _least_exceeding(threshold: Fraction, coefficient: Fraction) -> int:
    # least positive integer l with l * coefficient > threshold, strictly
    if coefficient <= 0:
        raise ValueError("criterion coefficient must be positive")
    return max(1, floor(threshold / coefficient) + 1)


def required_thm1(d: int, sing: SingularityClass) -> int:
    """Least l whose combined h1 exceeds -s2(resolution)/3! strictly."""
    return _least_exceeding(-s2_smooth_hypersurface(d) / 6, h1_of(sing))


def required_segre(d: int, sing: SingularityClass) -> int:
    """Least l satisfying the Segre-sum criterion l*(-s2(x,X)/2) > 4d^2-10d."""
    return _least_exceeding(-s2_smooth_hypersurface(d), -s2_local(sing) / 2)


def _verdict(available: int, coefficient: Fraction, threshold: Fraction) -> Verdict:
    lhs = available * coefficient
    if lhs > threshold:
        return Verdict.BIG
    if lhs == threshold:
        return Verdict.BOUNDARY
    return Verdict.INCONCLUSIVE


def degree_report(
    d_min: int,
    d_max: int,
    sing: SingularityClass,
    counts: Mapping[int, int] | None = None,
) -> list[DegreeReport]:
    """Assemble per-degree reports for d_min..d_max.

    `counts` maps degree -> available singularity count; when omitted the
    built-in closed-form count is used (A2 only).  A user table missing any
    degree in range is an error naming the gaps.
    """
    if d_min < 4:
        raise ValueError("d_min must be at least 4")
    if d_max < d_min:
        raise ValueError("d_max must be >= d_min")
    degrees = range(d_min, d_max + 1)
    if counts is None:
        if sing.n != 2:
            raise ValueError(
                "built-in counts cover A_2 only; supply a counts table for "
                f"A_{sing.n}"
            )
        counts = {d: labs_count_a2(d) for d in degrees}
    else:
        gaps = [d for d in degrees if d not in counts]
        if gaps:
            raise ValueError(f"counts table missing degrees {gaps}")

    h1 = h1_of(sing)
    segre_coeff = -s2_local(sing) / 2
    reports = []
    for d in degrees:
        budget = HypersurfaceBudget.for_degree(d, sing, counts[d])
        reports.append(
            DegreeReport(
                d=d,
                available=budget.available,
                required_thm1=required_thm1(d, sing),
                required_segre=required_segre(d, sing),
                verdict_thm1=_verdict(
                    budget.available, h1, -budget.s2_resolution / 6
                ),
                verdict_segre=_verdict(
                    budget.available, segre_coeff, -budget.s2_resolution
                ),
            )
        )
    return reports


def load_counts_csv(path: str | Path) -> dict[int, int]:
    """Read a user count table: CSV with header `d,available`."""
    path = Path(path)
    counts: dict[int, int] = {}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != ("d", "available"):
            raise ValueError(f"{path}: expected CSV header d,available")
        for row in reader:
            counts[int(row["d"])] = int(row["available"])
    return counts
