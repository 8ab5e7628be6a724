"""Asymptotic order bounds: ``L`` coefficients, normalised ``R`` values, combinations.

For a family of graphs of diameter ``k`` whose order grows like
``L * d**k`` in the degree ``d``, the figure of merit is ``R = k * L**(1/k)``
(1 for the trivial base-``r`` construction, at most ``k / (k!)**(1/k)``).
``L`` is kept as an exact :class:`~fractions.Fraction` wherever possible;
floats appear only when converting to ``R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .builders import FAMILIES

Number = Union[Fraction, float, int]

ROWS = ("R+C", "R-C", "R-D")

# Best R values for k = 2..9 as printed, and R_max.
PUBLISHED = {
    "Rmax": (1.41421, 1.65096, 1.80720, 1.91926, 2.00415, 2.07100, 2.12520, 2.17016),
    "R+C": (1.20185, 1.15455, 1.20185, 1.20431, 1.20185, 1.20360, 1.20185, 1.20321),
    "R-C": (1.19700, 1.14775, 1.19700, 1.20431, 1.19700, 1.20222, 1.19700, 1.20105),
    "R-D": (1.22474, 1.24805, 1.26588, 1.25881, 1.27378, 1.26436, 1.26588, 1.26514),
}

# External diameter-2 finite-field construction: not rebuilt here, entered as data.
EXTERNAL_L2_SUP = Fraction(13, 36)
# Relative prime gap used to extend it to every large degree.
PRIME_GAP_DELTA = Fraction(4049, 1_000_000)
EXTERNAL_L2_INF = EXTERNAL_L2_SUP / (1 + PRIME_GAP_DELTA) ** 2


def _log(x: Number) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def r_from_l(L: Number, k: int) -> float:
    return k * math.exp(_log(L) / k)


def r_max(k: int) -> float:
    """``k * (k!)**(-1/k)`` via the log-gamma function."""
    if k < 1:
        raise ValueError("k must be positive")
    return k * math.exp(-math.lgamma(k + 1) / k)


def combine_r(r1: float, k1: int, r2: float, k2: int) -> float:
    """R value of a stitched family: weighted geometric mean of the parts."""
    if r1 < 1 or r2 < 1:
        raise ValueError("R values are at least 1")
    if r1 == r2:
        return r1
    return math.exp((k1 * math.log(r1) + k2 * math.log(r2)) / (k1 + k2))


def combine_l(l1: Number, k1: int, l2: Number, k2: int) -> Number:
    if l1 <= 0 or l2 <= 0:
        raise ValueError("L values must be positive")
    k = k1 + k2
    return l1 * l2 * Fraction(k1**k1 * k2**k2, k**k)


def direct_product_ceiling(k: int) -> tuple[Fraction, float]:
    """Largest ``L`` any direct-product construction can give: ``(k+1) / (2 (k+2)**(k-1))``."""
    if k < 1:
        raise ValueError("k must be positive")
    L = Fraction(k + 1, 2 * (k + 2) ** (k - 1))
    return L, r_from_l(L, k)


@dataclass(frozen=True)
class BoundValue:
    k: int
    L: Number
    provenance: str

    @property
    def R(self) -> float:
        return r_from_l(self.L, self.k)


def _family_bounds() -> dict[str, dict[int, BoundValue]]:
    """Leading coefficients of the parametric families, sorted into table rows.

    An undirected family of odd order reaches only even degrees, so it bounds
    the lim sup but not the lim inf.
    """
    rows: dict[str, dict[int, BoundValue]] = {row: {} for row in ROWS}

    def offer(row: str, bv: BoundValue) -> None:
        cur = rows[row].get(bv.k)
        if cur is None or bv.L > cur.L:
            rows[row][bv.k] = bv

    for f in FAMILIES.values():
        bv = BoundValue(f.k, f.order_formula[0], f"direct product {f.name}")
        if f.directed:
            offer("R-D", bv)
        else:
            offer("R+C", bv)
            if f.w % 2 == 0:
                offer("R-C", bv)
    offer("R+C", BoundValue(2, EXTERNAL_L2_SUP, "external finite-field construction (data)"))
    offer("R-C", BoundValue(2, EXTERNAL_L2_INF, "external finite-field construction + prime gaps (data)"))
    return rows


def best_bounds(max_k: int = 9) -> dict[str, dict[int, BoundValue]]:
    """Best bound per diameter, taking the better of a direct family and any stitched split."""
    table = {}
    for row, direct in _family_bounds().items():
        best = {1: BoundValue(1, Fraction(1), "complete graph")}
        for k in range(2, max_k + 1):
            cands = [direct[k]] if k in direct else []
            for k1 in range(1, k // 2 + 1):
                a, b = best[k1], best[k - k1]
                cands.append(BoundValue(k, combine_l(a.L, k1, b.L, k - k1), f"stitch k={k1}+{k - k1}"))
            best[k] = max(cands, key=lambda bv: bv.L)
        table[row] = best
    return table


def bounds_table(max_k: int = 9) -> dict[str, list[BoundValue]]:
    """Rows ``R+C``, ``R-C``, ``R-D`` for diameters 2..max_k."""
    best = best_bounds(max_k)
    return {row: [best[row][k] for k in range(2, max_k + 1)] for row in ROWS}


def matches_published(value: float, printed: float, places: int = 5) -> bool:
    """Agreement within one unit of the last printed place.

    The printed table truncates some entries and rounds others, so neither
    convention alone reproduces every cell.
    """
    return abs(value - printed) < 10.0**-places
